// bench_tables.cpp — times the cumulative kernel-table build on the serial
// reference path versus the OpenMP path and checks bit-identical agreement
#include "sbc/spectral.hpp"
#include "sbc/tcl2.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace sbc;

namespace {

double time_build(const spectral::BathSpec& bath, double omega0,
                  const std::vector<double>& grid, bool parallel, tcl2::GammaTable& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = tcl2::gamma_table(bath, omega0, grid, parallel);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const tcl2::GammaTable& a, const tcl2::GammaTable& b) {
    const std::vector<double>* cols_a[] = {&a.g1, &a.g1c, &a.g1s, &a.g2, &a.g2c, &a.g2s,
                                           &a.w1, &a.w1c, &a.w1s, &a.e1, &a.e1c, &a.e1s};
    const std::vector<double>* cols_b[] = {&b.g1, &b.g1c, &b.g1s, &b.g2, &b.g2c, &b.g2s,
                                           &b.w1, &b.w1c, &b.w1s, &b.e1, &b.e1c, &b.e1s};
    for (int c = 0; c < 12; ++c) {
        if (cols_a[c]->size() != cols_b[c]->size()) return false;
        for (std::size_t i = 0; i < cols_a[c]->size(); ++i)
            if ((*cols_a[c])[i] != (*cols_b[c])[i]) return false;
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    double t_end = 400.0;
    int points_per_unit = 50;
    if (argc > 1) t_end = std::atof(argv[1]);
    if (argc > 2) points_per_unit = std::atoi(argv[2]);

    spectral::BathSpec bath;
    bath.spectral.lambda = 0.01;
    bath.spectral.cutoff = 10.0;
    bath.spectral.ohmicity = 3.0;
    bath.temperature = 0.1;
    const double omega0 = 1.0;

    const int n = static_cast<int>(t_end * points_per_unit) + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = t_end * i / (n - 1);

#if defined(_OPENMP)
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("kernel table build: %d grid points on [0, %g], %d thread(s)\n", n, t_end,
                threads);

    tcl2::GammaTable serial, parallel;
    const double ts = time_build(bath, omega0, grid, false, serial);
    const double tp = time_build(bath, omega0, grid, true, parallel);

    std::printf("  serial reference: %8.3f s\n", ts);
    std::printf("  OpenMP:           %8.3f s  (speedup %.2fx)\n", tp, ts / tp);

    if (!identical(serial, parallel)) {
        std::printf("  MISMATCH: parallel table differs from serial reference\n");
        return 1;
    }
    std::printf("  tables bit-identical across %d columns\n", 12);
    return 0;
}
