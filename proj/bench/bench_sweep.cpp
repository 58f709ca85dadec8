// Compares the serial reference sweep against the OpenMP work-list path on
// the two production workloads: the full criteria table and a fine criterion
// curve. Outputs must match exactly; timings are wall clock.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsep/separability.hpp"

using namespace qsep;
using clock_type = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both paths run serially\n");
#endif

    const SweepConfig cfg;
    const std::vector<FamilyId> families{{Family::W, 3}, {Family::GHZ, 3}, {Family::W, 4},
                                         {Family::GHZ, 4}};
    const std::vector<Criterion> criteria{Criterion::CSTRE, Criterion::AR, Criterion::VN,
                                          Criterion::PPT};
    const auto rows = make_table_rows(families, {}, criteria);

    std::vector<ThresholdReport> serial_table, parallel_table;
    const double t_serial = time_ms([&] { serial_table = criteria_table(rows, cfg, Exec::Serial); });
    const double t_parallel =
        time_ms([&] { parallel_table = criteria_table(rows, cfg, Exec::Parallel); });
    std::printf("criteria_table (%zu rows): serial %.1f ms, parallel %.1f ms, speedup %.2fx, %s\n",
                rows.size(), t_serial, t_parallel, t_serial / t_parallel,
                serial_table == parallel_table ? "outputs identical" : "OUTPUT MISMATCH");

    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(i / 2000.0);
    const Partition p = Partition::parse("AB:CD");
    std::vector<CurvePoint> serial_curve, parallel_curve;
    const double c_serial = time_ms(
        [&] { serial_curve = curve_data(Family::W, 4, p, Criterion::CSTRE, 5.0, grid, Exec::Serial); });
    const double c_parallel = time_ms([&] {
        parallel_curve = curve_data(Family::W, 4, p, Criterion::CSTRE, 5.0, grid, Exec::Parallel);
    });
    std::printf("curve_data (%zu points): serial %.1f ms, parallel %.1f ms, speedup %.2fx, %s\n",
                grid.size(), c_serial, c_parallel, c_serial / c_parallel,
                serial_curve == parallel_curve ? "outputs identical" : "OUTPUT MISMATCH");

    return (serial_table == parallel_table && serial_curve == parallel_curve) ? 0 : 1;
}
