#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsep/entropy.hpp"
#include "qsep/states.hpp"

namespace qsep {

enum class Criterion { CSTRE, AR, VN, PPT };

std::string to_string(Criterion c);
std::optional<Criterion> criterion_from_string(std::string_view s);

struct SweepConfig {
    /// Geometric ladder for the q -> infinity limit; the tail is long enough
    /// that successive roots settle within limit_tol on the target families.
    std::vector<double> q_schedule{1, 2, 5, 10, 20, 50, 100, 200, 400, 800, 1600, 3200, 6400};
    double x_lo = 0.0;
    double x_hi = 1.0;
    double bisection_tol = 1e-5;
    double limit_tol = 5e-4;
    int max_bisections = 60;

    void validate() const;  // throws std::invalid_argument
};

struct FamilyId {
    Family family;
    int n_qubits;
    friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

struct QxSample {
    double q;
    double x_star;
    friend bool operator==(const QxSample&, const QxSample&) = default;
};

struct ThresholdReport {
    FamilyId family;
    Partition partition;
    Criterion criterion;
    /// Separability interval endpoint. Falls back to an endpoint of the
    /// bracket when no root exists (converged stays false).
    double x_star = 1.0;
    std::optional<double> q_at_convergence;
    bool converged = false;
    std::vector<QxSample> samples;

    friend bool operator==(const ThresholdReport&, const ThresholdReport&) = default;
};

struct RootResult {
    std::optional<double> x_star;  // empty: no sign change on the bracket
    double value_lo = 0.0;
    double value_hi = 0.0;
};

/// Criterion value at one point: the conditional entropy for CSTRE/AR/VN,
/// the minimum partial-transpose eigenvalue for PPT. May be +-inf at
/// extreme q; never NaN.
double criterion_value(Family family, int n_qubits, const Partition& p, Criterion c, double q,
                       double x);

/// Bisection root of criterion(x) = 0 on [x_lo, x_hi]. Requires the value
/// to be nonnegative at x_lo and negative at x_hi (both up to kWitnessTol);
/// otherwise returns the endpoint values with no root. The sign at q != 1
/// is evaluated in the log domain, never through the (1-q)-divided value,
/// so schedules up to q ~ 1e4 stay exact. VN ignores q.
RootResult zero_crossing_x(Family family, int n_qubits, const Partition& p, Criterion c, double q,
                           const SweepConfig& cfg);

enum class Exec { Serial, Parallel };

/// Runs zero_crossing_x along cfg.q_schedule (roots are independent, so the
/// q loop is a parallel work list). converged = the last two roots differ by
/// less than limit_tol; x_star = last root found.
ThresholdReport limit_threshold(FamilyId id, const Partition& p, Criterion c,
                                const SweepConfig& cfg, Exec exec = Exec::Parallel);

/// Bisection on the sign of the minimum eigenvalue of the partial
/// transpose over the partition's smaller block (either block gives the
/// same spectrum; the smaller one is the deterministic choice).
ThresholdReport ppt_threshold(FamilyId id, const Partition& p, const SweepConfig& cfg);

struct TableRow {
    FamilyId family;
    Partition partition;
    Criterion criterion;
};

/// Ordered (family, partition, criterion) cross product. Partition specs
/// are parsed per family and silently skipped where the qubit count does
/// not match (so one spec list can serve mixed-size families); an empty
/// spec list expands to all contiguous prefix splits.
std::vector<TableRow> make_table_rows(std::span<const FamilyId> families,
                                      std::span<const std::string> partition_specs,
                                      std::span<const Criterion> criteria);

/// One ThresholdReport per row, in row order regardless of execution
/// policy: work items are independent and write only their own slot.
std::vector<ThresholdReport> criteria_table(std::span<const TableRow> rows, const SweepConfig& cfg,
                                            Exec exec = Exec::Parallel);

struct CurvePoint {
    double x;
    /// Empty when evaluation failed at this point; never NaN.
    std::optional<double> value;
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

std::vector<CurvePoint> curve_data(Family family, int n_qubits, const Partition& p, Criterion c,
                                   double q, std::span<const double> x_grid,
                                   Exec exec = Exec::Parallel);

/// Checks x*_PPT <= x*_CSTRE <= x*_AR at the largest q in q_list (the
/// q -> infinity proxy), with 1e-3 slack for bisection noise.
struct NestingReport {
    FamilyId family;
    Partition partition;
    double q_proxy;
    double x_ppt;
    double x_cstre;
    double x_ar;
    bool pass;
};

NestingReport nesting_check(FamilyId id, const Partition& p, std::span<const double> q_list,
                            const SweepConfig& cfg);

/// CSTRE on the isospectral two-qubit pair over q in {1.1, 1.5, 2, 3, 5, 10}
/// plus the q = 1 (von Neumann conditional) values, which vanish for both
/// states since they share global and local spectra.
struct IsospectralReport {
    std::vector<double> qs;
    std::vector<double> entangled_values;  // first state of the pair
    std::vector<double> separable_values;  // second state of the pair
    double entangled_vn_conditional = 0.0;
    double separable_vn_conditional = 0.0;
    bool entangled_detected = false;   // all entangled_values < -kWitnessTol
    bool separable_all_zero = false;   // all |separable_values| <= 1e-10
};

IsospectralReport isospectral_verdict();

/// The contiguous splits matching the usual partition labels:
/// A:BC.., AB:C.., ..., for splits 1..n-1.
std::vector<Partition> prefix_partitions(int n_qubits);

}  // namespace qsep
