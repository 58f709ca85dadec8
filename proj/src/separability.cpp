#include "qsep/separability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

namespace qsep {

namespace {

const std::vector<int>& smaller_block(const Partition& p) {
    return p.remainder().size() <= p.conditioning().size() ? p.remainder() : p.conditioning();
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const Partition& p) {
    const ComplexMatrix pt = partial_transpose(rho, smaller_block(p));
    return eig_hermitian(pt).eigenvalues.front();
}

// Sign carrier for bisection: same sign as the criterion value but computed
// in the log domain for the entropic criteria, so it stays finite at any q.
// Positive means "consistent with separability".
double sign_proxy(Family family, int n_qubits, const Partition& p, Criterion c, double q, double x) {
    const DensityMatrix rho = noisy_family({family, n_qubits, x});
    switch (c) {
        case Criterion::VN:
            return vn_conditional(rho, p);
        case Criterion::PPT:
            return ppt_min_eigenvalue(rho, p);
        case Criterion::CSTRE: {
            if (q == 1.0) return vn_conditional(rho, p);
            const double log_qt = *cstre(rho, p, QIndex(q)).log_q_tilde;
            return q > 1.0 ? -log_qt : log_qt;
        }
        case Criterion::AR: {
            if (q == 1.0) return vn_conditional(rho, p);
            const DensityMatrix marginal = partial_trace(rho, p.conditioning());
            const double delta = log_sum_pow(rho.spectrum().eigenvalues, q) -
                                 log_sum_pow(marginal.spectrum().eigenvalues, q);
            return q > 1.0 ? -delta : delta;
        }
    }
    throw std::logic_error("unreachable criterion");
}

ThresholdReport single_root_report(FamilyId id, const Partition& p, Criterion c, double q,
                                   const SweepConfig& cfg, bool attach_sample) {
    ThresholdReport rep{id, p, c, 1.0, std::nullopt, false, {}};
    const RootResult root = zero_crossing_x(id.family, id.n_qubits, p, c, q, cfg);
    if (root.x_star) {
        rep.x_star = *root.x_star;
        rep.converged = true;
        if (attach_sample) {
            rep.q_at_convergence = q;
            rep.samples.push_back({q, *root.x_star});
        }
    } else {
        // no sign change: the criterion detects nothing (or everything)
        rep.x_star = root.value_hi >= -kWitnessTol ? cfg.x_hi : cfg.x_lo;
    }
    return rep;
}

ThresholdReport row_threshold(const TableRow& row, const SweepConfig& cfg, Exec exec) {
    switch (row.criterion) {
        case Criterion::VN:
            return single_root_report(row.family, row.partition, Criterion::VN, 1.0, cfg, true);
        case Criterion::PPT:
            return ppt_threshold(row.family, row.partition, cfg);
        default:
            return limit_threshold(row.family, row.partition, row.criterion, cfg, exec);
    }
}

}  // namespace

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::CSTRE: return "cstre";
        case Criterion::AR: return "ar";
        case Criterion::VN: return "vn";
        case Criterion::PPT: return "ppt";
    }
    return "?";
}

std::optional<Criterion> criterion_from_string(std::string_view s) {
    if (s == "cstre") return Criterion::CSTRE;
    if (s == "ar") return Criterion::AR;
    if (s == "vn") return Criterion::VN;
    if (s == "ppt") return Criterion::PPT;
    return std::nullopt;
}

void SweepConfig::validate() const {
    if (q_schedule.empty()) throw std::invalid_argument("q_schedule must be nonempty");
    for (std::size_t i = 0; i < q_schedule.size(); ++i) {
        if (!(q_schedule[i] > 0.0)) throw std::invalid_argument("q_schedule entries must be positive");
        if (i > 0 && q_schedule[i] <= q_schedule[i - 1])
            throw std::invalid_argument("q_schedule must be strictly increasing");
    }
    if (!(bisection_tol > 0.0) || !(limit_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(x_lo < x_hi)) throw std::invalid_argument("x bracket must satisfy x_lo < x_hi");
    if (max_bisections < 1) throw std::invalid_argument("max_bisections must be at least 1");
}

double criterion_value(Family family, int n_qubits, const Partition& p, Criterion c, double q,
                       double x) {
    const DensityMatrix rho = noisy_family({family, n_qubits, x});
    switch (c) {
        case Criterion::VN: return vn_conditional(rho, p);
        case Criterion::PPT: return ppt_min_eigenvalue(rho, p);
        case Criterion::CSTRE: return cstre(rho, p, QIndex(q)).value;
        case Criterion::AR: return ar_q_conditional(rho, p, QIndex(q));
    }
    throw std::logic_error("unreachable criterion");
}

RootResult zero_crossing_x(Family family, int n_qubits, const Partition& p, Criterion c, double q,
                           const SweepConfig& cfg) {
    cfg.validate();
    const auto f = [&](double x) { return sign_proxy(family, n_qubits, p, c, q, x); };
    const auto nonnegative = [](double v) { return v >= -kWitnessTol; };

    RootResult out;
    out.value_lo = f(cfg.x_lo);
    out.value_hi = f(cfg.x_hi);
    if (!nonnegative(out.value_lo) || nonnegative(out.value_hi)) return out;

    double lo = cfg.x_lo, hi = cfg.x_hi;
    for (int it = 0; it < cfg.max_bisections && (hi - lo) >= cfg.bisection_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (nonnegative(f(mid)) ? lo : hi) = mid;
    }
    out.x_star = 0.5 * (lo + hi);
    return out;
}

ThresholdReport limit_threshold(FamilyId id, const Partition& p, Criterion c,
                                const SweepConfig& cfg, Exec exec) {
    cfg.validate();
    if (c == Criterion::VN) return single_root_report(id, p, Criterion::VN, 1.0, cfg, true);
    if (c == Criterion::PPT) return ppt_threshold(id, p, cfg);

    const std::size_t nq = cfg.q_schedule.size();
    std::vector<RootResult> roots(nq);
    std::exception_ptr error;
    const bool parallel = exec == Exec::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
    (void)parallel;
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nq); ++i) {
        try {
            roots[i] = zero_crossing_x(id.family, id.n_qubits, p, c, cfg.q_schedule[i], cfg);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    ThresholdReport rep{id, p, c, 1.0, std::nullopt, false, {}};
    bool last_found = false;
    for (std::size_t i = 0; i < nq; ++i) {
        last_found = roots[i].x_star.has_value();
        if (last_found) rep.samples.push_back({cfg.q_schedule[i], *roots[i].x_star});
    }
    if (rep.samples.empty()) {
        rep.x_star = roots.back().value_hi >= -kWitnessTol ? cfg.x_hi : cfg.x_lo;
        return rep;
    }
    rep.x_star = rep.samples.back().x_star;
    if (last_found && rep.samples.size() >= 2) {
        const auto& a = rep.samples[rep.samples.size() - 2];
        const auto& b = rep.samples.back();
        if (std::abs(b.x_star - a.x_star) < cfg.limit_tol) {
            rep.converged = true;
            rep.q_at_convergence = b.q;
        }
    }
    return rep;
}

ThresholdReport ppt_threshold(FamilyId id, const Partition& p, const SweepConfig& cfg) {
    cfg.validate();
    return single_root_report(id, p, Criterion::PPT, 0.0, cfg, false);
}

std::vector<TableRow> make_table_rows(std::span<const FamilyId> families,
                                      std::span<const std::string> partition_specs,
                                      std::span<const Criterion> criteria) {
    std::vector<TableRow> rows;
    for (const FamilyId& id : families) {
        std::vector<Partition> parts;
        if (partition_specs.empty()) {
            parts = prefix_partitions(id.n_qubits);
        } else {
            for (const std::string& spec : partition_specs) {
                Partition parsed = Partition::parse(spec);
                if (parsed.n_qubits() == id.n_qubits) parts.push_back(std::move(parsed));
            }
        }
        for (const Partition& part : parts)
            for (Criterion c : criteria) rows.push_back({id, part, c});
    }
    return rows;
}

std::vector<ThresholdReport> criteria_table(std::span<const TableRow> rows, const SweepConfig& cfg,
                                            Exec exec) {
    cfg.validate();
    std::vector<std::optional<ThresholdReport>> slots(rows.size());
    std::exception_ptr error;
    const bool parallel = exec == Exec::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
    (void)parallel;
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows.size()); ++i) {
        try {
            slots[i] = row_threshold(rows[i], cfg, exec);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::vector<ThresholdReport> out;
    out.reserve(rows.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

std::vector<CurvePoint> curve_data(Family family, int n_qubits, const Partition& p, Criterion c,
                                   double q, std::span<const double> x_grid, Exec exec) {
    std::vector<CurvePoint> out(x_grid.size());
    const bool parallel = exec == Exec::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
    (void)parallel;
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(x_grid.size()); ++i) {
        out[i].x = x_grid[i];
        try {
            out[i].value = criterion_value(family, n_qubits, p, c, q, x_grid[i]);
        } catch (...) {
            out[i].value = std::nullopt;  // surfaced as an explicit null downstream
        }
    }
    return out;
}

NestingReport nesting_check(FamilyId id, const Partition& p, std::span<const double> q_list,
                            const SweepConfig& cfg) {
    if (q_list.empty()) throw std::invalid_argument("nesting_check needs at least one q");
    const double q_proxy = *std::max_element(q_list.begin(), q_list.end());

    NestingReport rep{id, p, q_proxy, 0.0, 0.0, 0.0, false};
    rep.x_ppt = ppt_threshold(id, p, cfg).x_star;
    const RootResult cs = zero_crossing_x(id.family, id.n_qubits, p, Criterion::CSTRE, q_proxy, cfg);
    const RootResult ar = zero_crossing_x(id.family, id.n_qubits, p, Criterion::AR, q_proxy, cfg);
    rep.x_cstre = cs.x_star.value_or(cfg.x_hi);
    rep.x_ar = ar.x_star.value_or(cfg.x_hi);

    constexpr double slack = 1e-3;
    rep.pass = rep.x_ppt <= rep.x_cstre + slack && rep.x_cstre <= rep.x_ar + slack;
    return rep;
}

IsospectralReport isospectral_verdict() {
    const auto [entangled, separable] = isospectral_pair();
    const Partition ab = Partition::parse("A:B");

    IsospectralReport rep;
    rep.qs = {1.1, 1.5, 2.0, 3.0, 5.0, 10.0};
    rep.entangled_detected = true;
    rep.separable_all_zero = true;
    for (double q : rep.qs) {
        const double ve = cstre(entangled, ab, QIndex(q)).value;
        const double vs = cstre(separable, ab, QIndex(q)).value;
        rep.entangled_values.push_back(ve);
        rep.separable_values.push_back(vs);
        rep.entangled_detected = rep.entangled_detected && ve < -kWitnessTol;
        rep.separable_all_zero = rep.separable_all_zero && std::abs(vs) <= 1e-10;
    }
    rep.entangled_vn_conditional = vn_conditional(entangled, ab);
    rep.separable_vn_conditional = vn_conditional(separable, ab);
    return rep;
}

std::vector<Partition> prefix_partitions(int n_qubits) {
    std::vector<Partition> out;
    for (int split = 1; split < n_qubits; ++split) {
        std::vector<int> conditioning;
        for (int q = split; q < n_qubits; ++q) conditioning.push_back(q);
        out.emplace_back(n_qubits, std::move(conditioning));
    }
    return out;
}

}  // namespace qsep
