// Command-line surface: build family states or load matrices, evaluate
// entanglement criteria, reproduce threshold tables and curve data.
//
// Exit codes: 0 success, 2 partial convergence (table), 64 usage,
// 65 input-format error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qsep/entropy.hpp"
#include "qsep/matrix_io.hpp"
#include "qsep/report_io.hpp"
#include "qsep/separability.hpp"
#include "qsep/states.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartialConvergence = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInputFormat = 65;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOpts {
    std::string format;  // empty: json for report commands, plain text for entropy/check
    std::string output;
    bool verbose = false;
    bool serial = false;
};

qsep::OutputFormat parse_format(const std::string& s) {
    if (s.empty()) return qsep::OutputFormat::Json;
    const auto f = qsep::format_from_string(s);
    if (!f) throw UsageError("unknown format '" + s + "' (expected json or csv)");
    return *f;
}

qsep::Family parse_family(const std::string& s) {
    const auto f = qsep::family_from_string(s);
    if (!f) throw UsageError("unknown family '" + s + "' (expected w or ghz)");
    return *f;
}

qsep::Criterion parse_criterion(const std::string& s) {
    const auto c = qsep::criterion_from_string(s);
    if (!c) throw UsageError("unknown criterion '" + s + "'");
    return *c;
}

qsep::Partition parse_partition(const std::string& s) {
    try {
        return qsep::Partition::parse(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// "lo:hi:step", arithmetic
std::vector<double> parse_xgrid(const std::string& text) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3)
        throw UsageError("bad --xgrid '" + text + "' (expected lo:hi:step)");
    if (!(step > 0) || !(hi > lo)) throw UsageError("--xgrid needs lo < hi and step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double x = lo + i * step;
        if (x > hi + 0.5 * step) break;
        grid.push_back(std::min(x, hi));
    }
    return grid;
}

// "lo:hi:n", geometric
std::vector<double> parse_qgrid(const std::string& text) {
    double lo = 0, hi = 0;
    int n = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
        throw UsageError("bad --qgrid '" + text + "' (expected lo:hi:n, geometric)");
    if (!(lo > 0) || !(hi > lo) || n < 2) throw UsageError("--qgrid needs 0 < lo < hi and n >= 2");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    grid.back() = hi;
    return grid;
}

int emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return kExitOk;
    }
    std::ofstream out(opts.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << opts.output << "'\n";
        return 1;
    }
    out << text;
    return kExitOk;
}

struct StateOpts {
    std::string input;
    std::string family;
    int n_qubits = 0;
    double x = -1.0;
    bool x_given = false;
};

qsep::DensityMatrix load_state(const StateOpts& s) {
    if (!s.input.empty()) {
        const qsep::ComplexMatrix m = qsep::read_matrix_file(s.input);
        int n = 0;
        while ((std::size_t{1} << (n + 1)) <= m.dim()) ++n;
        if (m.dim() != (std::size_t{1} << n))
            throw qsep::ParseError("matrix dimension " + std::to_string(m.dim()) +
                                       " is not a power of 2",
                                   1, 1);
        try {
            return qsep::validate_density(m, n);
        } catch (const qsep::Error& e) {
            throw qsep::ParseError(std::string("not a density matrix: ") + e.what(), 1, 1);
        }
    }
    if (s.family.empty()) throw UsageError("need either --input or --family");
    if (!s.x_given) throw UsageError("--family states need --x");
    return qsep::noisy_family({parse_family(s.family), s.n_qubits, s.x});
}

void add_state_options(CLI::App* cmd, StateOpts& s) {
    cmd->add_option("--input", s.input, "matrix text file (see README for the format)");
    cmd->add_option("--family", s.family, "state family: w or ghz");
    cmd->add_option("--nqubits", s.n_qubits, "register size for --family")->default_val(3);
    cmd->add_option("--x", s.x, "mixing parameter in [0,1] for --family")
        ->each([&s](const std::string&) { s.x_given = true; });
}

int run_table(const CommonOpts& common, const std::vector<std::string>& families,
              const std::vector<int>& nqubits, const std::vector<std::string>& partitions,
              const std::vector<std::string>& criteria, const std::string& qgrid) {
    if (criteria.empty() || (criteria.size() == 1 && criteria[0].empty()))
        throw UsageError("--criteria must name at least one criterion");

    std::vector<qsep::FamilyId> ids;
    for (const std::string& f : families)
        for (int n : nqubits) ids.push_back({parse_family(f), n});

    std::vector<qsep::Criterion> crits;
    for (const std::string& c : criteria) crits.push_back(parse_criterion(c));
    for (const std::string& p : partitions) parse_partition(p);  // syntax check up front

    qsep::SweepConfig cfg;
    if (!qgrid.empty()) cfg.q_schedule = parse_qgrid(qgrid);

    const auto rows = qsep::make_table_rows(ids, partitions, crits);
    if (rows.empty()) throw UsageError("no (family, partition) combinations matched");
    const auto reports =
        qsep::criteria_table(rows, cfg, common.serial ? qsep::Exec::Serial : qsep::Exec::Parallel);

    const std::string text = parse_format(common.format) == qsep::OutputFormat::Json
                                 ? qsep::thresholds_to_json(reports)
                                 : qsep::thresholds_to_csv(reports);
    const int rc = emit(common, text);
    if (rc != kExitOk) return rc;
    for (const auto& rep : reports)
        if (!rep.converged) return kExitPartialConvergence;
    return kExitOk;
}

int run_curve(const CommonOpts& common, const std::string& family, int nqubits,
              const std::string& partition, const std::string& criterion, double q,
              const std::string& xgrid) {
    const qsep::Family fam = parse_family(family);
    const qsep::Partition part = parse_partition(partition);
    const qsep::Criterion crit = parse_criterion(criterion);
    const std::vector<double> grid = parse_xgrid(xgrid);

    const auto points =
        qsep::curve_data(fam, nqubits, part, crit, q, grid,
                         common.serial ? qsep::Exec::Serial : qsep::Exec::Parallel);
    const qsep::CurveMeta meta{fam, nqubits, part, crit, crit == qsep::Criterion::VN ? 1.0 : q};
    return emit(common, parse_format(common.format) == qsep::OutputFormat::Json
                            ? qsep::curve_to_json(meta, points)
                            : qsep::curve_to_csv(meta, points));
}

int run_implicit(const CommonOpts& common, const std::string& family, int nqubits,
                 const std::string& partition, const std::string& criterion,
                 const std::string& qgrid) {
    const qsep::Criterion crit = parse_criterion(criterion);
    if (crit != qsep::Criterion::CSTRE && crit != qsep::Criterion::AR)
        throw UsageError("implicit curves are defined for cstre and ar only");

    qsep::SweepConfig cfg;
    if (!qgrid.empty()) cfg.q_schedule = parse_qgrid(qgrid);
    const qsep::ThresholdReport rep =
        qsep::limit_threshold({parse_family(family), nqubits}, parse_partition(partition), crit,
                              cfg, common.serial ? qsep::Exec::Serial : qsep::Exec::Parallel);

    const std::vector<qsep::ThresholdReport> reports{rep};
    return emit(common, parse_format(common.format) == qsep::OutputFormat::Json
                            ? qsep::thresholds_to_json(reports)
                            : qsep::thresholds_to_csv(reports));
}

int run_entropy(const CommonOpts& common, const StateOpts& state, const std::string& measure,
                const std::string& partition, double q) {
    parse_format(common.format);  // reject unknown formats up front
    const qsep::DensityMatrix rho = load_state(state);

    qsep::EntropyResult result;
    result.q = q;
    const bool conditional = measure == "cstre" || measure == "ar" || measure == "vn";
    if (conditional) {
        if (partition.empty()) throw UsageError("measure '" + measure + "' needs --partition");
        const qsep::Partition part = parse_partition(partition);
        if (part.n_qubits() != rho.n_qubits())
            throw UsageError("partition '" + partition + "' does not fit a " +
                             std::to_string(rho.n_qubits()) + "-qubit state");
        if (measure == "cstre")
            result = qsep::cstre(rho, part, qsep::QIndex(q));
        else if (measure == "ar")
            result.value = qsep::ar_q_conditional(rho, part, qsep::QIndex(q));
        else
            result.value = qsep::vn_conditional(rho, part);
    } else if (measure == "tsallis") {
        result.value = qsep::tsallis_entropy(rho, qsep::QIndex(q));
    } else if (measure == "renyi") {
        result.value = qsep::renyi_entropy(rho, qsep::QIndex(q));
    } else {
        throw UsageError("unknown measure '" + measure +
                         "' (expected cstre, ar, vn, tsallis or renyi)");
    }

    std::string text;
    if (common.format == "json") {
        nlohmann::json j{{"measure", measure}, {"q", q}, {"value", result.value}};
        if (!result.gammas.empty()) {
            j["gammas"] = result.gammas;
            j["q_tilde"] = *result.q_tilde;
        }
        text = j.dump(2) + "\n";
    } else if (common.format == "csv") {
        text = "measure,q,value\n" + measure + "," + qsep::format_number(q) + "," +
               qsep::format_number(result.value) + "\n";
    } else {
        text = qsep::format_number(result.value) + "\n";
        if (common.verbose && !result.gammas.empty()) {
            text += "gammas:";
            for (double g : result.gammas) text += " " + qsep::format_number(g);
            text += "\nq_tilde: " + qsep::format_number(*result.q_tilde) + "\n";
        }
    }
    return emit(common, text);
}

int run_check(const CommonOpts& common, const StateOpts& state, const std::string& criterion,
              const std::string& partition, double q) {
    const qsep::DensityMatrix rho = load_state(state);
    const qsep::Criterion crit = parse_criterion(criterion);

    double value = 0.0;
    std::string verdict;
    if (crit == qsep::Criterion::PPT) {
        std::vector<int> side{0};
        if (!partition.empty()) {
            const qsep::Partition part = parse_partition(partition);
            side = part.remainder().size() <= part.conditioning().size() ? part.remainder()
                                                                         : part.conditioning();
        }
        value = qsep::eig_hermitian(qsep::partial_transpose(rho, side)).eigenvalues.front();
        if (value < -qsep::kWitnessTol)
            verdict = "ENTANGLED";
        else if (rho.n_qubits() == 2)
            verdict = "SEPARABLE";  // conclusive only on 2-qubit registers
        else
            verdict = "INCONCLUSIVE";
    } else {
        if (partition.empty()) throw UsageError("criterion '" + criterion + "' needs --partition");
        const qsep::Partition part = parse_partition(partition);
        if (crit == qsep::Criterion::CSTRE)
            value = qsep::cstre(rho, part, qsep::QIndex(q)).value;
        else if (crit == qsep::Criterion::AR)
            value = qsep::ar_q_conditional(rho, part, qsep::QIndex(q));
        else
            value = qsep::vn_conditional(rho, part);
        verdict = value < -qsep::kWitnessTol ? "ENTANGLED" : "INCONCLUSIVE";
    }

    std::string text = verdict + "\n";
    if (common.verbose) text += "value: " + qsep::format_number(value) + "\n";
    return emit(common, text);
}

int run_isospectral(const CommonOpts& common) {
    const qsep::IsospectralReport rep = qsep::isospectral_verdict();
    return emit(common, parse_format(common.format) == qsep::OutputFormat::Json
                            ? qsep::isospectral_to_json(rep)
                            : qsep::isospectral_to_csv(rep));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement criteria for small multi-qubit density matrices"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--format", common.format,
                   "output format: json or csv (default json; entropy/check print plain text)");
    app.add_option("--output", common.output, "write output to a file instead of stdout");
    app.add_flag("--verbose", common.verbose, "extra per-result detail");
    app.add_flag("--serial", common.serial, "disable parallel sweep execution");

    // table
    auto* table = app.add_subcommand(
        "table", "Separability thresholds per (family, partition, criterion)");
    std::vector<std::string> t_families{"w", "ghz"};
    std::vector<int> t_nqubits{3, 4};
    std::vector<std::string> t_partitions;
    std::vector<std::string> t_criteria{"cstre", "ar", "vn", "ppt"};
    std::string t_qgrid;
    table->add_option("--family", t_families, "families (w, ghz)")->delimiter(',');
    table->add_option("--nqubits", t_nqubits, "register sizes")->delimiter(',');
    table->add_option("--partitions", t_partitions,
                      "partitions like A:BC or 0:1,2 (default: all prefix splits)")
        ->delimiter(',');
    table->add_option("--criteria", t_criteria, "criteria: cstre, ar, vn, ppt")->delimiter(',');
    table->add_option("--qgrid", t_qgrid, "override the q schedule, lo:hi:n geometric");

    // curve
    auto* curve = app.add_subcommand("curve", "Criterion value on an x grid at fixed q");
    std::string c_family = "w", c_partition = "A:BC", c_criterion = "cstre";
    std::string c_xgrid = "0:1:0.01";
    int c_nqubits = 3;
    double c_q = 2.0;
    curve->add_option("--family", c_family, "w or ghz")->capture_default_str();
    curve->add_option("--nqubits", c_nqubits, "register size")->capture_default_str();
    curve->add_option("--partition", c_partition, "partition, e.g. A:BC")->capture_default_str();
    curve->add_option("--criterion", c_criterion, "cstre, ar, vn or ppt")->capture_default_str();
    curve->add_option("--q", c_q, "entropic index")->capture_default_str();
    curve->add_option("--xgrid", c_xgrid, "lo:hi:step")->capture_default_str();

    // implicit
    auto* implicit = app.add_subcommand(
        "implicit", "Zero-crossing x*(q) along the q schedule (CSV columns: q, x_star)");
    std::string i_family = "w", i_partition = "A:BC", i_criterion = "cstre", i_qgrid;
    int i_nqubits = 3;
    implicit->add_option("--family", i_family, "w or ghz")->capture_default_str();
    implicit->add_option("--nqubits", i_nqubits, "register size")->capture_default_str();
    implicit->add_option("--partition", i_partition, "partition, e.g. A:BC")
        ->capture_default_str();
    implicit->add_option("--criterion", i_criterion, "cstre or ar")->capture_default_str();
    implicit->add_option("--qgrid", i_qgrid, "override the q schedule, lo:hi:n geometric");

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Evaluate one entropy measure on one state");
    StateOpts e_state;
    std::string e_measure = "cstre", e_partition;
    double e_q = 2.0;
    add_state_options(entropy, e_state);
    entropy->add_option("--criterion,--measure", e_measure,
                        "cstre, ar, vn, tsallis or renyi")->capture_default_str();
    entropy->add_option("--partition", e_partition, "required for cstre/ar/vn");
    entropy->add_option("--q", e_q, "entropic index")->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "Entanglement verdict for one state");
    StateOpts k_state;
    std::string k_criterion = "cstre", k_partition;
    double k_q = 2.0;
    add_state_options(check, k_state);
    check->add_option("--criterion", k_criterion, "cstre, ar, vn or ppt")->capture_default_str();
    check->add_option("--partition", k_partition, "partition, e.g. A:B");
    check->add_option("--q", k_q, "entropic index")->capture_default_str();

    // isospectral
    auto* isospectral = app.add_subcommand(
        "isospectral", "CSTRE on the isospectral two-qubit pair over a q ladder");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*table)
            return run_table(common, t_families, t_nqubits, t_partitions, t_criteria, t_qgrid);
        if (*curve)
            return run_curve(common, c_family, c_nqubits, c_partition, c_criterion, c_q, c_xgrid);
        if (*implicit)
            return run_implicit(common, i_family, i_nqubits, i_partition, i_criterion, i_qgrid);
        if (*entropy) return run_entropy(common, e_state, e_measure, e_partition, e_q);
        if (*check) return run_check(common, k_state, k_criterion, k_partition, k_q);
        if (*isospectral) return run_isospectral(common);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qsep::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputFormat;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
