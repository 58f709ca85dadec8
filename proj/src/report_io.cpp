#include "qsep/report_io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace qsep {

namespace {

using nlohmann::json;

json sample_array(const ThresholdReport& rep) {
    json arr = json::array();
    for (const QxSample& s : rep.samples) arr.push_back({{"q", s.q}, {"x_star", s.x_star}});
    return arr;
}

json threshold_json(const ThresholdReport& rep) {
    return {{"family", to_string(rep.family.family)},
            {"n_qubits", rep.family.n_qubits},
            {"partition", rep.partition.to_string()},
            {"criterion", to_string(rep.criterion)},
            {"x_star", rep.x_star},
            {"converged", rep.converged},
            {"samples", sample_array(rep)}};
}

json finite_or_null(std::optional<double> v) {
    if (v && std::isfinite(*v)) return *v;
    return nullptr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::optional<OutputFormat> format_from_string(std::string_view s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string thresholds_to_json(std::span<const ThresholdReport> reports) {
    json arr = json::array();
    for (const ThresholdReport& rep : reports) arr.push_back(threshold_json(rep));
    return dump({{"reports", arr}});
}

std::string thresholds_to_csv(std::span<const ThresholdReport> reports) {
    std::string out = "family,n_qubits,partition,criterion,row_type,q,x_star,converged\n";
    for (const ThresholdReport& rep : reports) {
        const std::string prefix = to_string(rep.family.family) + "," +
                                   std::to_string(rep.family.n_qubits) + "," +
                                   rep.partition.to_string() + "," + to_string(rep.criterion) + ",";
        for (const QxSample& s : rep.samples)
            out += prefix + "sample," + format_number(s.q) + "," + format_number(s.x_star) + ",\n";
        out += prefix + "summary," +
               (rep.q_at_convergence ? format_number(*rep.q_at_convergence) : std::string{}) + "," +
               format_number(rep.x_star) + "," + (rep.converged ? "true" : "false") + "\n";
    }
    return out;
}

std::string curve_to_json(const CurveMeta& meta, std::span<const CurvePoint> points) {
    json arr = json::array();
    for (const CurvePoint& p : points) arr.push_back({{"x", p.x}, {"value", finite_or_null(p.value)}});
    return dump({{"family", to_string(meta.family)},
                 {"n_qubits", meta.n_qubits},
                 {"partition", meta.partition.to_string()},
                 {"criterion", to_string(meta.criterion)},
                 {"q", meta.q},
                 {"points", arr}});
}

std::string curve_to_csv(const CurveMeta& meta, std::span<const CurvePoint> points) {
    std::string out = "family,n_qubits,partition,criterion,q,x,value\n";
    const std::string prefix = to_string(meta.family) + "," + std::to_string(meta.n_qubits) + "," +
                               meta.partition.to_string() + "," + to_string(meta.criterion) + "," +
                               format_number(meta.q) + ",";
    for (const CurvePoint& p : points) {
        const bool ok = p.value && std::isfinite(*p.value);
        out += prefix + format_number(p.x) + "," + (ok ? format_number(*p.value) : std::string{}) +
               "\n";
    }
    return out;
}

std::string isospectral_to_json(const IsospectralReport& rep) {
    json rows = json::array();
    for (std::size_t i = 0; i < rep.qs.size(); ++i)
        rows.push_back({{"q", rep.qs[i]},
                        {"cstre_entangled", rep.entangled_values[i]},
                        {"cstre_separable", rep.separable_values[i]}});
    return dump({{"rows", rows},
                 {"vn_conditional_entangled", rep.entangled_vn_conditional},
                 {"vn_conditional_separable", rep.separable_vn_conditional},
                 {"entangled_detected", rep.entangled_detected},
                 {"separable_all_zero", rep.separable_all_zero}});
}

std::string isospectral_to_csv(const IsospectralReport& rep) {
    std::string out = "q,cstre_entangled,cstre_separable\n";
    out += "1," + format_number(rep.entangled_vn_conditional) + "," +
           format_number(rep.separable_vn_conditional) + "\n";
    for (std::size_t i = 0; i < rep.qs.size(); ++i)
        out += format_number(rep.qs[i]) + "," + format_number(rep.entangled_values[i]) + "," +
               format_number(rep.separable_values[i]) + "\n";
    return out;
}

}  // namespace qsep
