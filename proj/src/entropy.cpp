#include "qsep/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsep {

namespace {

void require_not_unity(QIndex q, const char* what) {
    if (q.is_unity()) throw std::invalid_argument(std::string(what) + " is undefined at q = 1");
}

struct GammaResult {
    std::vector<double> gammas;   // ascending
    double log_q_tilde;           // -inf on empty support
};

// Eigenvalues of sigma^((1-q)/2q) rho sigma^((1-q)/2q) and log of the
// q-power sum. Well defined at q = 1 too (exponent 0: projection onto the
// support of sigma).
GammaResult gamma_spectrum(const DensityMatrix& rho, const ComplexMatrix& sigma, double q) {
    const double exponent = (1.0 - q) / (2.0 * q);
    const ComplexMatrix half = power_on_support(sigma, exponent);
    const ComplexMatrix sandwiched = hermitize(half * rho.matrix() * half);
    GammaResult out;
    out.gammas = eig_hermitian(sandwiched).eigenvalues;
    out.log_q_tilde = log_sum_pow(out.gammas, q);
    return out;
}

ComplexMatrix kernel_projector(const Spectrum& s) {
    const std::size_t n = s.eigenvectors.dim();
    ComplexMatrix scaled(n);
    for (std::size_t c = 0; c < n; ++c) {
        const double f = s.eigenvalues[c] <= kSupportCutoff ? 1.0 : 0.0;
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) = s.eigenvectors(r, c) * f;
    }
    return scaled * s.eigenvectors.adjoint();
}

}  // namespace

QIndex::QIndex(double q) : q_(q) {
    if (!(q > 0.0)) throw std::invalid_argument("entropic index q must be positive");
}

double log_sum_pow(std::span<const double> values, double q) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (double v : values)
        if (v > kSupportCutoff) max_log = std::max(max_log, q * std::log(v));
    if (!std::isfinite(max_log)) return -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (double v : values)
        if (v > kSupportCutoff) sum += std::exp(q * std::log(v) - max_log);
    return max_log + std::log(sum);
}

double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lam : rho.spectrum().eigenvalues)
        if (lam > kSupportCutoff) s -= lam * std::log(lam);
    return s;
}

double tsallis_entropy(const DensityMatrix& rho, QIndex q) {
    if (q.is_unity()) return von_neumann_entropy(rho);
    const double log_sum = log_sum_pow(rho.spectrum().eigenvalues, q.value());
    return std::expm1(log_sum) / (1.0 - q.value());
}

double renyi_entropy(const DensityMatrix& rho, QIndex q) {
    if (q.is_unity()) return von_neumann_entropy(rho);
    return log_sum_pow(rho.spectrum().eigenvalues, q.value()) / (1.0 - q.value());
}

double traditional_relative_tsallis(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q) {
    require_not_unity(q, "traditional relative Tsallis entropy");
    if (q.value() > 1.0) {
        // weight of rho outside the support of sigma diverges the formula
        const ComplexMatrix ker = kernel_projector(sigma.spectrum());
        const double leak = (ker * rho.matrix()).trace().real();
        if (leak > 1e-10)
            throw SupportViolation("rho has weight " + std::to_string(leak) +
                                   " outside the support of sigma");
    }
    const ComplexMatrix rho_q = power_on_support(rho.matrix(), q.value());
    const ComplexMatrix sigma_1mq = power_on_support(sigma.matrix(), 1.0 - q.value());
    const double t = (rho_q * sigma_1mq).trace().real();
    return (t - 1.0) / (1.0 - q.value());
}

EntropyResult q_tilde(const DensityMatrix& rho, const ComplexMatrix& sigma, QIndex q) {
    require_not_unity(q, "q_tilde");
    GammaResult g = gamma_spectrum(rho, sigma, q.value());
    EntropyResult out;
    out.q = q.value();
    out.q_tilde = std::exp(g.log_q_tilde);
    out.log_q_tilde = g.log_q_tilde;
    out.value = *out.q_tilde;
    out.gammas = std::move(g.gammas);
    return out;
}

double sandwiched_relative_tsallis(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q) {
    require_not_unity(q, "sandwiched relative Tsallis entropy");
    const GammaResult g = gamma_spectrum(rho, sigma.matrix(), q.value());
    return std::expm1(g.log_q_tilde) / (1.0 - q.value());
}

double sandwiched_relative_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q) {
    require_not_unity(q, "sandwiched relative Renyi entropy");
    const GammaResult g = gamma_spectrum(rho, sigma.matrix(), q.value());
    if (!std::isfinite(g.log_q_tilde))
        throw DegenerateSupport("sandwiched operator has no support; relative Renyi entropy diverges");
    return g.log_q_tilde / (q.value() - 1.0);
}

EntropyResult cstre(const DensityMatrix& rho, const Partition& partition, QIndex q) {
    if (partition.n_qubits() != rho.n_qubits())
        throw std::invalid_argument("partition register size does not match the state");

    const DensityMatrix marginal = partial_trace(rho, partition.conditioning());
    const ComplexMatrix sigma =
        embed_with_identity(marginal.matrix(), partition.conditioning(), rho.n_qubits());

    GammaResult g = gamma_spectrum(rho, sigma, q.value());
    EntropyResult out;
    out.q = q.value();
    out.q_tilde = std::exp(g.log_q_tilde);
    out.log_q_tilde = g.log_q_tilde;
    out.gammas = std::move(g.gammas);
    out.value = q.is_unity() ? vn_conditional(rho, partition)
                             : std::expm1(g.log_q_tilde) / (1.0 - q.value());
    return out;
}

double ar_q_conditional(const DensityMatrix& rho, const Partition& partition, QIndex q) {
    if (partition.n_qubits() != rho.n_qubits())
        throw std::invalid_argument("partition register size does not match the state");
    if (q.is_unity()) return vn_conditional(rho, partition);

    const DensityMatrix marginal = partial_trace(rho, partition.conditioning());
    const double log_full = log_sum_pow(rho.spectrum().eigenvalues, q.value());
    const double log_marginal = log_sum_pow(marginal.spectrum().eigenvalues, q.value());
    // (1 - Tr rho^q / Tr rho_Y^q)/(q - 1), ratio kept in the log domain
    return -std::expm1(log_full - log_marginal) / (q.value() - 1.0);
}

double vn_conditional(const DensityMatrix& rho, const Partition& partition) {
    if (partition.n_qubits() != rho.n_qubits())
        throw std::invalid_argument("partition register size does not match the state");
    return von_neumann_entropy(rho) -
           von_neumann_entropy(partial_trace(rho, partition.conditioning()));
}

}  // namespace qsep
