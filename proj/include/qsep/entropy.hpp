#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsep/qlinalg.hpp"

namespace qsep {

/// An entropy value counts as "negative" (entanglement witness fires) only
/// below this, separating true sign from roundoff at thresholds.
inline constexpr double kWitnessTol = 1e-9;

/// Entropic order parameter, q > 0. q = 1 routes to the von Neumann limits
/// where a function defines them; the q != 1 forms reject it.
class QIndex {
public:
    explicit QIndex(double q);
    double value() const { return q_; }
    bool is_unity() const { return q_ == 1.0; }

private:
    double q_;
};

struct EntropyResult {
    double value = 0.0;
    double q = 1.0;
    /// Ascending eigenvalues of the sandwiched operator, when applicable.
    std::vector<double> gammas;
    /// Sum of gamma_i^q over the support; may overflow to +inf at extreme q.
    std::optional<double> q_tilde;
    /// log of the same sum, stable for q up to ~1e4; -inf on empty support.
    std::optional<double> log_q_tilde;
};

/// log(sum v_i^q) over v_i > kSupportCutoff, max-factored so large q cannot
/// underflow the comparison against 1. Returns -inf when nothing survives
/// the cutoff.
double log_sum_pow(std::span<const double> values, double q);

double von_neumann_entropy(const DensityMatrix& rho);

/// (Tr rho^q - 1)/(1 - q); q = 1 dispatches to von_neumann_entropy.
double tsallis_entropy(const DensityMatrix& rho, QIndex q);

/// log(Tr rho^q)/(1 - q), natural log; q = 1 dispatches to von Neumann.
double renyi_entropy(const DensityMatrix& rho, QIndex q);

/// (Tr(rho^q sigma^(1-q)) - 1)/(1 - q), each operator powered on its own
/// support. Throws SupportViolation when q > 1 and rho has weight outside
/// the support of sigma. Rejects q = 1.
double traditional_relative_tsallis(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q);

/// Trace of the q-th power of sigma^((1-q)/2q) rho sigma^((1-q)/2q),
/// returned together with the eigenvalues of the sandwiched operator.
/// sigma is any PSD matrix (an unnormalized identity reduces this to
/// Tr rho^q). Rejects q = 1.
EntropyResult q_tilde(const DensityMatrix& rho, const ComplexMatrix& sigma, QIndex q);

/// (q_tilde - 1)/(1 - q), sign convention as printed. Rejects q = 1.
double sandwiched_relative_tsallis(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q);

/// log(q_tilde)/(q - 1). Throws DegenerateSupport when q_tilde vanishes.
double sandwiched_relative_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, QIndex q);

/// Conditional sandwiched Tsallis relative entropy across `partition`:
/// sigma = I_X (x) rho_Y with Y the conditioning block. Negative value
/// (below -kWitnessTol) witnesses entanglement. q = 1 returns the exact
/// von Neumann conditional entropy with the q -> 1 gamma spectrum attached.
EntropyResult cstre(const DensityMatrix& rho, const Partition& partition, QIndex q);

/// Spectra-only q-conditional entropy (1 - Tr rho^q / Tr rho_Y^q)/(q - 1);
/// q = 1 dispatches to vn_conditional.
double ar_q_conditional(const DensityMatrix& rho, const Partition& partition, QIndex q);

/// S(rho) - S(rho_Y).
double vn_conditional(const DensityMatrix& rho, const Partition& partition);

}  // namespace qsep
