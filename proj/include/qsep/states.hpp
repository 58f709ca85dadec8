#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsep/qlinalg.hpp"

namespace qsep {

enum class Family { W, GHZ };

std::string to_string(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// One-parameter noisy mixture selector: (1-x)/(n+1) * P_n  +  x |psi><psi|
/// with |psi> the W or GHZ state. x = 0 is the normalized symmetric
/// projector, x = 1 the pure state.
struct FamilySpec {
    Family family;
    int n_qubits;  // >= 2
    double x;      // in [0, 1]

    void validate() const;  // throws std::invalid_argument
};

/// Normalized equal superposition of all weight-k basis states.
/// Throws BadExcitationNumber unless 0 <= k <= n.
std::vector<Complex> dicke_state(int n, int k);

/// Projector onto the (n+1)-dimensional symmetric subspace.
ComplexMatrix symmetric_projector(int n);

DensityMatrix noisy_family(const FamilySpec& spec);

/// Two-qubit pair sharing identical global and one-qubit spectra; the first
/// is entangled, the second separable (and commutes with its marginals).
std::pair<DensityMatrix, DensityMatrix> isospectral_pair();

}  // namespace qsep
