#include "qsep/states.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qsep {

std::string to_string(Family f) { return f == Family::W ? "w" : "ghz"; }

std::optional<Family> family_from_string(std::string_view s) {
    if (s == "w" || s == "W") return Family::W;
    if (s == "ghz" || s == "GHZ") return Family::GHZ;
    return std::nullopt;
}

void FamilySpec::validate() const {
    if (n_qubits < 2) throw std::invalid_argument("family state needs at least 2 qubits");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("mixing parameter x must be in [0, 1]");
}

std::vector<Complex> dicke_state(int n, int k) {
    if (n < 1) throw BadExcitationNumber("dicke_state: need n >= 1 qubits");
    if (k < 0 || k > n)
        throw BadExcitationNumber("dicke_state: excitation number " + std::to_string(k) +
                                  " outside 0.." + std::to_string(n));
    const std::size_t d = std::size_t{1} << n;
    std::vector<Complex> v(d);
    std::size_t count = 0;
    for (std::size_t b = 0; b < d; ++b)
        if (std::popcount(b) == k) ++count;
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t b = 0; b < d; ++b)
        if (std::popcount(b) == k) v[b] = amp;
    return v;
}

ComplexMatrix symmetric_projector(int n) {
    if (n < 1) throw std::invalid_argument("symmetric_projector: need n >= 1");
    ComplexMatrix p(std::size_t{1} << n);
    for (int k = 0; k <= n; ++k) p += outer(dicke_state(n, k));
    return p;
}

DensityMatrix noisy_family(const FamilySpec& spec) {
    spec.validate();
    const int n = spec.n_qubits;
    const std::size_t d = std::size_t{1} << n;

    std::vector<Complex> psi;
    if (spec.family == Family::W) {
        psi = dicke_state(n, 1);
    } else {
        psi.assign(d, Complex{});
        psi.front() = psi.back() = 1.0 / std::sqrt(2.0);
    }

    ComplexMatrix m = ((1.0 - spec.x) / (n + 1)) * symmetric_projector(n);
    m += spec.x * outer(psi);
    return validate_density(m, n);
}

std::pair<DensityMatrix, DensityMatrix> isospectral_pair() {
    ComplexMatrix first(4);
    first(0, 0) = 1.0 / 3.0;
    first(1, 1) = first(1, 2) = first(2, 1) = first(2, 2) = 1.0 / 3.0;

    ComplexMatrix second(4);
    second(0, 0) = 1.0 / 3.0;
    second(3, 3) = 2.0 / 3.0;

    return {validate_density(first, 2), validate_density(second, 2)};
}

}  // namespace qsep
