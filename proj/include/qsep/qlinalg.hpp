#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qsep/complex_matrix.hpp"
#include "qsep/errors.hpp"

namespace qsep {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSupportCutoff = 1e-12;

/// Eigensystem of a Hermitian operator. Eigenvalues ascending; column i of
/// `eigenvectors` pairs with `eigenvalues[i]`.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization for complex Hermitian matrices.
/// Deterministic: identical input bytes give identical output bytes.
/// Throws NotHermitian if the input fails the 1e-10 symmetry check.
Spectrum eig_hermitian(const ComplexMatrix& h);

/// V f(Lambda) V^dag with f(lambda) = lambda^exponent on the support
/// (lambda > kSupportCutoff) and 0 elsewhere, so rank-deficient operators
/// under negative exponents stay finite.
/// Throws NotHermitian / NotPSD.
ComplexMatrix power_on_support(const ComplexMatrix& h, double exponent);

/// Validated n-qubit mixed state: Hermitian, unit trace, PSD up to
/// tolerance. Eigenvalues in [-1e-10, 0) are clamped to zero on
/// construction (the matrix is rebuilt from the clamped spectrum);
/// anything below -1e-10 is rejected. Immutable; the spectrum computed
/// during validation is cached.
class DensityMatrix {
public:
    const ComplexMatrix& matrix() const { return matrix_; }
    const Spectrum& spectrum() const { return spectrum_; }
    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return matrix_.dim(); }

private:
    friend DensityMatrix validate_density(const ComplexMatrix&, int, double);
    DensityMatrix(ComplexMatrix m, Spectrum s, int n)
        : matrix_(std::move(m)), spectrum_(std::move(s)), n_qubits_(n) {}

    ComplexMatrix matrix_;
    Spectrum spectrum_;
    int n_qubits_;
};

/// Throws NotHermitian / TraceNotOne / NotPSD. `tol` governs the hermiticity
/// and trace checks; the PSD clamp window is fixed at [-1e-10, 0).
DensityMatrix validate_density(const ComplexMatrix& m, int n_qubits, double tol = kHermitianTol);

/// Ordered bipartition of an n-qubit register for conditional entropies.
/// "X:Y" reads "X conditioned on Y": the block after the colon is the
/// conditioning set. Accepts positional letters ("A:BC", A = qubit 0) and
/// explicit indices ("0:1,2"). Both sides nonempty, disjoint, covering the
/// register.
class Partition {
public:
    Partition(int n_qubits, std::vector<int> conditioning_set);

    /// Throws std::invalid_argument on malformed or incomplete partitions.
    static Partition parse(std::string_view text);

    int n_qubits() const { return n_qubits_; }
    const std::vector<int>& conditioning() const { return conditioning_; }
    const std::vector<int>& remainder() const { return remainder_; }

    /// Letter form, e.g. "A:BC".
    std::string to_string() const;

    friend bool operator==(const Partition& a, const Partition& b) = default;

private:
    int n_qubits_;
    std::vector<int> conditioning_;
    std::vector<int> remainder_;
};

/// Reduced state on `keep` (ascending qubit order preserved).
/// Throws BadIndexSet unless keep is a nonempty proper subset.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Transposition applied to the indices in `transpose_set` only. The result
/// is Hermitian with the same trace but need not be PSD, hence plain
/// matrices. Involution: applying the same set twice is the identity.
ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, const std::vector<int>& transpose_set,
                                       int n_qubits);
ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& transpose_set);

/// Places `op` (acting on the qubits in `acting_on`, ascending) into the
/// full register with identity on the complement, keeping every qubit in
/// its original slot.
ComplexMatrix embed_with_identity(const ComplexMatrix& op, const std::vector<int>& acting_on,
                                  int n_qubits);

}  // namespace qsep
