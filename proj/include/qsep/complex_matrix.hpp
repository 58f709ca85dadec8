#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qsep {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Operators on a few qubits stay
/// small (dim <= a few hundred), so there is no sparse or blocked path.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    ComplexMatrix adjoint() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s, 0.0); }

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; the left factor is the most significant tensor slot.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// |v><v|
ComplexMatrix outer(const std::vector<Complex>& v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max-abs entry of M - M^dag
double hermiticity_defect(const ComplexMatrix& m);

/// (M + M^dag)/2
ComplexMatrix hermitize(const ComplexMatrix& m);

/// max-abs entry of AB - BA
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qsep
