#include "qsep/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsep {

namespace {

constexpr double kJacobiOffNorm = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

// qubit k occupies bit (n-1-k) of a basis index
inline unsigned bit_of(std::size_t idx, int qubit, int n) {
    return static_cast<unsigned>((idx >> (n - 1 - qubit)) & 1u);
}

// bits of idx at `qubits` (ascending), packed with the same significance order
std::size_t gather_bits(std::size_t idx, const std::vector<int>& qubits, int n) {
    const int m = static_cast<int>(qubits.size());
    std::size_t sub = 0;
    for (int a = 0; a < m; ++a) sub |= static_cast<std::size_t>(bit_of(idx, qubits[a], n)) << (m - 1 - a);
    return sub;
}

// inverse of gather_bits: place sub-index bits at `qubits`
std::size_t scatter_bits(std::size_t sub, const std::vector<int>& qubits, int n) {
    const int m = static_cast<int>(qubits.size());
    std::size_t idx = 0;
    for (int a = 0; a < m; ++a)
        idx |= (((sub >> (m - 1 - a)) & 1u) << (n - 1 - qubits[a]));
    return idx;
}

std::vector<int> checked_subset(const std::vector<int>& set, int n, const char* what) {
    if (set.empty()) throw BadIndexSet(std::string(what) + ": empty index set");
    std::vector<int> s = set;
    std::sort(s.begin(), s.end());
    if (s.front() < 0 || s.back() >= n)
        throw BadIndexSet(std::string(what) + ": index out of range for " + std::to_string(n) + " qubits");
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw BadIndexSet(std::string(what) + ": duplicate index");
    if (static_cast<int>(s.size()) >= n)
        throw BadIndexSet(std::string(what) + ": set must be a proper subset of the register");
    return s;
}

std::vector<int> complement_of(const std::vector<int>& sorted, int n) {
    std::vector<int> out;
    out.reserve(n - sorted.size());
    std::size_t j = 0;
    for (int q = 0; q < n; ++q) {
        if (j < sorted.size() && sorted[j] == q)
            ++j;
        else
            out.push_back(q);
    }
    return out;
}

double off_diag_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) sum += std::norm(a(r, c));
    return std::sqrt(sum);
}

ComplexMatrix from_spectrum(const Spectrum& s, const std::vector<double>& f) {
    // V diag(f) V^dag
    const std::size_t n = s.eigenvectors.dim();
    ComplexMatrix scaled(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) scaled(r, c) = s.eigenvectors(r, c) * f[c];
    return scaled * s.eigenvectors.adjoint();
}

}  // namespace

Spectrum eig_hermitian(const ComplexMatrix& h) {
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) throw NotHermitian(defect);

    const std::size_t n = h.dim();
    ComplexMatrix a = hermitize(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (off_diag_norm(a) <= kJacobiOffNorm) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex phase = apq / mag;  // e^{i arg(a_pq)}
                const Complex phase_conj = std::conj(phase);

                // A <- A U with U(p,p)=c, U(p,q)=s, U(q,p)=-s e^{-i t}, U(q,q)=c e^{-i t}
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * phase_conj * aiq;
                    a(i, q) = s * aip + c * phase_conj * aiq;
                    const Complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - s * phase_conj * viq;
                    v(i, q) = s * vip + c * phase_conj * viq;
                }
                // A <- U^dag A
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * apj + c * phase * aqj;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

ComplexMatrix power_on_support(const ComplexMatrix& h, double exponent) {
    Spectrum s = eig_hermitian(h);
    std::vector<double> f(s.eigenvalues.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double lam = s.eigenvalues[i];
        if (lam < -kPsdTol) throw NotPSD(lam);
        f[i] = lam > kSupportCutoff ? std::pow(lam, exponent) : 0.0;
    }
    return from_spectrum(s, f);
}

DensityMatrix validate_density(const ComplexMatrix& m, int n_qubits, double tol) {
    if (n_qubits < 1 || m.dim() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("dimension " + std::to_string(m.dim()) + " is not 2^" +
                                    std::to_string(n_qubits));
    const double defect = hermiticity_defect(m);
    if (defect > tol) throw NotHermitian(defect);

    ComplexMatrix herm = hermitize(m);
    const double tr = herm.trace().real();
    if (std::abs(tr - 1.0) > tol) throw TraceNotOne(tr);

    Spectrum s = eig_hermitian(herm);
    bool clamped = false;
    for (double& lam : s.eigenvalues) {
        if (lam < -kPsdTol) throw NotPSD(lam);
        if (lam < 0.0) {
            lam = 0.0;
            clamped = true;
        }
    }
    if (clamped) herm = from_spectrum(s, s.eigenvalues);
    return DensityMatrix(std::move(herm), std::move(s), n_qubits);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int n = rho.n_qubits();
    const std::vector<int> kept = checked_subset(keep, n, "partial_trace");
    const std::vector<int> traced = complement_of(kept, n);
    const int m = static_cast<int>(kept.size());
    const std::size_t dk = std::size_t{1} << m;
    const std::size_t dt = std::size_t{1} << (n - m);

    ComplexMatrix out(dk);
    for (std::size_t r = 0; r < dk; ++r) {
        const std::size_t ri = scatter_bits(r, kept, n);
        for (std::size_t c = 0; c < dk; ++c) {
            const std::size_t ci = scatter_bits(c, kept, n);
            Complex sum = 0.0;
            for (std::size_t t = 0; t < dt; ++t) {
                const std::size_t ti = scatter_bits(t, traced, n);
                sum += rho.matrix()(ri | ti, ci | ti);
            }
            out(r, c) = sum;
        }
    }
    return validate_density(out, m);
}

ComplexMatrix partial_transpose_matrix(const ComplexMatrix& m, const std::vector<int>& transpose_set,
                                       int n_qubits) {
    const std::vector<int> set = checked_subset(transpose_set, n_qubits, "partial_transpose");
    const std::size_t d = m.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t sub_i = gather_bits(i, set, n_qubits);
            const std::size_t sub_j = gather_bits(j, set, n_qubits);
            const std::size_t mask = scatter_bits((std::size_t{1} << set.size()) - 1, set, n_qubits);
            const std::size_t ii = (i & ~mask) | scatter_bits(sub_j, set, n_qubits);
            const std::size_t jj = (j & ~mask) | scatter_bits(sub_i, set, n_qubits);
            out(ii, jj) = m(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const std::vector<int>& transpose_set) {
    return partial_transpose_matrix(rho.matrix(), transpose_set, rho.n_qubits());
}

ComplexMatrix embed_with_identity(const ComplexMatrix& op, const std::vector<int>& acting_on,
                                  int n_qubits) {
    const std::vector<int> on = checked_subset(acting_on, n_qubits, "embed_with_identity");
    if (op.dim() != (std::size_t{1} << on.size()))
        throw BadIndexSet("embed_with_identity: operator dimension does not match index set");
    const std::vector<int> rest = complement_of(on, n_qubits);
    const std::size_t d = std::size_t{1} << n_qubits;
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t xi = gather_bits(i, rest, n_qubits);
        const std::size_t yi = gather_bits(i, on, n_qubits);
        for (std::size_t j = 0; j < d; ++j) {
            if (gather_bits(j, rest, n_qubits) != xi) continue;
            out(i, j) = op(yi, gather_bits(j, on, n_qubits));
        }
    }
    return out;
}

}  // namespace qsep
