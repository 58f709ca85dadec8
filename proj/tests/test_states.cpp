#include <bit>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qsep/states.hpp"
#include "test_util.hpp"

using namespace qsep;

namespace {

// conjugation by the qubit-permutation unitary: qubit k moves to perm[k]
ComplexMatrix permute_qubits(const ComplexMatrix& m, const std::vector<int>& perm, int n) {
    const std::size_t d = m.dim();
    std::vector<std::size_t> map(d);
    for (std::size_t b = 0; b < d; ++b) {
        std::size_t out = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t bit = (b >> (n - 1 - k)) & 1u;
            out |= bit << (n - 1 - perm[k]);
        }
        map[b] = out;
    }
    ComplexMatrix result(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) result(map[r], map[c]) = m(r, c);
    return result;
}

Complex inner(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

std::vector<Complex> apply(const ComplexMatrix& m, const std::vector<Complex>& v) {
    std::vector<Complex> out(v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

}  // namespace

TEST_CASE("dicke_state basics") {
    const auto d20 = dicke_state(2, 0);
    CHECK(d20[0] == Complex{1.0});
    CHECK(d20[1] == Complex{});

    const auto d21 = dicke_state(2, 1);
    CHECK(std::abs(d21[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(d21[2] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(d21[0] == Complex{});

    const auto w3 = dicke_state(3, 1);
    for (std::size_t b = 0; b < 8; ++b) {
        const double expect = std::popcount(b) == 1 ? 1.0 / std::sqrt(3.0) : 0.0;
        CHECK(std::abs(w3[b] - expect) < 1e-15);
    }

    CHECK_THROWS_AS(dicke_state(3, -1), BadExcitationNumber);
    CHECK_THROWS_AS(dicke_state(3, 4), BadExcitationNumber);
}

TEST_CASE("dicke states are orthonormal") {
    for (int n : {3, 4}) {
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                const Complex ip = inner(dicke_state(n, j), dicke_state(n, k));
                CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("symmetric_projector") {
    CHECK(max_abs_diff(symmetric_projector(1), ComplexMatrix::identity(2)) < 1e-15);

    for (int n : {2, 3, 4}) {
        const ComplexMatrix p = symmetric_projector(n);
        CHECK(p.trace().real() == doctest::Approx(n + 1).epsilon(1e-12));
        CHECK(max_abs_diff(p * p, p) < 1e-12);
        CHECK(hermiticity_defect(p) < 1e-15);
    }

    // the two-qubit singlet is annihilated
    const double a = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> singlet{0.0, a, -a, 0.0};
    const auto image = apply(symmetric_projector(2), singlet);
    for (const Complex& v : image) CHECK(std::abs(v) < 1e-12);

    // W and GHZ live inside the symmetric subspace
    const auto w = dicke_state(3, 1);
    const auto w_img = apply(symmetric_projector(3), w);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(w_img[i] - w[i]) < 1e-12);

    std::vector<Complex> ghz(8);
    ghz[0] = ghz[7] = a;
    const auto ghz_img = apply(symmetric_projector(3), ghz);
    for (std::size_t i = 0; i < ghz.size(); ++i) CHECK(std::abs(ghz_img[i] - ghz[i]) < 1e-12);
}

TEST_CASE("noisy_family endpoints and marginals") {
    const auto pure = noisy_family({Family::W, 3, 1.0}).spectrum().eigenvalues;
    for (int i = 0; i < 7; ++i) CHECK(std::abs(pure[i]) < 1e-12);
    CHECK(pure[7] == doctest::Approx(1.0).epsilon(1e-12));

    const auto mixed = noisy_family({Family::W, 3, 0.0}).spectrum().eigenvalues;
    for (int i = 0; i < 4; ++i) CHECK(std::abs(mixed[i]) < 1e-12);
    for (int i = 4; i < 8; ++i) CHECK(mixed[i] == doctest::Approx(0.25).epsilon(1e-12));

    for (double x : {0.25, 0.6}) {
        const auto ev = partial_trace(noisy_family({Family::W, 3, x}), {1, 2}).spectrum().eigenvalues;
        const auto expect = test_util::w3_marginal_spectrum(x);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - expect[i]) < 1e-12);
    }

    CHECK_THROWS_AS(noisy_family({Family::W, 3, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(noisy_family({Family::W, 1, 0.5}), std::invalid_argument);
}

TEST_CASE("noisy_family trace stays one across the x grid") {
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        CHECK(std::abs(noisy_family({Family::W, 3, x}).matrix().trace().real() - 1.0) < 1e-12);
        CHECK(std::abs(noisy_family({Family::GHZ, 4, x}).matrix().trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("noisy_family is permutation-symmetric") {
    const std::vector<std::vector<int>> perms3{{1, 0, 2}, {2, 1, 0}, {1, 2, 0}};
    for (Family f : {Family::W, Family::GHZ}) {
        const ComplexMatrix rho = noisy_family({f, 3, 0.37}).matrix();
        for (const auto& perm : perms3)
            CHECK(max_abs_diff(permute_qubits(rho, perm, 3), rho) < 1e-12);
    }
    const ComplexMatrix rho4 = noisy_family({Family::W, 4, 0.7}).matrix();
    for (const auto& perm : {std::vector<int>{3, 1, 2, 0}, {1, 0, 3, 2}})
        CHECK(max_abs_diff(permute_qubits(rho4, perm, 4), rho4) < 1e-12);
}

TEST_CASE("isospectral pair shares spectra but not commutation structure") {
    const auto [entangled, separable] = isospectral_pair();

    const std::vector<double> global{0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0};
    const std::vector<double> local{1.0 / 3.0, 2.0 / 3.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(entangled.spectrum().eigenvalues[i] - global[i]) < 1e-12);
        CHECK(std::abs(separable.spectrum().eigenvalues[i] - global[i]) < 1e-12);
    }
    for (const DensityMatrix& rho : {entangled, separable}) {
        for (int q : {0, 1}) {
            const auto ev = partial_trace(rho, {q}).spectrum().eigenvalues;
            CHECK(std::abs(ev[0] - local[0]) < 1e-12);
            CHECK(std::abs(ev[1] - local[1]) < 1e-12);
        }
    }

    const auto embedded_marginal = [](const DensityMatrix& rho) {
        return embed_with_identity(partial_trace(rho, {1}).matrix(), {1}, 2);
    };
    CHECK(commutator_norm(separable.matrix(), embedded_marginal(separable)) < 1e-12);
    CHECK(commutator_norm(entangled.matrix(), embedded_marginal(entangled)) > 1e-3);
}
