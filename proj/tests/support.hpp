#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "gfetf/gfetf.hpp"

namespace gfetf::testing {

inline Fq random_element(const Field& F, std::mt19937_64& rng) {
    return Fq{std::uniform_int_distribution<std::uint64_t>(0, F.q() - 1)(rng)};
}

inline Fq random_nonzero(const Field& F, std::mt19937_64& rng) {
    return Fq{std::uniform_int_distribution<std::uint64_t>(1, F.q() - 1)(rng)};
}

inline FqVector random_vector(const Field& F, std::size_t n, std::mt19937_64& rng) {
    FqVector v(n);
    for (auto& x : v) x = random_element(F, rng);
    return v;
}

inline Matrix random_matrix(const FieldPtr& F, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(F, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_element(*F, rng);
    return m;
}

/// A random k x n matrix of full row rank (k <= n).
inline Matrix random_full_rank(const FieldPtr& F, std::size_t k, std::size_t n, std::mt19937_64& rng) {
    for (;;) {
        Matrix m = random_matrix(F, k, n, rng);
        if (rank(m) == k) return m;
    }
}

/// x^k by repeated multiplication.
inline Fq slow_pow(const Field& F, Fq x, std::uint64_t k) {
    Fq r = Field::one();
    for (std::uint64_t i = 0; i < k; ++i) r = F.mul(r, x);
    return r;
}

/// All q^k codewords of the code spanned by the rows of g.
inline std::vector<FqVector> all_codewords(const Matrix& g) {
    const Field& F = g.field();
    const auto elems = F.elements();
    std::vector<FqVector> out;
    std::vector<std::size_t> digit(g.rows(), 0);
    for (;;) {
        FqVector w(g.cols(), Field::zero());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) w[j] = F.add(w[j], F.mul(elems[digit[i]], g(i, j)));
        out.push_back(std::move(w));
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == elems.size()) digit[i++] = 0;
        if (i == digit.size()) break;
    }
    return out;
}

/// Every vector of F_q^n.
inline std::vector<FqVector> all_vectors(const Field& F, std::size_t n) {
    return all_codewords(Matrix::identity(Field::make(F.p(), F.e(), F.spec().modulus), n));
}

inline std::size_t ilog(std::uint64_t q, std::uint64_t x) {
    std::size_t k = 0;
    while (x > 1) {
        x /= q;
        ++k;
    }
    return k;
}

/// All 2 x 2 matrices X with X X^dagger = c I, by direct enumeration.
inline std::vector<Matrix> scaled_unitary_2x2(const FieldPtr& F, std::uint32_t ell, Fq c) {
    const auto el = F->elements();
    auto nrm = [&](Fq a, Fq b) { return F->add(F->mul(a, F->frobenius(a, ell)), F->mul(b, F->frobenius(b, ell))); };
    std::vector<std::pair<Fq, Fq>> rows;
    for (auto a : el)
        for (auto b : el)
            if (nrm(a, b) == c) rows.emplace_back(a, b);
    std::vector<Matrix> out;
    for (const auto& [a, b] : rows)
        for (const auto& [x, y] : rows)
            if (F->add(F->mul(a, F->frobenius(x, ell)), F->mul(b, F->frobenius(y, ell))).is_zero())
                out.emplace_back(F, 2, 2, std::vector<Fq>{a, b, x, y});
    return out;
}

/// Distinct n x n matrices A with A A^dagger = -I for n in {2, 4}; the 4 x 4 ones
/// are block-diagonal solutions mixed by a unitary built from 2 x 2 blocks.
inline std::vector<Matrix> self_dual_blocks(const FieldPtr& F, std::uint32_t ell, std::size_t n, std::size_t count,
                                            std::mt19937_64& rng) {
    const auto minus = scaled_unitary_2x2(F, ell, F->neg(Field::one()));
    std::vector<Matrix> out;
    if (minus.empty()) return out;
    auto pick = [&](const std::vector<Matrix>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    if (n == 2) {
        std::vector<std::size_t> idx(minus.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t i = 0; i < std::min(count, idx.size()); ++i) out.push_back(minus[idx[i]]);
        return out;
    }
    const auto unit = scaled_unitary_2x2(F, ell, Field::one());
    auto block = [&](const Matrix& x, const Matrix& y) {
        Matrix m(F, 4, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                m(i, j) = x(i, j);
                m(i + 2, j + 2) = y(i, j);
            }
        return m;
    };
    // interleaving permutation 0 2 1 3 spreads the second unitary across both blocks
    Matrix perm(F, 4, 4, std::vector<Fq>(16, Field::zero()));
    const std::size_t pi[4] = {0, 2, 1, 3};
    for (std::size_t i = 0; i < 4; ++i) perm(i, pi[i]) = Field::one();
    for (std::size_t tries = 0; out.size() < count && tries < 50 * count; ++tries) {
        const Matrix a = block(pick(minus), pick(minus)) * perm * block(pick(unit), pick(unit)) * transpose(perm);
        if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
    }
    return out;
}

}  // namespace gfetf::testing
