#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "gfetf/matrix.hpp"

namespace gfetf {

/// <x, y>_l = sum_i x_i sigma_l(y_i).
inline Fq galois_inner_product(const Field& F, std::span<const Fq> x, std::span<const Fq> y, std::uint32_t ell) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimMismatch, "vectors of different length");
    F.check_ell(ell);
    Fq acc = Field::zero();
    for (std::size_t i = 0; i < x.size(); ++i) acc = F.add(acc, F.mul(x[i], F.frobenius(y[i], ell)));
    return acc;
}

/// A linear code given by a full-row-rank generator matrix.
class LinearCode {
public:
    /// Requires gen to have full row rank.
    explicit LinearCode(Matrix gen) : gen_(std::move(gen)) {
        if (rank(gen_) != gen_.rows())
            throw Error(ErrorKind::InvalidArgument, "generator matrix must have full row rank");
    }

    /// The code spanned by the rows of any matrix (rank-deficient input allowed).
    static LinearCode spanned_by(const Matrix& rows) { return LinearCode(row_basis(rows)); }

    [[nodiscard]] const Matrix& generator() const noexcept { return gen_; }
    [[nodiscard]] const Field& field() const noexcept { return gen_.field(); }
    [[nodiscard]] const FieldPtr& field_ptr() const noexcept { return gen_.field_ptr(); }
    [[nodiscard]] std::size_t length() const noexcept { return gen_.cols(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return gen_.rows(); }

    /// Same code, possibly different generator.
    [[nodiscard]] bool same_code(const LinearCode& other) const { return same_row_space(gen_, other.gen_); }

private:
    Matrix gen_;
};

enum class HullClass { SelfDual, SelfOrthogonal, Lcd, Intermediate };

constexpr std::string_view to_string(HullClass c) noexcept {
    switch (c) {
        case HullClass::SelfDual: return "self-dual";
        case HullClass::SelfOrthogonal: return "self-orthogonal";
        case HullClass::Lcd: return "LCD";
        case HullClass::Intermediate: return "intermediate";
    }
    return "?";
}

struct HullReport {
    std::uint32_t ell = 0;
    std::size_t hull_dim = 0;
    HullClass classification = HullClass::Intermediate;
};

/// h_l(C) = k - rank(G sigma_l(G)^t). The zero code reports as LCD.
inline HullReport hull_dim(const LinearCode& code, std::uint32_t ell) {
    const Matrix& G = code.generator();
    code.field().check_ell(ell);
    const std::size_t k = code.dimension();
    const std::size_t h = k - rank(G * dagger(G, ell));
    HullClass cls = HullClass::Intermediate;
    if (h == k && 2 * k == code.length() && k > 0)
        cls = HullClass::SelfDual;
    else if (h == 0)
        cls = HullClass::Lcd;
    else if (h == k)
        cls = HullClass::SelfOrthogonal;
    return {ell, h, cls};
}

/// C^{perp_l}: the kernel of sigma_l(G) acting on column vectors.
inline LinearCode galois_dual(const LinearCode& code, std::uint32_t ell) {
    code.field().check_ell(ell);
    return LinearCode(null_space(frobenius(code.generator(), ell)));
}

/// sigma_l applied to every codeword.
inline LinearCode frobenius_image(const LinearCode& code, std::uint32_t ell) {
    return LinearCode(frobenius(code.generator(), ell));
}

struct SystematicForm {
    Matrix a;                       // k x (n-k)
    std::vector<std::size_t> perm;  // column j of [I|A] is column perm[j] of the original code
    [[nodiscard]] bool is_identity() const {
        for (std::size_t j = 0; j < perm.size(); ++j)
            if (perm[j] != j) return false;
        return true;
    }
};

/// Generator [I|A] of the column-permuted code; the permutation is the
/// identity whenever the first k columns are information positions.
inline SystematicForm systematic_form(const LinearCode& code) {
    const auto [r, pivots] = rref(code.generator());
    const std::size_t k = code.dimension();
    const std::size_t n = code.length();
    std::vector<std::size_t> perm(pivots.begin(), pivots.end());
    std::vector<bool> used(n, false);
    for (auto c : pivots) used[c] = true;
    for (std::size_t j = 0; j < n; ++j)
        if (!used[j]) perm.push_back(j);
    Matrix a(code.field_ptr(), k, n - k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n - k; ++j) a(i, j) = r(i, perm[k + j]);
    return {std::move(a), std::move(perm)};
}

inline LinearCode permute_code(const LinearCode& code, std::span<const std::size_t> perm) {
    return LinearCode(permute_columns(code.generator(), perm));
}

struct MinDistanceOptions {
    std::uint64_t budget = 10'000'000;  // maximum number of messages (q^k) to enumerate
    unsigned workers = 1;
};

/// Exact minimum distance by enumerating one representative of every
/// projective message; nullopt when q^k exceeds the budget.
inline std::optional<std::size_t> min_distance(const LinearCode& code, MinDistanceOptions opts = {}) {
    const Field& F = code.field();
    const std::size_t k = code.dimension();
    const std::size_t n = code.length();
    if (k == 0) return std::nullopt;
    const std::uint64_t q = F.q();
    unsigned __int128 total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= q;
        if (total > opts.budget) return std::nullopt;
    }
    const Matrix& G = code.generator();
    const auto elems = F.elements();
    // multiples[row][c * n + j] = elems[c] * G(row, j)
    std::vector<std::vector<Fq>> multiples(k, std::vector<Fq>(q * n));
    for (std::size_t row = 0; row < k; ++row)
        for (std::uint64_t c = 0; c < q; ++c)
            for (std::size_t j = 0; j < n; ++j) multiples[row][c * n + j] = F.mul(elems[c], G(row, j));

    struct Shard {
        std::size_t lead;
        std::optional<std::uint64_t> first;
    };
    std::vector<Shard> shards;
    for (std::size_t lead = 0; lead < k; ++lead) {
        if (lead + 1 < k)
            for (std::uint64_t c = 0; c < q; ++c) shards.push_back({lead, c});
        else
            shards.push_back({lead, std::nullopt});
    }

    std::atomic<std::size_t> best{n};
    auto weight = [&](std::span<const Fq> v) {
        std::size_t w = 0;
        for (auto x : v) w += x.is_zero() ? 0 : 1;
        return w;
    };
    auto run_shard = [&](const Shard& s) {
        // Levels lead+1..k-1 are free; with a fixed first free digit only lead+2.. vary.
        const std::size_t fixed_until = s.first ? s.lead + 2 : s.lead + 1;
        std::vector<Fq> base(G.row(s.lead).begin(), G.row(s.lead).end());
        if (s.first)
            for (std::size_t j = 0; j < n; ++j) base[j] = F.add(base[j], multiples[s.lead + 1][*s.first * n + j]);
        const std::size_t free_levels = k - fixed_until;
        std::size_t local = weight(base);
        if (free_levels == 0) {
            std::size_t cur = best.load();
            while (local < cur && !best.compare_exchange_weak(cur, local)) {}
            return;
        }
        std::vector<std::uint64_t> digit(free_levels, 0);
        std::vector<std::vector<Fq>> partial(free_levels + 1, base);
        auto refresh = [&](std::size_t from) {
            for (std::size_t lvl = from; lvl < free_levels; ++lvl) {
                const auto& m = multiples[fixed_until + lvl];
                for (std::size_t j = 0; j < n; ++j) partial[lvl + 1][j] = F.add(partial[lvl][j], m[digit[lvl] * n + j]);
            }
        };
        refresh(0);
        for (;;) {
            local = std::min(local, weight(partial[free_levels]));
            std::size_t lvl = free_levels;
            while (lvl > 0) {
                --lvl;
                if (++digit[lvl] < q) break;
                digit[lvl] = 0;
                if (lvl == 0) {
                    lvl = free_levels;  // odometer wrapped
                    break;
                }
            }
            if (lvl == free_levels) break;
            refresh(lvl);
        }
        std::size_t cur = best.load();
        while (local < cur && !best.compare_exchange_weak(cur, local)) {}
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(shards.size())));
    if (workers == 1) {
        for (const auto& s : shards) run_shard(s);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < shards.size(); i += workers) run_shard(shards[i]);
            });
        for (auto& t : pool) t.join();
    }
    return best.load();
}

}  // namespace gfetf
