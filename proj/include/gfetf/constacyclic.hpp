#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "gfetf/code.hpp"
#include "gfetf/poly.hpp"

namespace gfetf {

/// Length and shift constant of a lambda-constacyclic code, with the
/// decomposition n = p^{nu_p(n)} n'.
struct ConstaSpec {
    std::size_t n = 0;
    Fq lambda;
    unsigned nu_p = 0;
    std::size_t n_prime = 0;
    std::uint64_t ord_lambda = 0;
};

inline ConstaSpec make_consta_spec(const Field& F, std::size_t n, Fq lambda) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "length must be positive");
    if (lambda.is_zero()) throw Error(ErrorKind::ZeroElement, "lambda must be nonzero");
    ConstaSpec s{n, lambda, 0, n, F.element_order(lambda)};
    while (s.n_prime % F.p() == 0) {
        s.n_prime /= F.p();
        ++s.nu_p;
    }
    return s;
}

/// An ideal <g> of F_q[X]/(X^n - lambda).
struct ConstacyclicCode {
    ConstaSpec spec;
    Poly g;  // monic divisor of X^n - lambda
    LinearCode code;

    [[nodiscard]] std::size_t dimension() const noexcept { return code.dimension(); }
};

/// Rows are the coefficient vectors of X^i g(X), i = 0..n-deg(g)-1.
inline Matrix constacyclic_generator(const FieldPtr& F, std::size_t n, const Poly& g) {
    const std::size_t k = n - static_cast<std::size_t>(g.degree());
    Matrix gen(F, k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (int j = 0; j <= g.degree(); ++j) gen(i, i + static_cast<std::size_t>(j)) = g[static_cast<std::size_t>(j)];
    return gen;
}

/// (c_0, ..., c_{n-1}) -> (lambda c_{n-1}, c_0, ..., c_{n-2})
inline FqVector constacyclic_shift(const Field& F, std::span<const Fq> v, Fq lambda) {
    FqVector out(v.size());
    if (v.empty()) return out;
    out[0] = F.mul(lambda, v.back());
    for (std::size_t i = 1; i < v.size(); ++i) out[i] = v[i - 1];
    return out;
}

inline bool is_shift_invariant(const LinearCode& code, Fq lambda) {
    const Matrix& G = code.generator();
    if (G.rows() == 0) return true;
    Matrix shifted(G.field_ptr(), G.rows(), G.cols());
    for (std::size_t i = 0; i < G.rows(); ++i) {
        const auto s = constacyclic_shift(G.field(), G.row(i), lambda);
        std::copy(s.begin(), s.end(), shifted.row(i).begin());
    }
    return rank(vstack(G, shifted)) == G.rows();
}

/// Calls visit for every monic divisor of X^n - lambda, in the lexicographic
/// order of exponent vectors over the canonically sorted irreducible factors
/// (last factor varies fastest). Returns the number of divisors.
inline std::uint64_t for_each_constacyclic(const FieldPtr& F, const ConstaSpec& spec,
                                           const std::function<void(const ConstacyclicCode&)>& visit,
                                           std::uint64_t seed = 0) {
    const auto factors = factorize(x_pow_minus(F, spec.n, spec.lambda), seed);
    std::vector<unsigned> exps(factors.size(), 0);
    std::uint64_t count = 0;
    for (;;) {
        Poly g = Poly::constant(F, Field::one());
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (unsigned m = 0; m < exps[i]; ++m) g = g * factors[i].factor;
        Matrix gen = constacyclic_generator(F, spec.n, g);
        visit(ConstacyclicCode{spec, std::move(g), LinearCode(std::move(gen))});
        ++count;
        std::size_t i = factors.size();
        while (i > 0) {
            --i;
            if (++exps[i] <= factors[i].multiplicity) break;
            exps[i] = 0;
            if (i == 0) return count;
        }
        if (factors.empty()) return count;
    }
}

inline std::vector<ConstacyclicCode> enumerate_constacyclic(const FieldPtr& F, const ConstaSpec& spec,
                                                            std::uint64_t seed = 0) {
    std::vector<ConstacyclicCode> out;
    for_each_constacyclic(F, spec, [&](const ConstacyclicCode& c) { out.push_back(c); }, seed);
    return out;
}

/// Self-dual members of the ideal lattice, decided by the hull rank formula.
inline std::vector<ConstacyclicCode> find_galois_self_dual(const FieldPtr& F, const ConstaSpec& spec,
                                                           std::uint32_t ell, std::uint64_t seed = 0) {
    if (spec.n % 2 != 0) throw Error(ErrorKind::OddLength, "self-dual codes need even length");
    F->check_ell(ell);
    std::vector<ConstacyclicCode> out;
    for_each_constacyclic(
        F, spec,
        [&](const ConstacyclicCode& c) {
            if (2 * c.dimension() != spec.n) return;
            if (hull_dim(c.code, ell).classification == HullClass::SelfDual) out.push_back(c);
        },
        seed);
    return out;
}

/// Every lambda whose order divides gcd(p^l + 1, q - 1), in discrete-log order.
inline std::vector<Fq> admissible_lambdas(const Field& F, std::uint32_t ell) {
    const std::uint64_t n = F.q() - 1;
    const std::uint64_t g = std::gcd(F.frobenius_power(ell) + 1, n);
    std::vector<Fq> out;
    const std::uint64_t step = n / g;  // elements of order dividing g are zeta^{j * step}
    for (std::uint64_t j = 0; j < g; ++j) out.push_back(F.zeta_pow(static_cast<std::int64_t>(j * step)));
    return out;
}

enum class Existence { Exists, NotExists, Undetermined };

constexpr std::string_view to_string(Existence e) noexcept {
    switch (e) {
        case Existence::Exists: return "exists";
        case Existence::NotExists: return "not-exists";
        case Existence::Undetermined: return "undetermined";
    }
    return "?";
}

/// Auxiliary quantities of the p = 3 mod 4 branches; the caller supplies them.
struct ExistenceExtra {
    std::optional<std::uint64_t> h;
    std::optional<std::uint64_t> r;
};

namespace detail {

inline unsigned two_adic(std::uint64_t n) {
    if (n == 0) return 64;
    unsigned v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    return v;
}

}  // namespace detail

/// Existence criterion for an l-Galois self-dual lambda-constacyclic code of
/// length n over F_{p^e}, given ord(lambda).
inline Existence existence_check(std::uint32_t p, std::uint32_t e, std::uint32_t ell, std::uint64_t n,
                                 std::uint64_t ord_lambda, ExistenceExtra extra = {}) {
    if (!detail::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    if (ell > e) throw Error(ErrorKind::EllOutOfRange, "ell outside [0, e]");
    if (n == 0 || ord_lambda == 0) throw Error(ErrorKind::InvalidArgument, "n and ord(lambda) must be positive");
    std::uint64_t pl = 1, q = 1;
    for (std::uint32_t i = 0; i < ell % e; ++i) pl *= p;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    if (std::gcd(pl + 1, q - 1) % ord_lambda != 0) return Existence::NotExists;

    std::uint64_t n_prime = n;
    unsigned nu_p = 0;
    while (n_prime % p == 0) {
        n_prime /= p;
        ++nu_p;
    }
    if (p == 2) return nu_p >= 1 ? Existence::Exists : Existence::NotExists;

    const bool both_even = n_prime % 2 == 0 && ord_lambda % 2 == 0;
    if (p % 4 == 1) return both_even ? Existence::Exists : Existence::NotExists;

    // p = -1 + 2^v u with v >= 2, u odd.
    const unsigned v = detail::two_adic(p + 1);
    if (!both_even) return Existence::NotExists;
    if (!extra.h) return Existence::Undetermined;
    if (e % 2 == 0 && *extra.h % 2 == 0) return Existence::Exists;
    if (!extra.r) return Existence::Undetermined;
    return detail::two_adic(n_prime * *extra.r) > v ? Existence::Exists : Existence::NotExists;
}

}  // namespace gfetf
