#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "gfetf/field.hpp"

namespace gfetf {

/// Univariate polynomial over one field, coefficients ascending. The zero
/// polynomial has no coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<Fq> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

    static Poly constant(FieldPtr field, Fq c) { return Poly(std::move(field), {c}); }
    static Poly x(FieldPtr field) { return Poly(std::move(field), {Field::zero(), Field::one()}); }

    /// c X^d
    static Poly monomial(FieldPtr field, std::size_t d, Fq c) {
        std::vector<Fq> coeffs(d + 1);
        coeffs[d] = c;
        return Poly(std::move(field), std::move(coeffs));
    }

    [[nodiscard]] const Field& field() const noexcept { return *field_; }
    [[nodiscard]] const FieldPtr& field_ptr() const noexcept { return field_; }
    [[nodiscard]] const std::vector<Fq>& coeffs() const noexcept { return c_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] Fq leading() const noexcept { return c_.empty() ? Field::zero() : c_.back(); }
    [[nodiscard]] Fq operator[](std::size_t i) const noexcept { return i < c_.size() ? c_[i] : Field::zero(); }
    [[nodiscard]] bool is_one() const noexcept { return c_.size() == 1 && c_[0] == Field::one(); }

    [[nodiscard]] Poly monic() const {
        if (is_zero()) return *this;
        const Fq inv = field_->inv(leading());
        std::vector<Fq> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(c_[i], inv);
        return Poly(field_, std::move(out));
    }

    [[nodiscard]] Fq evaluate(Fq at) const {
        Fq acc = Field::zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, at), c_[i]);
        return acc;
    }

    /// Formal derivative.
    [[nodiscard]] Poly derivative() const {
        if (c_.size() <= 1) return Poly(field_);
        std::vector<Fq> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            out[i - 1] = field_->mul(field_->scalar(static_cast<std::int64_t>(i % field_->p())), c_[i]);
        return Poly(field_, std::move(out));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Canonical order: by degree, then coefficients from the top down.
    friend bool canonical_less(const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const Field& F = a.pick_field(b);
        std::vector<Fq> out(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.add(a[i], b[i]);
        return Poly(a.field_ ? a.field_ : b.field_, std::move(out));
    }

    friend Poly operator-(const Poly& a) {
        std::vector<Fq> out(a.c_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_->neg(a.c_[i]);
        return Poly(a.field_, std::move(out));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.field_ ? a.field_ : b.field_);
        const Field& F = a.pick_field(b);
        std::vector<Fq> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        return Poly(a.field_, std::move(out));
    }

    [[nodiscard]] Poly scaled(Fq s) const {
        std::vector<Fq> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = field_->mul(s, c_[i]);
        return Poly(field_, std::move(out));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    [[nodiscard]] const Field& pick_field(const Poly& other) const {
        if (field_ && other.field_ && !field_->same_as(*other.field_))
            throw Error(ErrorKind::CtxMismatch, "polynomials over different fields");
        return field_ ? *field_ : *other.field_;
    }

    FieldPtr field_;
    std::vector<Fq> c_;
};

struct PolyDivision {
    Poly quotient;
    Poly remainder;
};

inline PolyDivision divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
    const Field& F = b.field();
    std::vector<Fq> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) return {Poly(b.field_ptr()), a};
    std::vector<Fq> quot(static_cast<std::size_t>(a.degree() - db + 1));
    const Fq lead_inv = F.inv(b.leading());
    for (int d = a.degree(); d >= db; --d) {
        const Fq c = F.mul(rem[static_cast<std::size_t>(d)], lead_inv);
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(d - db)] = c;
        const Fq neg = F.neg(c);
        for (int i = 0; i <= db; ++i) {
            auto& slot = rem[static_cast<std::size_t>(d - db + i)];
            slot = F.add(slot, F.mul(neg, b[static_cast<std::size_t>(i)]));
        }
    }
    return {Poly(b.field_ptr(), std::move(quot)), Poly(b.field_ptr(), std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

/// Monic gcd (zero when both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

inline Poly powmod(Poly base, std::uint64_t exp, const Poly& m) {
    Poly result = Poly::constant(m.field_ptr(), Field::one()) % m;
    base = base % m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// X^n - lambda
inline Poly x_pow_minus(const FieldPtr& F, std::size_t n, Fq lambda) {
    std::vector<Fq> c(n + 1);
    c[0] = F->neg(lambda);
    c[n] = Field::one();
    if (n == 0) c[0] = F->sub(Field::one(), lambda);
    return Poly(F, std::move(c));
}

/// Rabin's irreducibility test over F_q.
inline bool is_irreducible(const Poly& f) {
    const int d = f.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    const Field& F = f.field();
    const Poly g = f.monic();
    const Poly X = Poly::x(f.field_ptr()) % g;
    std::vector<Poly> frob{X};
    for (int i = 1; i <= d; ++i) frob.push_back(powmod(frob.back(), F.q(), g));
    if (!(frob[static_cast<std::size_t>(d)] == X)) return false;
    for (auto r : detail::prime_factors(static_cast<std::uint64_t>(d))) {
        const Poly h = frob[static_cast<std::size_t>(d) / r] - X;
        if (!gcd(h, g).is_one()) return false;
    }
    return true;
}

struct PolyFactor {
    Poly factor;  // monic irreducible
    unsigned multiplicity = 0;
};

namespace detail {

// p-th root of a polynomial whose exponents are all multiples of p.
inline Poly pth_root(const Poly& f) {
    const Field& F = f.field();
    const std::uint32_t p = F.p();
    const std::uint32_t inv_frob = F.e() - 1;  // c^{1/p} = c^{p^{e-1}}
    std::vector<Fq> out(static_cast<std::size_t>(f.degree()) / p + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = F.frobenius(f[i * p], inv_frob);
    return Poly(f.field_ptr(), std::move(out));
}

inline void square_free(const Poly& f, unsigned scale, std::vector<PolyFactor>& out) {
    if (f.degree() < 1) return;
    const Poly df = f.derivative();
    if (df.is_zero()) {
        square_free(pth_root(f), scale * f.field().p(), out);
        return;
    }
    Poly c = gcd(f, df);
    Poly w = f / c;
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly fac = (w / y).monic();
        if (fac.degree() > 0) out.push_back({fac, i * scale});
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_one() && c.degree() > 0) square_free(pth_root(c.monic()), scale * f.field().p(), out);
}

// Distinct-degree split of a square-free monic f: pairs (product of all
// irreducible factors of degree d, d).
inline std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) {
    const Field& F = f.field();
    std::vector<std::pair<Poly, unsigned>> out;
    Poly rest = f;
    const Poly X = Poly::x(f.field_ptr());
    Poly h = X % rest;
    unsigned d = 1;
    while (rest.degree() >= 2 * static_cast<int>(d)) {
        h = powmod(h, F.q(), rest);
        Poly g = gcd(rest, h - X);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
        ++d;
    }
    if (rest.degree() > 0) out.emplace_back(rest.monic(), static_cast<unsigned>(rest.degree()));
    return out;
}

inline Poly random_poly(const FieldPtr& F, int below_degree, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> pick(0, F->q() - 1);
    std::vector<Fq> c(static_cast<std::size_t>(below_degree));
    for (auto& x : c) x = Fq{pick(rng)};
    return Poly(F, std::move(c));
}

// Splitting polynomial whose gcd with f separates factors of degree d.
inline Poly splitter(const Poly& a, const Poly& f, unsigned d) {
    const Field& F = f.field();
    if (F.p() == 2) {
        // Absolute trace from F_{q^d} to F_2.
        Poly t = a % f;
        Poly acc = t;
        const std::uint64_t steps = static_cast<std::uint64_t>(F.e()) * d;
        for (std::uint64_t i = 1; i < steps; ++i) {
            t = mulmod(t, t, f);
            acc = acc + t;
        }
        return acc;
    }
    // a^{(q^d-1)/2} = (a * a^q * ... * a^{q^{d-1}})^{(q-1)/2}
    Poly conj = a % f;
    Poly norm = conj;
    for (unsigned i = 1; i < d; ++i) {
        conj = powmod(conj, F.q(), f);
        norm = mulmod(norm, conj, f);
    }
    return powmod(norm, (F.q() - 1) / 2, f) - Poly::constant(f.field_ptr(), Field::one());
}

inline void equal_degree(const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    for (;;) {
        const Poly a = random_poly(f.field_ptr(), f.degree(), rng);
        if (a.degree() < 1) continue;
        Poly g = gcd(a, f);
        if (g.degree() < 1 || g.degree() == f.degree()) g = gcd(splitter(a, f, d), f);
        if (g.degree() >= 1 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Factorization into monic irreducibles with multiplicities, sorted in
/// canonical order. The leading coefficient of f is dropped.
/// Square-free, then distinct-degree, then randomized equal-degree splitting.
inline std::vector<PolyFactor> factorize(const Poly& f, std::uint64_t seed = 0) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "cannot factor the zero polynomial");
    std::vector<PolyFactor> sqf;
    detail::square_free(f.monic(), 1, sqf);
    std::mt19937_64 rng(seed);
    std::vector<PolyFactor> out;
    for (const auto& [part, mult] : sqf) {
        for (const auto& [bundle, d] : detail::distinct_degree(part)) {
            std::vector<Poly> irreducibles;
            detail::equal_degree(bundle, d, rng, irreducibles);
            for (auto& g : irreducibles) {
                auto it = std::find_if(out.begin(), out.end(), [&](const PolyFactor& pf) { return pf.factor == g; });
                if (it != out.end())
                    it->multiplicity += mult;
                else
                    out.push_back({std::move(g), mult});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return canonical_less(a.factor, b.factor); });
    return out;
}

}  // namespace gfetf
