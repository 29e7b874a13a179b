#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfetf/conway.hpp"
#include "gfetf/error.hpp"

namespace gfetf {

/// A field element, stored as its packed coefficient vector: the residue
/// a_0 + a_1 x + ... + a_{e-1} x^{e-1} is encoded as a_0 + a_1 p + ... + a_{e-1} p^{e-1}.
/// The value only has meaning relative to a Field.
struct Fq {
    std::uint64_t v = 0;

    constexpr Fq() = default;
    constexpr explicit Fq(std::uint64_t value) : v(value) {}

    [[nodiscard]] constexpr bool is_zero() const noexcept { return v == 0; }
    friend constexpr bool operator==(Fq, Fq) = default;
    friend constexpr auto operator<=>(Fq, Fq) = default;
};

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::vector<std::uint32_t> modulus;  // monic, ascending, degree e

    [[nodiscard]] std::uint64_t q() const noexcept {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) r *= p;
        return r;
    }
    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

enum class ModulusChoice { Conway, Explicit };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Extended Euclid; returns inverse of a modulo m (gcd(a, m) must be 1).
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    if (m == 1) return 0;
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        __int128 quot = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - quot * nt);
        std::tie(r, nr) = std::make_pair(nr, r - quot * nr);
    }
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

// Dense polynomials over the prime field, used only to certify the modulus.
using PrimePoly = std::vector<std::uint64_t>;

inline void trim(PrimePoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& f, std::uint64_t p) {
    trim(a);
    const std::size_t df = f.size() - 1;
    const std::uint64_t lead_inv = powmod_u64(f.back(), p - 2, p);
    while (a.size() > df) {
        const std::uint64_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) a[shift + i] = (a[shift + i] + (p - c) * f[i]) % p;
        trim(a);
    }
    return a;
}

inline PrimePoly prime_poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& f,
                                   std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PrimePoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return prime_poly_mod(std::move(r), f, p);
}

inline PrimePoly prime_poly_powmod(PrimePoly base, std::uint64_t exp, const PrimePoly& f, std::uint64_t p) {
    PrimePoly r{1};
    base = prime_poly_mod(std::move(base), f, p);
    while (exp) {
        if (exp & 1) r = prime_poly_mulmod(r, base, f, p);
        base = prime_poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return r;
}

inline PrimePoly prime_poly_gcd(PrimePoly a, PrimePoly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = prime_poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f of degree e is irreducible iff x^{p^e} = x mod f and
// gcd(x^{p^{e/r}} - x, f) = 1 for every prime r dividing e.
inline bool is_irreducible_over_prime(const PrimePoly& f, std::uint64_t p) {
    const std::size_t e = f.size() - 1;
    if (e == 0) return false;
    if (e == 1) return true;
    std::vector<PrimePoly> frob(e + 1);
    frob[0] = prime_poly_mod({0, 1}, f, p);
    for (std::size_t i = 1; i <= e; ++i) frob[i] = prime_poly_powmod(frob[i - 1], p, f, p);
    if (frob[e] != frob[0]) return false;
    for (auto r : prime_factors(e)) {
        PrimePoly h = frob[e / r];
        h.resize(std::max<std::size_t>(h.size(), 2), 0);
        h[1] = (h[1] + p - 1) % p;
        trim(h);
        if (h.empty()) return false;
        if (prime_poly_gcd(h, f, p).size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/// The ambient field F_q, q = p^e, realised as F_p[x]/(modulus) with a fixed
/// primitive element zeta. Immutable after construction.
class Field {
public:
    /// Fields up to this size carry full exp/log tables; larger ones fall back
    /// to residue-polynomial arithmetic and baby-step/giant-step logarithms.
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

    static FieldPtr make(std::uint32_t p, std::uint32_t e) { return make(p, e, ModulusChoice::Conway, {}); }

    static FieldPtr make(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus) {
        return make(p, e, ModulusChoice::Explicit, std::move(modulus));
    }

    static FieldPtr make(std::uint32_t p, std::uint32_t e, ModulusChoice choice,
                         std::vector<std::uint32_t> modulus) {
        if (!detail::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
        if (e < 1) throw Error(ErrorKind::InvalidArgument, "extension degree must be at least 1");
        {
            unsigned __int128 q = 1;
            for (std::uint32_t i = 0; i < e; ++i) {
                q *= p;
                if (q > (static_cast<unsigned __int128>(1) << 62))
                    throw Error(ErrorKind::InvalidArgument, "field size exceeds 2^62");
            }
        }
        if (choice == ModulusChoice::Conway) {
            auto c = conway_polynomial(p, e);
            if (!c)
                throw Error(ErrorKind::ConwayTableMiss,
                            "no Conway polynomial bundled for p=" + std::to_string(p) + " e=" + std::to_string(e));
            modulus = std::move(*c);
        }
        if (modulus.size() != e + 1 || modulus.back() != 1)
            throw Error(ErrorKind::InvalidArgument, "modulus must be monic of degree " + std::to_string(e));
        for (auto c : modulus)
            if (c >= p) throw Error(ErrorKind::InvalidArgument, "modulus coefficient out of range");
        detail::PrimePoly f(modulus.begin(), modulus.end());
        if (!detail::is_irreducible_over_prime(f, p))
            throw Error(ErrorKind::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
        return FieldPtr(new Field(FieldSpec{p, e, std::move(modulus)}));
    }

    [[nodiscard]] const FieldSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] std::uint32_t p() const noexcept { return spec_.p; }
    [[nodiscard]] std::uint32_t e() const noexcept { return spec_.e; }
    [[nodiscard]] std::uint64_t q() const noexcept { return q_; }
    [[nodiscard]] Fq zeta() const noexcept { return zeta_; }
    [[nodiscard]] bool has_log_table() const noexcept { return !log_.empty(); }
    [[nodiscard]] bool same_as(const Field& other) const noexcept { return this == &other || spec_ == other.spec_; }

    [[nodiscard]] static constexpr Fq zero() noexcept { return Fq{0}; }
    [[nodiscard]] static constexpr Fq one() noexcept { return Fq{1}; }

    [[nodiscard]] bool contains(Fq x) const noexcept { return x.v < q_; }

    /// Image of an integer under Z -> F_p -> F_q.
    [[nodiscard]] Fq scalar(std::int64_t n) const noexcept {
        const auto p = static_cast<std::int64_t>(spec_.p);
        return Fq{static_cast<std::uint64_t>(((n % p) + p) % p)};
    }

    [[nodiscard]] std::vector<std::uint32_t> coeffs(Fq x) const {
        std::vector<std::uint32_t> out(spec_.e);
        for (auto& c : out) {
            c = static_cast<std::uint32_t>(x.v % spec_.p);
            x.v /= spec_.p;
        }
        return out;
    }

    [[nodiscard]] Fq from_coeffs(std::span<const std::uint32_t> c) const {
        if (c.size() > spec_.e) throw Error(ErrorKind::InvalidArgument, "too many coefficients");
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) {
            if (c[i] >= spec_.p) throw Error(ErrorKind::InvalidArgument, "coefficient out of range");
            v = v * spec_.p + c[i];
        }
        return Fq{v};
    }

    [[nodiscard]] Fq add(Fq a, Fq b) const noexcept {
        if (spec_.p == 2) return Fq{a.v ^ b.v};
        if (spec_.e == 1) return Fq{(a.v + b.v) % spec_.p};
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < spec_.e; ++i) {
            std::uint64_t d = a.v % spec_.p + b.v % spec_.p;
            if (d >= spec_.p) d -= spec_.p;
            r += d * pow_p_[i];
            a.v /= spec_.p;
            b.v /= spec_.p;
        }
        return Fq{r};
    }

    [[nodiscard]] Fq neg(Fq a) const noexcept {
        if (spec_.p == 2) return a;
        if (spec_.e == 1) return Fq{a.v == 0 ? 0 : spec_.p - a.v};
        std::uint64_t r = 0;
        for (std::uint32_t i = 0; i < spec_.e; ++i) {
            const std::uint64_t d = a.v % spec_.p;
            r += (d == 0 ? 0 : spec_.p - d) * pow_p_[i];
            a.v /= spec_.p;
        }
        return Fq{r};
    }

    [[nodiscard]] Fq sub(Fq a, Fq b) const noexcept { return add(a, neg(b)); }

    [[nodiscard]] Fq mul(Fq a, Fq b) const {
        if (a.v == 0 || b.v == 0) return zero();
        if (!log_.empty()) return exp_[log_[a.v] + log_[b.v]];
        return mul_residue(a, b);
    }

    [[nodiscard]] Fq inv(Fq a) const {
        if (a.v == 0) throw Error(ErrorKind::ZeroElement, "inverse of zero");
        if (!log_.empty()) return exp_[(q_ - 1 - log_[a.v]) % (q_ - 1)];
        return pow(a, q_ - 2);
    }

    [[nodiscard]] Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }

    [[nodiscard]] Fq pow(Fq a, std::uint64_t k) const {
        if (k == 0) return one();
        if (a.v == 0) return zero();
        if (!log_.empty()) return exp_[detail::mulmod_u64(log_[a.v], k % (q_ - 1), q_ - 1)];
        Fq r = one();
        while (k) {
            if (k & 1) r = mul_residue(r, a);
            a = mul_residue(a, a);
            k >>= 1;
        }
        return r;
    }

    /// zeta^k for any integer k (negative exponents allowed).
    [[nodiscard]] Fq zeta_pow(std::int64_t k) const {
        const auto n = static_cast<std::int64_t>(q_ - 1);
        const auto r = static_cast<std::uint64_t>(((k % n) + n) % n);
        if (!exp_.empty()) return exp_[r];
        return pow(zeta_, r);
    }

    /// p^l, the exponent of sigma_l.
    [[nodiscard]] std::uint64_t frobenius_power(std::uint32_t ell) const {
        check_ell(ell);
        return pow_p_[ell % spec_.e];
    }

    /// sigma_l(x) = x^{p^l}; l = e is accepted and acts as the identity.
    [[nodiscard]] Fq frobenius(Fq x, std::uint32_t ell) const {
        check_ell(ell);
        const std::uint32_t l = ell % spec_.e;
        if (l == 0 || x.v == 0) return x;
        if (!log_.empty()) return exp_[detail::mulmod_u64(log_[x.v], pow_p_[l], q_ - 1)];
        return pow(x, pow_p_[l]);
    }

    /// Reduces an arbitrary integer exponent index to the canonical range [0, e).
    [[nodiscard]] std::uint32_t normalize_ell(std::int64_t ell) const noexcept {
        const auto e = static_cast<std::int64_t>(spec_.e);
        return static_cast<std::uint32_t>(((ell % e) + e) % e);
    }

    void check_ell(std::uint32_t ell) const {
        if (ell > spec_.e)
            throw Error(ErrorKind::EllOutOfRange,
                        "ell=" + std::to_string(ell) + " outside [0, " + std::to_string(spec_.e) + "]");
    }

    /// Unique k in [0, q-1) with zeta^k = x.
    [[nodiscard]] std::uint64_t discrete_log(Fq x) const {
        if (x.v == 0) throw Error(ErrorKind::ZeroElement, "discrete log of zero");
        if (!log_.empty()) return log_[x.v];
        return bsgs_log(x);
    }

    /// Multiplicative order of a nonzero element.
    [[nodiscard]] std::uint64_t element_order(Fq x) const {
        if (x.v == 0) throw Error(ErrorKind::ZeroElement, "order of zero");
        const std::uint64_t n = q_ - 1;
        if (!log_.empty()) return n / std::gcd(log_[x.v], n);
        std::uint64_t order = n;
        for (auto r : group_primes_)
            while (order % r == 0 && pow(x, order / r) == one()) order /= r;
        return order;
    }

    /// Membership in the norm set F_q^{(p^l+1)} = { y^{p^l+1} : y in F_q }.
    /// Returns a witness y with y^{p^l+1} = a, or nullopt when a is not a norm.
    [[nodiscard]] std::optional<Fq> galois_norm_witness(Fq a, std::uint32_t ell) const {
        check_ell(ell);
        if (a.v == 0) return zero();
        const std::uint64_t n = q_ - 1;
        const std::uint64_t m = (frobenius_power(ell) + 1) % n;
        const std::uint64_t g = std::gcd(m, n);
        const std::uint64_t L = discrete_log(a);
        if (L % g != 0) return std::nullopt;
        const std::uint64_t n_red = n / g;
        const std::uint64_t y = n_red == 1 ? 0 : detail::mulmod_u64((L / g) % n_red, detail::inverse_mod((m / g) % n_red, n_red), n_red);
        return zeta_pow(static_cast<std::int64_t>(y));
    }

    [[nodiscard]] bool is_galois_norm(Fq a, std::uint32_t ell) const { return galois_norm_witness(a, ell).has_value(); }

    /// Enumerates every element, zero first, then by integer encoding.
    [[nodiscard]] std::vector<Fq> elements() const {
        std::vector<Fq> out(q_);
        for (std::uint64_t i = 0; i < q_; ++i) out[i] = Fq{i};
        return out;
    }

    /// Elements in discrete-log order: 0, zeta^0, zeta^1, ..., zeta^{q-2}.
    [[nodiscard]] std::vector<Fq> elements_by_log() const {
        std::vector<Fq> out;
        out.reserve(q_);
        out.push_back(zero());
        for (std::uint64_t k = 0; k + 1 < q_; ++k) out.push_back(zeta_pow(static_cast<std::int64_t>(k)));
        return out;
    }

    /// Canonical token: "0" or "z^k".
    [[nodiscard]] std::string format(Fq x) const {
        if (x.v == 0) return "0";
        return "z^" + std::to_string(discrete_log(x));
    }

    /// Accepts "0", "z", "z^k" (k may be negative) or the integer encoding.
    [[nodiscard]] Fq parse(std::string_view token) const {
        auto trimmed = token;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
        while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
        if (trimmed.empty()) throw Error(ErrorKind::Parse, "empty element token");
        if (trimmed.front() == 'z' || trimmed.front() == 'Z') {
            if (trimmed.size() == 1) return zeta_pow(1);
            if (trimmed[1] != '^' || trimmed.size() < 3)
                throw Error(ErrorKind::Parse, "bad element token '" + std::string(token) + "'");
            return zeta_pow(parse_int(trimmed.substr(2), token));
        }
        const std::int64_t v = parse_int(trimmed, token);
        if (v < 0 || static_cast<std::uint64_t>(v) >= q_)
            throw Error(ErrorKind::Parse, "element encoding out of range: '" + std::string(token) + "'");
        return Fq{static_cast<std::uint64_t>(v)};
    }

private:
    explicit Field(FieldSpec spec) : spec_(std::move(spec)) {
        q_ = spec_.q();
        pow_p_.resize(spec_.e + 1);
        pow_p_[0] = 1;
        for (std::uint32_t i = 1; i <= spec_.e; ++i) pow_p_[i] = pow_p_[i - 1] * spec_.p;
        group_primes_ = q_ > 2 ? detail::prime_factors(q_ - 1) : std::vector<std::uint64_t>{};
        zeta_ = find_primitive();
        if (q_ <= kTableLimit) build_tables();
    }

    static std::int64_t parse_int(std::string_view s, std::string_view token) {
        std::size_t i = 0;
        bool negative = false;
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
            negative = s[0] == '-';
            i = 1;
        }
        if (i >= s.size()) throw Error(ErrorKind::Parse, "bad element token '" + std::string(token) + "'");
        std::int64_t v = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::Parse, "bad element token '" + std::string(token) + "'");
            v = v * 10 + (s[i] - '0');
            if (v > (std::int64_t{1} << 62)) throw Error(ErrorKind::Parse, "element token too large");
        }
        return negative ? -v : v;
    }

    // Schoolbook product of residues followed by reduction modulo the modulus.
    [[nodiscard]] Fq mul_residue(Fq a, Fq b) const {
        const std::uint32_t e = spec_.e;
        const std::uint64_t p = spec_.p;
        const auto ca = coeffs(a);
        const auto cb = coeffs(b);
        std::vector<std::uint64_t> r(2 * e - 1, 0);
        for (std::uint32_t i = 0; i < e; ++i) {
            if (ca[i] == 0) continue;
            for (std::uint32_t j = 0; j < e; ++j) r[i + j] = (r[i + j] + std::uint64_t{ca[i]} * cb[j]) % p;
        }
        for (std::size_t d = r.size(); d-- > e;) {
            const std::uint64_t c = r[d];
            if (c == 0) continue;
            for (std::uint32_t i = 0; i < e; ++i) r[d - e + i] = (r[d - e + i] + (p - c) * spec_.modulus[i]) % p;
            r[d] = 0;
        }
        std::uint64_t v = 0;
        for (std::uint32_t i = e; i-- > 0;) v = v * p + r[i];
        return Fq{v};
    }

    [[nodiscard]] bool is_primitive_slow(Fq x) const {
        if (x.v == 0) return false;
        for (auto r : group_primes_)
            if (pow(x, (q_ - 1) / r) == one()) return false;
        return true;
    }

    [[nodiscard]] Fq find_primitive() const {
        if (q_ == 2) return one();
        // The class of x; for e = 1 it is the root -c_0 of the linear modulus.
        const Fq x = spec_.e == 1 ? Fq{(spec_.p - spec_.modulus[0]) % spec_.p} : Fq{spec_.p};
        if (is_primitive_slow(x)) return x;
        for (std::uint64_t v = 2; v < q_; ++v)
            if (is_primitive_slow(Fq{v})) return Fq{v};
        throw Error(ErrorKind::NoPrimitiveFound, "no primitive element found");
    }

    void build_tables() {
        const std::uint64_t n = q_ - 1;
        exp_.resize(2 * n);
        log_.assign(q_, 0);
        Fq cur = one();
        for (std::uint64_t k = 0; k < n; ++k) {
            exp_[k] = cur;
            exp_[k + n] = cur;
            log_[cur.v] = k;
            cur = mul_residue(cur, zeta_);
        }
    }

    [[nodiscard]] std::uint64_t bsgs_log(Fq x) const {
        const std::uint64_t n = q_ - 1;
        std::uint64_t m = 1;
        while (m * m < n) ++m;
        std::unordered_map<std::uint64_t, std::uint64_t> baby;
        baby.reserve(m * 2);
        Fq cur = one();
        for (std::uint64_t j = 0; j < m; ++j) {
            baby.emplace(cur.v, j);
            cur = mul_residue(cur, zeta_);
        }
        const Fq giant = pow(inv(zeta_), m);
        Fq gamma = x;
        for (std::uint64_t i = 0; i <= m; ++i) {
            if (auto it = baby.find(gamma.v); it != baby.end()) return (i * m + it->second) % n;
            gamma = mul_residue(gamma, giant);
        }
        throw Error(ErrorKind::NoPrimitiveFound, "discrete log failed; zeta is not primitive");
    }

    FieldSpec spec_;
    std::uint64_t q_ = 0;
    Fq zeta_;
    std::vector<std::uint64_t> pow_p_;
    std::vector<std::uint64_t> group_primes_;
    std::vector<Fq> exp_;
    std::vector<std::uint64_t> log_;
};

}  // namespace gfetf
