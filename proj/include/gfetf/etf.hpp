#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "gfetf/code.hpp"
#include "gfetf/frame.hpp"

namespace gfetf {

struct RstTriple {
    Fq r, s, t;
    friend bool operator==(const RstTriple&, const RstTriple&) = default;
};

/// Zero-pattern classes of (r, s, t).
enum class EtfCase { I, II, III, IV, V, VI };

constexpr std::string_view to_string(EtfCase c) noexcept {
    switch (c) {
        case EtfCase::I: return "i";
        case EtfCase::II: return "ii";
        case EtfCase::III: return "iii";
        case EtfCase::IV: return "iv";
        case EtfCase::V: return "v";
        case EtfCase::VI: return "vi";
    }
    return "?";
}

/// Nullopt for the two patterns that never give an ETF: r = s = t = 0 and
/// r = s = 0, t != 0 (rank one).
inline std::optional<EtfCase> case_of(const RstTriple& x) {
    const bool r = !x.r.is_zero(), s = !x.s.is_zero(), t = !x.t.is_zero();
    if (!r && !s) return std::nullopt;
    if (r && !s && !t) return EtfCase::I;
    if (!r && s && !t) return EtfCase::II;
    if (!r && s && t) return EtfCase::III;
    if (r && !s && t) return EtfCase::IV;
    if (r && s && !t) return EtfCase::V;
    return EtfCase::VI;
}

struct CaseWitness {
    EtfCase label = EtfCase::I;
    std::optional<Fq> theta;  // common row sum of A, case iv
    std::optional<Fq> alpha;  // common diagonal term, case v
    std::optional<Fq> delta;  // common diagonal term, case vi
    Fq predicted_a;
};

struct EtfCertificate {
    Matrix m;
    RstTriple triple;
    std::uint32_t ell = 0;
    Matrix gram;
    EtfParams params;  // (a, 0, a)
    std::optional<EtfCase> label;
    std::optional<CaseWitness> witness;  // filled when verify_case also accepts
    Fq norm_witness;                     // y with y^{p^l+1} = a
};

/// M = rA + sI + tJ.
inline Matrix build_m(const Matrix& a, const RstTriple& x) {
    if (!a.is_square()) throw Error(ErrorKind::NotSquare, "A must be square");
    const Field& F = a.field();
    Matrix m(a.field_ptr(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Fq v = F.add(F.mul(x.r, a(i, j)), x.t);
            if (i == j) v = F.add(v, x.s);
            m(i, j) = v;
        }
    return m;
}

struct SelfDualSetup {
    Matrix a;                       // the n x n block of [I|A]
    std::vector<std::size_t> perm;  // column permutation that produced [I|A]
};

/// Extracts A from an l-Galois self-dual [2n, n] code and checks A A^dagger = -I.
inline SelfDualSetup check_self_dual_setup(const LinearCode& code, std::uint32_t ell) {
    if (code.length() != 2 * code.dimension() || code.dimension() == 0)
        throw Error(ErrorKind::NotHalfRate, "code is not a [2n, n] code");
    const HullReport h = hull_dim(code, ell);
    if (h.classification != HullClass::SelfDual)
        throw Error(ErrorKind::NotSelfDual, "hull dimension " + std::to_string(h.hull_dim) + " of " +
                                                std::to_string(code.dimension()));
    SystematicForm sf = systematic_form(code);
    const FieldPtr& F = code.field_ptr();
    const std::size_t n = code.dimension();
    if (sf.a * dagger(sf.a, ell) + Matrix::identity(F, n) != Matrix(F, n, n))
        throw Error(ErrorKind::NotSelfDual, "A A^dagger differs from -I");
    return {std::move(sf.a), std::move(sf.perm)};
}

namespace detail {

inline void require_etf_size(const Matrix& a) {
    if (!a.is_square()) throw Error(ErrorKind::NotSquare, "A must be square");
    if (a.rows() < 2) throw Error(ErrorKind::InvalidArgument, "the construction needs n > 1");
}

}  // namespace detail

/// Outcome of the case analysis; rejection is an ordinary result here.
struct CaseOutcome {
    std::optional<CaseWitness> witness;
    ErrorKind reason = ErrorKind::ConditionFailed;
    std::string failed;  // description of the first failing condition

    [[nodiscard]] bool accepted() const noexcept { return witness.has_value(); }
};

/// Evaluates the case conditions for the zero pattern of (r, s, t) without
/// forming M M^dagger. A must satisfy A A^dagger = -I.
inline CaseOutcome verify_case(const Matrix& a, const RstTriple& x, std::uint32_t ell) {
    detail::require_etf_size(a);
    const Field& F = a.field();
    F.check_ell(ell);
    const std::size_t n = a.rows();
    auto sg = [&](Fq v) { return F.frobenius(v, ell); };
    const Fq r = x.r, s = x.s, t = x.t;
    const Fq r1 = sg(r), s1 = sg(s), t1 = sg(t);
    const Fq rr = F.mul(r, r1), ss = F.mul(s, s1), tt = F.mul(t, t1);
    const Fq nf = F.scalar(static_cast<std::int64_t>(n));
    // st' + ts' + n tt', the constant added to every entry by the J terms
    const Fq kappa = F.add(F.add(F.mul(s, t1), F.mul(t, s1)), F.mul(nf, tt));

    std::vector<Fq> rowsum(n, Field::zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rowsum[i] = F.add(rowsum[i], a(i, j));

    CaseOutcome out;
    auto reject = [&](std::string why) {
        out.failed = std::move(why);
        return out;
    };
    auto finish = [&](CaseWitness w) {
        if (w.predicted_a.is_zero()) {
            out.reason = ErrorKind::ZeroA;
            return reject("a = 0");
        }
        if (!F.is_galois_norm(w.predicted_a, ell)) {
            out.reason = ErrorKind::NotANorm;
            return reject("a is not a (p^l+1)-norm");
        }
        out.witness = w;
        return out;
    };

    const auto label = case_of(x);
    if (!label) {
        out.reason = ErrorKind::DegenerateTriple;
        return reject(x.t.is_zero() ? "r = s = t = 0" : "r = s = 0 gives rank one");
    }
    CaseWitness w;
    w.label = *label;
    switch (*label) {
        case EtfCase::I:
            w.predicted_a = F.neg(rr);
            return finish(w);
        case EtfCase::II:
            w.predicted_a = ss;
            return finish(w);
        case EtfCase::III:
            if (!kappa.is_zero()) return reject("st' + ts' + n tt' != 0");
            w.predicted_a = ss;
            return finish(w);
        case EtfCase::IV: {
            for (std::size_t i = 1; i < n; ++i)
                if (rowsum[i] != rowsum[0]) return reject("row sums of A are not constant");
            const Fq theta = rowsum[0];
            const Fq cond = F.add(F.add(F.mul(F.mul(r, t1), theta), F.mul(F.mul(t, r1), sg(theta))), F.mul(nf, tt));
            if (!cond.is_zero()) return reject("r t' theta + t r' theta' + n tt' != 0");
            w.theta = theta;
            w.predicted_a = F.neg(rr);
            return finish(w);
        }
        case EtfCase::V: {
            auto off = [&](std::size_t i, std::size_t j) {
                return F.add(F.mul(F.mul(r, s1), a(i, j)), F.mul(F.mul(s, r1), sg(a(j, i))));
            };
            const Fq alpha = off(0, 0);
            for (std::size_t i = 1; i < n; ++i)
                if (off(i, i) != alpha) return reject("r s' a_ii + s r' a_ii' is not constant");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!F.mul(off(i, j), off(j, i)).is_zero())
                        return reject("off-diagonal product at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            w.alpha = alpha;
            w.predicted_a = F.add(F.sub(ss, rr), alpha);
            return finish(w);
        }
        case EtfCase::VI: {
            auto entry = [&](std::size_t i, std::size_t j) {
                Fq v = F.add(F.mul(F.mul(r, s1), a(i, j)), F.mul(F.mul(s, r1), sg(a(j, i))));
                v = F.add(v, F.mul(F.mul(r, t1), rowsum[i]));
                return F.add(v, F.mul(F.mul(t, r1), sg(rowsum[j])));
            };
            const Fq delta = entry(0, 0);
            for (std::size_t i = 1; i < n; ++i)
                if (entry(i, i) != delta) return reject("diagonal term delta is not constant");
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const bool first = F.add(entry(i, j), kappa).is_zero();
                    const bool second = F.add(entry(j, i), kappa).is_zero();
                    if (!first && !second)
                        return reject("neither off-diagonal alternative vanishes at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
                }
            w.delta = delta;
            w.predicted_a = F.add(F.add(F.sub(ss, rr), kappa), delta);
            return finish(w);
        }
    }
    return reject("unreachable");
}

/// Outcome of the direct Gram computation.
struct OracleOutcome {
    std::optional<EtfCertificate> certificate;
    ErrorKind reason = ErrorKind::NotScalar;
    Matrix gram;

    [[nodiscard]] bool accepted() const noexcept { return certificate.has_value(); }
};

/// Ground truth: G = M M^dagger must equal aI with a a nonzero (p^l+1)-norm.
inline OracleOutcome gram_oracle(const Matrix& a, const RstTriple& x, std::uint32_t ell) {
    detail::require_etf_size(a);
    const Field& F = a.field();
    F.check_ell(ell);
    Matrix m = build_m(a, x);
    Matrix g = m * dagger(m, ell);
    OracleOutcome out{std::nullopt, ErrorKind::NotScalar, g};
    const auto av = scalar_value(g);
    if (!av) return out;
    if (av->is_zero()) {
        out.reason = ErrorKind::ZeroA;
        return out;
    }
    const auto y = F.galois_norm_witness(*av, ell);
    if (!y) {
        out.reason = ErrorKind::NotANorm;
        return out;
    }
    out.certificate = EtfCertificate{std::move(m), x, ell, std::move(g), EtfParams{*av, Field::zero(), *av},
                                     case_of(x), std::nullopt, *y};
    return out;
}

/// Both checks together: the oracle decides, the case analysis annotates.
inline OracleOutcome certify(const Matrix& a, const RstTriple& x, std::uint32_t ell) {
    OracleOutcome out = gram_oracle(a, x, ell);
    if (out.certificate) {
        const CaseOutcome c = verify_case(a, x, ell);
        if (c.accepted() && c.witness->predicted_a == out.certificate->params.a) out.certificate->witness = c.witness;
    }
    return out;
}

struct SearchOptions {
    bool exclude_trivial = false;  // r != 0 and at least two nonzero parameters
    unsigned workers = 1;
};

namespace detail {

/// Coefficient matrices of the expansion
/// G = rr' AA^dagger + rs' A + sr' A^dagger + rt' AJ + tr' JA^dagger + ss' I + (st' + ts' + n tt') J.
struct GramExpansion {
    const Field* F;
    std::size_t n;
    std::uint32_t ell;
    Matrix aad, a, ad, aj, jad;

    GramExpansion(const Matrix& A, std::uint32_t l)
        : F(&A.field()), n(A.rows()), ell(l), aad(A * dagger(A, l)), a(A), ad(dagger(A, l)),
          aj(A * Matrix::ones(A.field_ptr(), n, n)), jad(Matrix::ones(A.field_ptr(), n, n) * dagger(A, l)) {}

    /// a when G = aI with a != 0, computed entry by entry with early exit.
    [[nodiscard]] std::optional<Fq> scalar_gram(const RstTriple& x) const {
        const Field& f = *F;
        const Fq r1 = f.frobenius(x.r, ell), s1 = f.frobenius(x.s, ell), t1 = f.frobenius(x.t, ell);
        const Fq c_aad = f.mul(x.r, r1), c_a = f.mul(x.r, s1), c_ad = f.mul(x.s, r1);
        const Fq c_aj = f.mul(x.r, t1), c_jad = f.mul(x.t, r1), c_i = f.mul(x.s, s1);
        const Fq c_j = f.add(f.add(f.mul(x.s, t1), f.mul(x.t, s1)),
                             f.mul(f.scalar(static_cast<std::int64_t>(n)), f.mul(x.t, t1)));
        auto entry = [&](std::size_t i, std::size_t j) {
            Fq v = f.add(f.mul(c_aad, aad(i, j)), f.mul(c_a, a(i, j)));
            v = f.add(v, f.mul(c_ad, ad(i, j)));
            v = f.add(v, f.mul(c_aj, aj(i, j)));
            v = f.add(v, f.mul(c_jad, jad(i, j)));
            v = f.add(v, c_j);
            return i == j ? f.add(v, c_i) : v;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && !entry(i, j).is_zero()) return std::nullopt;
        const Fq d = entry(0, 0);
        if (d.is_zero()) return std::nullopt;
        for (std::size_t i = 1; i < n; ++i)
            if (entry(i, i) != d) return std::nullopt;
        return d;
    }
};

inline std::uint64_t log_key(const Field& F, Fq x) { return x.is_zero() ? 0 : 1 + F.discrete_log(x); }

}  // namespace detail

/// All triples whose Gram matrix is aI with a a nonzero (p^l+1)-norm, sorted
/// lexicographically by (log r, log s, log t) with 0 before every power of zeta.
///
/// If (r, s, t) works with value a then so does (ur, us, ut) with value
/// a u^{p^l+1}, so the search runs over triples whose first nonzero entry is 1
/// and then expands each hit by all nonzero multipliers.
inline std::vector<EtfCertificate> search_rst(const Matrix& a, std::uint32_t ell, SearchOptions opts = {}) {
    detail::require_etf_size(a);
    const Field& F = a.field();
    F.check_ell(ell);
    const detail::GramExpansion ex(a, ell);
    const auto elems = F.elements();
    const std::uint64_t q = F.q();

    // Normalized triples: (1, s, t), (0, 1, t), (0, 0, 1); the last never qualifies.
    auto keep = [&](const RstTriple& x) {
        if (!opts.exclude_trivial) return true;
        const int nonzero = !x.r.is_zero() + !x.s.is_zero() + !x.t.is_zero();
        return !x.r.is_zero() && nonzero >= 2;
    };
    const std::uint64_t rows = q + 1;  // s index for r = 1 (q values) and one block for r = 0, s = 1
    auto normalized = [&](std::uint64_t block, std::uint64_t ti) {
        if (block < q) return RstTriple{Field::one(), elems[block], elems[ti]};
        return RstTriple{Field::zero(), Field::one(), elems[ti]};
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(rows)));
    std::vector<std::vector<RstTriple>> hits(workers);
    auto run = [&](unsigned w) {
        for (std::uint64_t block = w; block < rows; block += workers)
            for (std::uint64_t ti = 0; ti < q; ++ti) {
                const RstTriple x = normalized(block, ti);
                if (!ex.scalar_gram(x)) continue;
                for (std::uint64_t ui = 1; ui < q; ++ui) {
                    const Fq u = elems[ui];
                    const RstTriple y{F.mul(u, x.r), F.mul(u, x.s), F.mul(u, x.t)};
                    if (keep(y)) hits[w].push_back(y);
                }
            }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }

    std::vector<RstTriple> all;
    for (auto& h : hits) all.insert(all.end(), h.begin(), h.end());
    auto key = [&](const RstTriple& x) {
        return std::tuple{detail::log_key(F, x.r), detail::log_key(F, x.s), detail::log_key(F, x.t)};
    };
    std::sort(all.begin(), all.end(), [&](const RstTriple& l, const RstTriple& r) { return key(l) < key(r); });

    std::vector<EtfCertificate> out;
    out.reserve(all.size());
    for (const auto& x : all) {
        OracleOutcome o = certify(a, x, ell);
        if (o.certificate) out.push_back(std::move(*o.certificate));
    }
    return out;
}

struct EtfCode {
    LinearCode code;
    HullReport hull;
};

/// The code generated by [I | M]: self-dual when a = -1 and LCD otherwise.
inline EtfCode etf_to_code(const EtfCertificate& cert) {
    const Matrix& m = cert.m;
    if (m.rows() < 2) throw Error(ErrorKind::InvalidArgument, "the construction needs n > 1");
    const FieldPtr& F = m.field_ptr();
    LinearCode code(hstack(Matrix::identity(F, m.rows()), m));
    HullReport h = hull_dim(code, cert.ell);
    const bool minus_one = cert.params.a == F->neg(Field::one());
    const HullClass expected = minus_one ? HullClass::SelfDual : HullClass::Lcd;
    if (h.classification != expected)
        throw Error(ErrorKind::ConditionFailed, "[I|M] classifies as " + std::string(to_string(h.classification)) +
                                                    ", expected " + std::string(to_string(expected)));
    return {std::move(code), h};
}

}  // namespace gfetf
