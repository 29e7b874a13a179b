#pragma once

#include <optional>
#include <span>

#include "gfetf/matrix.hpp"

namespace gfetf {

/// (x, y)_l = sum_i sigma_l(x_i) y_i.
inline Fq sesq_form(const Field& F, std::span<const Fq> x, std::span<const Fq> y, std::uint32_t ell) {
    if (x.size() != y.size()) throw Error(ErrorKind::DimMismatch, "vectors of different length");
    F.check_ell(ell);
    Fq acc = Field::zero();
    for (std::size_t i = 0; i < x.size(); ++i) acc = F.add(acc, F.mul(F.frobenius(x[i], ell), y[i]));
    return acc;
}

/// A finite sequence of vectors in F_q^n, stored as the columns of an n x m matrix.
class FrameSystem {
public:
    FrameSystem(Matrix phi, std::uint32_t ell) : phi_(std::move(phi)), ell_(ell) {
        if (phi_.cols() == 0) throw Error(ErrorKind::InvalidArgument, "a frame system needs at least one vector");
        phi_.field().check_ell(ell_);
    }

    [[nodiscard]] const Matrix& phi() const noexcept { return phi_; }
    [[nodiscard]] std::uint32_t ell() const noexcept { return ell_; }
    [[nodiscard]] const Field& field() const noexcept { return phi_.field(); }
    [[nodiscard]] std::size_t dim() const noexcept { return phi_.rows(); }
    [[nodiscard]] std::size_t size() const noexcept { return phi_.cols(); }
    [[nodiscard]] FqVector vec(std::size_t i) const { return phi_.column(i); }

    /// The same vectors under a different Galois parameter.
    [[nodiscard]] FrameSystem with_ell(std::uint32_t ell) const { return {phi_, ell}; }

private:
    Matrix phi_;
    std::uint32_t ell_;
};

inline FqVector synthesis(const FrameSystem& fs, std::span<const Fq> x) {
    if (x.size() != fs.size()) throw Error(ErrorKind::DimMismatch, "synthesis input must have one entry per vector");
    return mat_vec(fs.phi(), x);
}

inline FqVector analysis(const FrameSystem& fs, std::span<const Fq> y) {
    if (y.size() != fs.dim()) throw Error(ErrorKind::DimMismatch, "analysis input must lie in the ambient space");
    return mat_vec(dagger(fs.phi(), fs.ell()), y);
}

/// Phi Phi^dagger, n x n.
inline Matrix frame_operator(const FrameSystem& fs) { return fs.phi() * dagger(fs.phi(), fs.ell()); }

/// Entry (i, j) is (phi_i, phi_j)_l, m x m.
inline Matrix gramian(const FrameSystem& fs) { return dagger(fs.phi(), fs.ell()) * fs.phi(); }

struct EtfParams {
    Fq a, b, c;
    friend bool operator==(const EtfParams&, const EtfParams&) = default;
};

struct FrameClassification {
    bool is_frame = false;
    std::optional<Fq> tight_c;
    bool degenerate_tight = false;  // tight with c = 0
    std::optional<Fq> equal_norm_a;
    std::optional<Fq> equiangular_b;
    std::optional<EtfParams> etf;
};

inline FrameClassification classify(const FrameSystem& fs) {
    const Field& F = fs.field();
    FrameClassification out;
    out.is_frame = rank(fs.phi()) == fs.dim();
    out.tight_c = scalar_value(frame_operator(fs));
    out.degenerate_tight = out.tight_c && out.tight_c->is_zero();

    const Matrix G = gramian(fs);
    const std::size_t m = fs.size();
    out.equal_norm_a = G(0, 0);
    for (std::size_t i = 1; i < m && out.equal_norm_a; ++i)
        if (G(i, i) != *out.equal_norm_a) out.equal_norm_a.reset();

    // With a single vector there are no pairs; b = 0 is taken vacuously.
    out.equiangular_b = m == 1 ? Field::zero() : F.mul(G(0, 1), G(1, 0));
    for (std::size_t i = 0; i < m && out.equiangular_b; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            if (F.mul(G(i, j), G(j, i)) != *out.equiangular_b) {
                out.equiangular_b.reset();
                break;
            }
        }

    if (out.is_frame && out.tight_c && out.equal_norm_a && out.equiangular_b)
        out.etf = EtfParams{*out.equal_norm_a, *out.equiangular_b, *out.tight_c};
    return out;
}

struct GramEquivalenceReport {
    bool frame_operator_scalar = false;  // Phi Phi^dagger = cI
    bool gram_quadratic = false;         // G^2 = cG
    bool adjoint_identity = false;       // (Phi^{dagger_{e-l}} x, Phi^{dagger_l} y)_l = c (x, y)_l

    [[nodiscard]] bool agree() const noexcept {
        return frame_operator_scalar == gram_quadratic && gram_quadratic == adjoint_identity;
    }
};

/// Evaluates the three tightness characterizations independently. The third
/// is checked on the n^2 pairs of standard basis vectors (x, y) = (e_i, e_j).
inline GramEquivalenceReport verify_gram_equivalences(const FrameSystem& fs, Fq c) {
    if (rank(fs.phi()) != fs.dim()) throw Error(ErrorKind::NotAFrame, "columns do not span the ambient space");
    const Field& F = fs.field();
    const FieldPtr& Fp = fs.phi().field_ptr();
    const std::size_t n = fs.dim();
    GramEquivalenceReport rep;
    rep.frame_operator_scalar = frame_operator(fs) == scale(c, Matrix::identity(Fp, n));
    const Matrix G = gramian(fs);
    rep.gram_quadratic = G * G == scale(c, G);

    const std::uint32_t ell = fs.ell();
    const std::uint32_t co_ell = F.e() - F.normalize_ell(ell);
    const Matrix left = dagger(fs.phi(), co_ell);
    const Matrix right = dagger(fs.phi(), ell);
    rep.adjoint_identity = true;
    for (std::size_t i = 0; i < n && rep.adjoint_identity; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const FqVector lx = left.column(i);
            const FqVector ry = right.column(j);
            const Fq lhs = sesq_form(F, lx, ry, ell);
            const Fq rhs = i == j ? c : Field::zero();
            if (lhs != rhs) {
                rep.adjoint_identity = false;
                break;
            }
        }
    return rep;
}

}  // namespace gfetf
