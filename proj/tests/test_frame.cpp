#include <gtest/gtest.h>

#include "support.hpp"

using namespace gfetf;
using gfetf::testing::random_element;
using gfetf::testing::random_matrix;
using gfetf::testing::random_vector;

namespace {

FieldPtr f9() { return Field::make(3, 2); }

// Random frame whose frame operator is a scalar matrix, by rejection.
FrameSystem random_tight(const FieldPtr& F, std::size_t n, std::size_t m, std::uint32_t ell, std::mt19937_64& rng) {
    for (;;) {
        Matrix phi = random_matrix(F, n, m, rng);
        if (rank(phi) != n) continue;
        FrameSystem fs(phi, ell);
        if (scalar_value(frame_operator(fs))) return fs;
    }
}

}  // namespace

TEST(SesqForm, Examples) {
    auto F = f9();
    std::mt19937_64 rng(1);
    const auto x = random_vector(*F, 3, rng);
    EXPECT_EQ(sesq_form(*F, x, FqVector(3), 1), Field::zero());
    const FqVector a{F->zeta(), Field::zero()}, b{Field::one(), Field::zero()};
    EXPECT_EQ(sesq_form(*F, a, b, 1), F->from_coeffs(std::vector<std::uint32_t>{1, 2}));
}

TEST(SesqForm, SemilinearityAndConjugation) {
    auto F = Field::make(5, 3);
    std::mt19937_64 rng(2);
    for (int it = 0; it < 200; ++it) {
        const auto x = random_vector(*F, 4, rng), y = random_vector(*F, 4, rng);
        const Fq a = random_element(*F, rng);
        for (std::uint32_t l = 0; l <= 3; ++l) {
            FqVector ax(x);
            for (auto& v : ax) v = F->mul(a, v);
            EXPECT_EQ(sesq_form(*F, ax, y, l), F->mul(F->frobenius(a, l), sesq_form(*F, x, y, l)));
            EXPECT_EQ(sesq_form(*F, x, y, l), galois_inner_product(*F, y, x, l));
            EXPECT_EQ(sesq_form(*F, x, y, l), F->frobenius(sesq_form(*F, y, x, 3 - l), l));
        }
    }
}

TEST(Operators, SynthesisAnalysisAdjoint) {
    auto F = Field::make(3, 4);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        const std::uint32_t l = static_cast<std::uint32_t>(it % 4);
        FrameSystem fs(random_matrix(F, 3, 5, rng), l);
        const auto v = random_vector(*F, 5, rng), u = random_vector(*F, 3, rng);
        const auto syn = synthesis(fs, v);
        FqVector sum(3, Field::zero());
        for (std::size_t i = 0; i < 5; ++i) {
            const auto phi = fs.vec(i);
            for (std::size_t r = 0; r < 3; ++r) sum[r] = F->add(sum[r], F->mul(v[i], phi[r]));
        }
        EXPECT_EQ(syn, sum);
        const auto an = analysis(fs, u);
        for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(an[i], sesq_form(*F, fs.vec(i), u, l));
        EXPECT_EQ(sesq_form(*F, syn, u, l), sesq_form(*F, v, an, l));
    }
    FrameSystem id(Matrix::identity(F, 3), 1);
    EXPECT_EQ(synthesis(id, FqVector{Fq{0}, Fq{1}, Fq{0}}), id.vec(1));
    try {
        (void)synthesis(id, FqVector(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimMismatch);
    }
}

TEST(Operators, GramianExamples) {
    auto F = f9();
    FrameSystem id(Matrix::identity(F, 2), 1);
    EXPECT_EQ(frame_operator(id), Matrix::identity(F, 2));
    EXPECT_EQ(gramian(id), Matrix::identity(F, 2));
    // a' I with a'^{p^l + 1} = a
    auto G = Field::make(3, 4);
    const Fq ap = G->zeta_pow(7);
    FrameSystem scaled(scale(ap, Matrix::identity(G, 3)), 2);
    EXPECT_EQ(gramian(scaled), scale(G->pow(ap, 10), Matrix::identity(G, 3)));
    // M of example 5.1.3 as columns
    FrameSystem m(Matrix(F, 2, 2, {Fq{2}, Fq{0}, Fq{0}, Fq{1}}), 1);
    EXPECT_EQ(gramian(m), Matrix::identity(F, 2));
}

TEST(Classify, Examples) {
    auto F = f9();
    const auto std_basis = classify(FrameSystem(Matrix::identity(F, 3), 1));
    EXPECT_TRUE(std_basis.is_frame);
    ASSERT_TRUE(std_basis.etf.has_value());
    EXPECT_EQ(*std_basis.etf, (EtfParams{Fq{1}, Fq{0}, Fq{1}}));

    auto F3 = Field::make(3, 1);
    const auto ii = classify(FrameSystem(hstack(Matrix::identity(F3, 2), Matrix::identity(F3, 2)), 0));
    EXPECT_TRUE(ii.is_frame);
    EXPECT_EQ(ii.tight_c, Fq{2});
    EXPECT_EQ(ii.equal_norm_a, Fq{1});
    EXPECT_FALSE(ii.equiangular_b.has_value());
    EXPECT_FALSE(ii.etf.has_value());

    const auto single = classify(FrameSystem(Matrix(F3, 2, 1, {Fq{1}, Fq{0}}), 0));
    EXPECT_FALSE(single.is_frame);
}

TEST(Classify, DegenerateTightness) {
    auto F = f9();
    // z^4 = -1 makes (1, z) isotropic: the frame operator of the 1 x 2 system is 0.
    FrameSystem fs(Matrix(F, 1, 2, {Fq{1}, F->zeta()}), 1);
    const auto c = classify(fs);
    EXPECT_TRUE(c.is_frame);
    EXPECT_EQ(c.tight_c, Field::zero());
    EXPECT_TRUE(c.degenerate_tight);
}

TEST(GramEquivalences, Examples) {
    auto F = f9();
    const auto std_basis = verify_gram_equivalences(FrameSystem(Matrix::identity(F, 2), 1), Field::one());
    EXPECT_TRUE(std_basis.frame_operator_scalar && std_basis.gram_quadratic && std_basis.adjoint_identity);
    try {
        (void)verify_gram_equivalences(FrameSystem(Matrix(F, 2, 1, {Fq{1}, Fq{0}}), 1), Field::one());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotAFrame);
    }
    // Two columns with different norms: not tight for any c.
    FrameSystem nt(Matrix(F, 2, 2, {Fq{1}, Fq{0}, Fq{0}, F->zeta()}), 1);
    for (auto c : F->elements()) {
        const auto r = verify_gram_equivalences(nt, c);
        EXPECT_FALSE(r.frame_operator_scalar || r.gram_quadratic || r.adjoint_identity);
    }
}

TEST(GramEquivalences, AgreeOnRandomFrames) {
    std::mt19937_64 rng(4);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 2}, {2, 3}}) {
        auto F = Field::make(p, e);
        for (int it = 0; it < 60; ++it) {
            const std::uint32_t l = static_cast<std::uint32_t>(it % e);
            const bool tight = it % 2 == 0;
            FrameSystem fs = tight ? random_tight(F, 2, 3, l, rng) : FrameSystem(random_matrix(F, 2, 3, rng), l);
            if (rank(fs.phi()) != 2) continue;
            const Fq c = tight ? *scalar_value(frame_operator(fs)) : random_element(*F, rng);
            const auto r = verify_gram_equivalences(fs, c);
            EXPECT_TRUE(r.agree());
            if (tight) EXPECT_TRUE(r.frame_operator_scalar);
        }
    }
}

TEST(Gramian, RankAndKernel) {
    std::mt19937_64 rng(5);
    auto F = Field::make(3, 2);
    for (int it = 0; it < 100; ++it) {
        FrameSystem fs(random_matrix(F, 2, 4, rng), static_cast<std::uint32_t>(it % 2));
        if (rank(fs.phi()) != 2) continue;
        const Matrix g = gramian(fs);
        EXPECT_EQ(rank(g), rank(fs.phi()));
        EXPECT_TRUE(same_row_space(null_space(g), null_space(fs.phi())));
    }
}

TEST(Tightness, ConjugateParameter) {
    std::mt19937_64 rng(6);
    auto F = Field::make(2, 3);
    for (int it = 0; it < 50; ++it) {
        const std::uint32_t l = static_cast<std::uint32_t>(it % 3);
        FrameSystem fs = random_tight(F, 2, 3, l, rng);
        const Fq c = *classify(fs).tight_c;
        EXPECT_EQ(classify(fs.with_ell(3 - l)).tight_c, F->frobenius(c, 3 - l));
    }
}

TEST(SquareEtfCriterion, ExhaustiveF9) {
    auto F = f9();
    const auto elems = F->elements();
    for (std::uint32_t l = 0; l < 2; ++l)
        for (std::size_t n = 1; n <= 2; ++n) {
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < n * n; ++i) total *= 9;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::vector<Fq> entries(n * n);
                std::uint64_t r = code;
                for (auto& x : entries) {
                    x = elems[r % 9];
                    r /= 9;
                }
                FrameSystem fs(Matrix(F, n, n, entries), l);
                const auto cls = classify(fs);
                const bool lhs = cls.etf && cls.etf->b.is_zero() && cls.etf->a == cls.etf->c && !cls.etf->a.is_zero() &&
                                 F->is_galois_norm(cls.etf->a, l);
                const auto s = scalar_value(gramian(fs));
                const bool rhs = s && !s->is_zero() && F->is_galois_norm(*s, l);
                EXPECT_EQ(lhs, rhs) << "l=" << l << " code=" << code;
                if (cls.etf && cls.etf->b.is_zero() && !cls.etf->a.is_zero()) EXPECT_EQ(cls.etf->a, cls.etf->c);
            }
        }
}
