#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace gfetf;
using gfetf::testing::self_dual_blocks;

namespace {

FieldPtr f9() { return Field::make(3, 2); }

Matrix ex513_a() {
    auto F = f9();
    return Matrix(F, 2, 2, {Fq{1}, Fq{1}, Fq{1}, Fq{2}});
}

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidArgument;
}

std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> key(const Field& F, const RstTriple& x) {
    auto k = [&](Fq v) { return v.is_zero() ? 0 : 1 + F.discrete_log(v); };
    return {k(x.r), k(x.s), k(x.t)};
}

}  // namespace

TEST(BuildM, Examples) {
    auto F = f9();
    const Matrix a = ex513_a();
    EXPECT_EQ(build_m(a, {Fq{0}, Fq{1}, Fq{0}}), Matrix::identity(F, 2));
    EXPECT_EQ(build_m(a, {Fq{0}, Fq{0}, Fq{1}}), Matrix::ones(F, 2, 2));
    EXPECT_EQ(build_m(a, {Fq{2}, Fq{2}, Fq{1}}), Matrix(F, 2, 2, {Fq{2}, Fq{0}, Fq{0}, Fq{1}}));
    EXPECT_EQ(kind_of([&] { (void)build_m(Matrix(F, 2, 3), {}); }), ErrorKind::NotSquare);
}

TEST(SelfDualSetup, Examples) {
    auto F81 = Field::make(3, 4);
    const Fq z4 = F81->zeta_pow(4);
    const auto c1 = check_self_dual_setup(LinearCode(Matrix(F81, 2, 4, {Fq{1}, Fq{0}, z4, Fq{0}, Fq{0}, Fq{1}, Fq{0}, z4})), 2);
    EXPECT_EQ(c1.a, scale(z4, Matrix::identity(F81, 2)));

    auto F2401 = Field::make(7, 4);
    const Matrix a531 = scale(F2401->zeta_pow(450), Matrix::identity(F2401, 4));
    EXPECT_NO_THROW((void)check_self_dual_setup(LinearCode(hstack(Matrix::identity(F2401, 4), a531)), 1));

    auto F3 = Field::make(3, 1);
    EXPECT_EQ(kind_of([&] { (void)check_self_dual_setup(LinearCode(Matrix(F3, 1, 2, {Fq{1}, Fq{0}})), 0); }),
              ErrorKind::NotSelfDual);
    EXPECT_EQ(kind_of([&] { (void)check_self_dual_setup(LinearCode(Matrix(F3, 1, 3, {Fq{1}, Fq{1}, Fq{1}})), 0); }),
              ErrorKind::NotHalfRate);
}

TEST(VerifyCase, Examples) {
    auto F81 = Field::make(3, 4);
    const Matrix a511 = scale(F81->zeta_pow(4), Matrix::identity(F81, 2));
    // Under the Conway modulus t = z^10 misses the case (iv) condition, and the oracle agrees.
    const RstTriple x511{Fq{2}, Fq{0}, F81->zeta_pow(10)};
    EXPECT_EQ(verify_case(a511, x511, 2).accepted(), gram_oracle(a511, x511, 2).accepted());
    // Every t that does satisfy it gives the zeta-free value a = -2^{10} = 2.
    std::size_t hits = 0;
    for (auto t : F81->elements()) {
        if (t.is_zero()) continue;
        const auto c = verify_case(a511, {Fq{2}, Fq{0}, t}, 2);
        if (!c.accepted()) continue;
        ++hits;
        EXPECT_EQ(c.witness->label, EtfCase::IV);
        EXPECT_EQ(c.witness->predicted_a, F81->neg(F81->pow(Fq{2}, 10)));
        EXPECT_EQ(c.witness->predicted_a, Fq{2});
    }
    EXPECT_GT(hits, 0u);

    const auto c513 = verify_case(ex513_a(), {Fq{2}, Fq{2}, Fq{1}}, 1);
    ASSERT_TRUE(c513.accepted()) << c513.failed;
    EXPECT_EQ(c513.witness->label, EtfCase::VI);
    EXPECT_EQ(c513.witness->predicted_a, Fq{1});
    ASSERT_TRUE(c513.witness->delta.has_value());

    auto F = Field::make(7, 4);
    const Fq z = F->zeta();
    const Matrix a531 = scale(F->zeta_pow(450), Matrix::identity(F, 4));
    const auto c531 = verify_case(a531, {z, Fq{0}, z}, 1);
    ASSERT_TRUE(c531.accepted()) << c531.failed;
    EXPECT_EQ(c531.witness->label, EtfCase::IV);
    EXPECT_EQ(c531.witness->predicted_a, F->neg(F->pow(z, 8)));
    EXPECT_EQ(F->zeta_pow(1200), F->neg(Field::one()));
    EXPECT_EQ(c531.witness->predicted_a, F->zeta_pow(1208));
}

TEST(VerifyCase, DegenerateAndSizeErrors) {
    const Matrix a = ex513_a();
    EXPECT_EQ(verify_case(a, {Fq{0}, Fq{0}, Fq{0}}, 1).reason, ErrorKind::DegenerateTriple);
    EXPECT_EQ(verify_case(a, {Fq{0}, Fq{0}, Fq{1}}, 1).reason, ErrorKind::DegenerateTriple);
    auto F = f9();
    EXPECT_EQ(kind_of([&] { (void)verify_case(Matrix::identity(F, 1), {Fq{1}, Fq{0}, Fq{0}}, 1); }),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([&] { (void)gram_oracle(Matrix(F, 2, 3), {Fq{1}, Fq{0}, Fq{0}}, 1); }), ErrorKind::NotSquare);
}

TEST(GramOracle, Examples) {
    auto F = f9();
    const auto o = gram_oracle(ex513_a(), {Fq{2}, Fq{2}, Fq{1}}, 1);
    ASSERT_TRUE(o.accepted());
    EXPECT_EQ(o.certificate->gram, Matrix::identity(F, 2));
    EXPECT_EQ(o.certificate->params, (EtfParams{Fq{1}, Fq{0}, Fq{1}}));
    EXPECT_EQ(o.certificate->label, EtfCase::VI);
    EXPECT_EQ(F->pow(o.certificate->norm_witness, 4), Fq{1});

    // (1, 0, 0) gives M = A and G = A A^dagger = -I
    const auto i = gram_oracle(ex513_a(), {Fq{1}, Fq{0}, Fq{0}}, 1);
    ASSERT_TRUE(i.accepted());
    EXPECT_EQ(i.certificate->params.a, F->neg(Field::one()));

    // (0, 0, 1): G = J J^dagger = 2J is not scalar
    const auto j = gram_oracle(ex513_a(), {Fq{0}, Fq{0}, Fq{1}}, 1);
    EXPECT_FALSE(j.accepted());
    EXPECT_EQ(j.reason, ErrorKind::NotScalar);
}

TEST(GramOracle, ZeroAndNonNormRejections) {
    // Over F_9 with l = 0 the norms are the squares; for A = I, (0, s, 0) gives G = s^2 I.
    auto F = f9();
    const Matrix id = Matrix::identity(F, 2);
    for (auto s : F->elements()) {
        const auto o = gram_oracle(id, {Fq{0}, s, Fq{0}}, 0);
        if (s.is_zero()) {
            EXPECT_EQ(o.reason, ErrorKind::ZeroA);
        } else {
            ASSERT_TRUE(o.accepted());
            EXPECT_EQ(o.certificate->params.a, F->mul(s, s));
        }
    }
    // A with A A^t = z I over F_9, l = 0: z is a non-square, so (1, 0, 0) is scalar but not a norm.
    const auto lam = F->zeta();
    std::optional<Matrix> found;
    for (const auto& m : gfetf::testing::scaled_unitary_2x2(F, 0, lam))
        if (!found) found = m;
    ASSERT_TRUE(found.has_value());
    const auto o = gram_oracle(*found, {Fq{1}, Fq{0}, Fq{0}}, 0);
    EXPECT_EQ(o.reason, ErrorKind::NotANorm);
}

TEST(CaseI, EveryNonzeroRWorks) {
    for (auto [p, e, l] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{3, 2, 1}, {5, 2, 1}, {3, 4, 2}, {2, 2, 1}}) {
        auto F = Field::make(p, e);
        std::uint64_t norm_exp = 1;
        for (std::uint32_t i = 0; i < l; ++i) norm_exp *= p;
        ++norm_exp;
        std::optional<Fq> mu;
        for (auto x : F->elements())
            if (!mu && !x.is_zero() && F->add(Field::one(), F->pow(x, norm_exp)).is_zero()) mu = x;
        ASSERT_TRUE(mu.has_value());
        const Matrix a = scale(*mu, Matrix::identity(F, 3));
        for (auto r : F->elements()) {
            if (r.is_zero()) continue;
            const auto o = gram_oracle(a, {r, Fq{0}, Fq{0}}, l);
            ASSERT_TRUE(o.accepted());
            EXPECT_EQ(o.certificate->params.a, F->neg(F->pow(r, norm_exp)));
            const auto vc = verify_case(a, {r, Fq{0}, Fq{0}}, l);
            ASSERT_TRUE(vc.accepted());
            EXPECT_EQ(vc.witness->predicted_a, o.certificate->params.a);
        }
    }
}

// The case analysis and the direct Gram computation accept exactly the same triples.
TEST(OracleEquivalence, SmallFieldsExhaustive) {
    std::mt19937_64 rng(11);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 2}, {5, 1}}) {
        auto F = Field::make(p, e);
        const auto el = F->elements();
        for (std::uint32_t l = 0; l < e; ++l)
            for (std::size_t n : {2u, 4u})
                for (const auto& a : self_dual_blocks(F, l, n, 3, rng)) {
                    ASSERT_EQ(a * dagger(a, l) + Matrix::identity(F, n), Matrix(F, n, n));
                    for (auto r : el)
                        for (auto s : el)
                            for (auto t : el) {
                                const RstTriple x{r, s, t};
                                const auto o = gram_oracle(a, x, l);
                                const auto c = verify_case(a, x, l);
                                ASSERT_EQ(o.accepted(), c.accepted())
                                    << F->q() << " l=" << l << " n=" << n << " (" << F->format(r) << "," << F->format(s)
                                    << "," << F->format(t) << ") " << c.failed;
                                if (o.accepted()) EXPECT_EQ(o.certificate->params.a, c.witness->predicted_a);
                            }
                }
    }
}

// In characteristic 2 with n = 2, case (iv) holds for some A with unequal row
// sums: the off-diagonal entries rt' (R_i + R_j') cancel without R_i being constant.
TEST(OracleEquivalence, Characteristic2LengthTwoGap) {
    auto F = Field::make(2, 4);
    const std::uint32_t l = 2;
    const auto blocks = gfetf::testing::scaled_unitary_2x2(F, l, Field::one());
    std::size_t gaps = 0;
    for (const auto& a : blocks) {
        if (a(0, 0) == a(1, 0) || F->add(a(0, 0), a(0, 1)) == F->add(a(1, 0), a(1, 1))) continue;
        for (auto r : F->elements())
            for (auto t : F->elements()) {
                if (r.is_zero() || t.is_zero()) continue;
                const RstTriple x{r, Fq{0}, t};
                const auto o = gram_oracle(a, x, l);
                const auto c = verify_case(a, x, l);
                if (o.accepted() && !c.accepted()) {
                    EXPECT_EQ(c.failed, "row sums of A are not constant");
                    ++gaps;
                }
                EXPECT_FALSE(c.accepted() && !o.accepted());
            }
        if (gaps) break;
    }
    EXPECT_GT(gaps, 0u);
}

TEST(Search, Example513Unfiltered) {
    auto F = f9();
    const auto certs = search_rst(ex513_a(), 1);
    bool found = false;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto& c = certs[i];
        found |= c.triple == RstTriple{Fq{2}, Fq{2}, Fq{1}};
        EXPECT_TRUE(gram_oracle(ex513_a(), c.triple, 1).accepted());
        if (i) EXPECT_LT(key(*F, certs[i - 1].triple), key(*F, c.triple));
    }
    EXPECT_TRUE(found);

    // brute force over all 729 triples
    std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> brute, got;
    for (auto r : F->elements())
        for (auto s : F->elements())
            for (auto t : F->elements())
                if (gram_oracle(ex513_a(), {r, s, t}, 1).accepted()) brute.insert({r.v, s.v, t.v});
    for (const auto& c : certs) got.insert({c.triple.r.v, c.triple.s.v, c.triple.t.v});
    EXPECT_EQ(got, brute);
}

TEST(Search, FilterAndWorkersAreDeterministic) {
    auto F = Field::make(5, 2);
    std::mt19937_64 rng(12);
    for (const auto& a : self_dual_blocks(F, 1, 2, 3, rng)) {
        const auto one = search_rst(a, 1, {.exclude_trivial = true, .workers = 1});
        const auto four = search_rst(a, 1, {.exclude_trivial = true, .workers = 4});
        ASSERT_EQ(one.size(), four.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            EXPECT_EQ(one[i].triple, four[i].triple);
            EXPECT_FALSE(one[i].triple.r.is_zero());
            const int nz = !one[i].triple.s.is_zero() + !one[i].triple.t.is_zero();
            EXPECT_GE(nz, 1);
        }
        const auto all = search_rst(a, 1);
        std::size_t kept = 0;
        for (const auto& c : all) kept += !c.triple.r.is_zero() && (!c.triple.s.is_zero() || !c.triple.t.is_zero());
        EXPECT_EQ(kept, one.size());
    }
}

TEST(Search, NoQualifyingTriple) {
    auto F = f9();
    // A A^dagger != -I for this bidiagonal A; only triples with r = 0 survive
    const Matrix a(F, 3, 3, {Fq{1}, Fq{1}, Fq{0}, Fq{0}, Fq{1}, Fq{1}, Fq{0}, Fq{0}, Fq{1}});
    EXPECT_TRUE(search_rst(a, 1, {.exclude_trivial = true}).empty());
    const auto all = search_rst(a, 1);
    EXPECT_FALSE(all.empty());
    for (const auto& c : all) EXPECT_TRUE(c.triple.r.is_zero());
}

TEST(EtfToCode, Examples) {
    auto F81 = Field::make(3, 4);
    const Matrix a511 = scale(F81->zeta_pow(4), Matrix::identity(F81, 2));
    const auto o = gram_oracle(a511, {Fq{1}, Fq{0}, Fq{0}}, 2);
    ASSERT_TRUE(o.accepted());
    EXPECT_EQ(o.certificate->params.a, Fq{2});
    const auto sd = etf_to_code(*o.certificate);
    EXPECT_EQ(sd.hull.classification, HullClass::SelfDual);
    EXPECT_EQ(sd.hull.hull_dim, 2u);

    auto F3 = Field::make(3, 1);
    const auto id = gram_oracle(Matrix::identity(F3, 2), {Fq{0}, Fq{1}, Fq{0}}, 0);
    ASSERT_TRUE(id.accepted());
    EXPECT_EQ(etf_to_code(*id.certificate).hull.classification, HullClass::Lcd);
}

TEST(EtfToCode, RoundTripRecoversM) {
    std::mt19937_64 rng(13);
    for (auto [p, e, l] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{3, 2, 1}, {5, 2, 1}, {2, 2, 1}}) {
        auto F = Field::make(p, e);
        for (const auto& a : self_dual_blocks(F, l, 4, 4, rng))
            for (const auto& c : search_rst(a, l)) {
                if (c.params.a != F->neg(Field::one())) continue;
                const auto ec = etf_to_code(c);
                EXPECT_EQ(check_self_dual_setup(ec.code, l).a, c.m);
            }
    }
}
