#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support.hpp"

using namespace gfetf;
using gfetf::testing::random_matrix;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("gfetf_test_" + name)).string();
}

}  // namespace

TEST(TextFormat, RoundTrip) {
    std::mt19937_64 rng(1);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {3, 2}, {7, 4}, {2, 3}}) {
        auto F = Field::make(p, e);
        const Matrix m = random_matrix(F, 3, 5, rng);
        std::stringstream ss;
        io::write_matrix(ss, m);
        EXPECT_EQ(io::read_matrix(ss), m);
    }
}

TEST(TextFormat, AcceptsAllTokenFormsAndComments) {
    std::istringstream in(
        "# generator of C_3\n"
        "field p=3 e=2\n"
        "\n"
        "matrix rows=2 cols=4\n"
        "1 0 1 z^0   # trailing comment\n"
        "0 1 z^8 2\n");
    const Matrix m = io::read_matrix(in);
    auto F = Field::make(3, 2);
    EXPECT_EQ(m, Matrix(F, 2, 4, {Fq{1}, Fq{0}, Fq{1}, Fq{1}, Fq{0}, Fq{1}, Fq{1}, Fq{2}}));
}

TEST(TextFormat, ExplicitModulus) {
    std::istringstream in("field p=3 e=2 modulus=1,0,1\nmatrix rows=1 cols=1\n3\n");
    const Matrix m = io::read_matrix(in);
    EXPECT_EQ(m.field().spec().modulus, (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(TextFormat, Errors) {
    auto parse_kind = [](const std::string& text) {
        std::istringstream in(text);
        try {
            (void)io::read_matrix(in);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    EXPECT_EQ(parse_kind(""), ErrorKind::Parse);
    EXPECT_EQ(parse_kind("field p=3\nmatrix rows=1 cols=1\n1\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind("field p=3 e=1\nmatrix rows=2 cols=2\n1 2\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind("field p=3 e=1\nmatrix rows=1 cols=2\n1 2 0\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind("field p=4 e=1\nmatrix rows=1 cols=1\n1\n"), ErrorKind::NonPrime);
    EXPECT_EQ(parse_kind("matrix rows=1 cols=1\n1\n"), ErrorKind::Parse);
}

TEST(Json, MatrixRoundTripAndLoad) {
    std::mt19937_64 rng(2);
    auto F = Field::make(5, 2);
    const Matrix m = random_matrix(F, 4, 3, rng);
    EXPECT_EQ(io::matrix_from_json(io::matrix_json(m)), m);

    const auto jpath = temp_path("m.json"), tpath = temp_path("m.txt");
    std::ofstream(jpath) << io::matrix_json(m).dump(1);
    {
        std::ofstream out(tpath);
        io::write_matrix(out, m);
    }
    EXPECT_EQ(io::load_matrix(jpath), m);
    EXPECT_EQ(io::load_matrix(tpath), m);
    std::filesystem::remove(jpath);
    std::filesystem::remove(tpath);
}

TEST(Json, IntegerEntriesUseThePackedEncoding) {
    const auto j = nlohmann::json::parse(R"({"field": {"p": 3, "e": 2}, "entries": [[4, "z^1"]]})");
    const Matrix m = io::matrix_from_json(j);
    EXPECT_EQ(m(0, 0), Fq{4});
    EXPECT_EQ(m(0, 1), m.field().zeta());
}

TEST(Certificate, ReverifiesAndDetectsTampering) {
    auto F = Field::make(3, 2);
    const Matrix a(F, 2, 2, {Fq{1}, Fq{1}, Fq{1}, Fq{2}});
    const auto o = certify(a, {Fq{2}, Fq{2}, Fq{1}}, 1);
    ASSERT_TRUE(o.accepted());
    auto j = io::certificate_json(a, *o.certificate);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["a"], "z^0");
    EXPECT_EQ(j["case"], "vi");
    EXPECT_TRUE(io::reverify_certificate(j));
    EXPECT_TRUE(io::reverify_certificate(nlohmann::json::parse(j.dump())));
    j["a"] = "z^1";
    EXPECT_FALSE(io::reverify_certificate(j));
}

TEST(Digest, KnownValues) {
    EXPECT_EQ(io::digest(""), "cbf29ce484222325");
    EXPECT_EQ(io::digest("a"), "af63dc4c8601ec8c");
}

TEST(Reproduce, BundledExampleFiles) {
    const std::string dir = GFETF_DATA_DIR;
    for (const char* id : {"5.1.3", "5.3.3", "fig1.1"}) {
        const auto r = reproduce_example(load_example(dir, id));
        EXPECT_TRUE(r.ok()) << id << ": " << r.report.dump();
    }
    try {
        (void)load_example(dir, "9.9.9");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}
