#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfetf/code.hpp"
#include "gfetf/etf.hpp"
#include "gfetf/io.hpp"

namespace gfetf {

struct ExampleCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct ReproduceReport {
    nlohmann::json report;
    std::vector<ExampleCheck> checks;

    [[nodiscard]] bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    [[nodiscard]] const ExampleCheck* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline nlohmann::json load_example(const std::string& data_dir, const std::string& id) {
    const std::string path = data_dir + "/examples/" + id + ".json";
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "unknown example '" + id + "' (no " + path + ")");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

/// Rebuilds a bundled example from its matrix A and triple and compares every
/// recorded quantity with what the library computes.
inline ReproduceReport reproduce_example(const nlohmann::json& ex, unsigned workers = 1) {
    using nlohmann::json;
    ReproduceReport out;
    auto check = [&](std::string name, bool ok, std::string detail = {}) {
        out.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    const FieldPtr F = io::field_from_json(ex.at("field"));
    const auto ell = ex.at("ell").get<std::uint32_t>();
    const Matrix a = io::entries_from_json(F, ex.at("A"));
    const std::size_t n = a.rows();
    const json& cj = ex.at("code");
    const json& tj = ex.at("triple");
    const RstTriple x{F->parse(tj.at("r").get<std::string>()), F->parse(tj.at("s").get<std::string>()),
                      F->parse(tj.at("t").get<std::string>())};
    const json& expected = ex.at("expected");
    const Fq want_a = F->parse(expected.at("a").get<std::string>());
    const Fq want_c = F->parse(expected.at("c").get<std::string>());

    const LinearCode code(hstack(Matrix::identity(F, n), a));
    const HullReport hull = hull_dim(code, ell);
    check("code_parameters", code.length() == cj.at("n").get<std::size_t>() && code.dimension() == cj.at("k").get<std::size_t>(),
          "[" + std::to_string(code.length()) + "," + std::to_string(code.dimension()) + "]");
    check("galois_self_dual", hull.classification == HullClass::SelfDual,
          "h_" + std::to_string(ell) + " = " + std::to_string(hull.hull_dim));

    bool setup_ok = true;
    try {
        (void)check_self_dual_setup(code, ell);
    } catch (const Error& e) {
        setup_ok = false;
        check("a_adagger_minus_identity", false, e.what());
    }
    if (setup_ok) check("a_adagger_minus_identity", true);

    std::optional<std::size_t> d;
    if (ex.value("check_min_distance", false)) {
        d = min_distance(code, {.budget = 10'000'000, .workers = workers});
        const auto want_d = cj.at("d").get<std::size_t>();
        check("min_distance", d && *d == want_d, d ? "d = " + std::to_string(*d) : "over budget");
    }

    const OracleOutcome o = certify(a, x, ell);
    const auto label = case_of(x);
    check("case_label", label && to_string(*label) == expected.at("case").get<std::string>(),
          label ? std::string(to_string(*label)) : "degenerate");
    const CaseOutcome vc = verify_case(a, x, ell);

    json rep{{"schema", io::kSchema},
             {"example", ex.at("id")},
             {"field", io::field_json(*F)},
             {"ell", ell},
             {"code", {{"n", code.length()}, {"k", code.dimension()}, {"d", d ? json(*d) : json(nullptr)}}},
             {"hull", io::hull_json(code, hull)},
             {"triple", io::triple_json(*F, x)},
             {"case", label ? json(std::string(to_string(*label))) : json(nullptr)},
             {"expected", {{"a", F->format(want_a)}, {"b", "0"}, {"c", F->format(want_c)}}}};
    rep["case_conditions"] = vc.accepted() ? io::witness_json(*F, *vc.witness)
                                           : json{{"rejected", std::string(to_string(vc.reason))}, {"failed", vc.failed}};

    if (o.certificate) {
        const EtfCertificate& cert = *o.certificate;
        check("gram_scalar", true);
        check("a", cert.params.a == want_a, F->format(cert.params.a) + " vs " + F->format(want_a));
        check("c", cert.params.c == want_c, F->format(cert.params.c) + " vs " + F->format(want_c));
        check("b", cert.params.b.is_zero());
        rep["a"] = F->format(cert.params.a);
        rep["b"] = F->format(cert.params.b);
        rep["c"] = F->format(cert.params.c);
        rep["certificate"] = io::certificate_json(a, cert);
        try {
            const EtfCode ec = etf_to_code(cert);
            check("etf_code", true, std::string(to_string(ec.hull.classification)));
            rep["etf_code"] = io::hull_json(ec.code, ec.hull);
        } catch (const Error& e) {
            check("etf_code", false, e.what());
        }
    } else {
        const auto diag = o.gram(0, 0);
        check("gram_scalar", false, std::string(to_string(o.reason)) + ", G[0][0] = " + F->format(diag));
        rep["a"] = nullptr;
        rep["b"] = nullptr;
        rep["c"] = nullptr;
        rep["rejected"] = std::string(to_string(o.reason));
        rep["gram"] = io::entries_json(o.gram);
    }

    json checks = json::array();
    for (const auto& c : out.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    rep["checks"] = checks;
    rep["ok"] = out.ok();
    out.report = std::move(rep);
    return out;
}

}  // namespace gfetf
