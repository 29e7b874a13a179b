#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gfetf/gfetf.hpp"

using nlohmann::json;
using namespace gfetf;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string data_dir = GFETF_DATA_DIR;
};

/// Thrown when a computation finished but the object under test failed a check.
struct VerificationFailure {
    json report;
};

bool is_verification_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotSelfDual:
        case ErrorKind::NotHalfRate:
        case ErrorKind::DegenerateTriple:
        case ErrorKind::ConditionFailed:
        case ErrorKind::NotScalar:
        case ErrorKind::ZeroA:
        case ErrorKind::NotANorm:
        case ErrorKind::NotAFrame:
            return true;
        default:
            return false;
    }
}

unsigned resolve_workers(unsigned flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("GFETF_WORKERS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw Error(ErrorKind::InvalidArgument, "GFETF_WORKERS must be a positive integer");
    }
    return 1;
}

void render_text(std::ostream& out, const json& j, const std::string& indent = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !v.empty()) {
                out << indent << k << ":\n";
                render_text(out, v, indent + "  ");
            } else {
                out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
            }
        }
    } else if (j.is_array()) {
        const bool flat = std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
        if (flat) {
            out << indent;
            for (std::size_t i = 0; i < j.size(); ++i)
                out << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
            out << '\n';
        } else {
            for (const auto& v : j) {
                out << indent << "-\n";
                render_text(out, v, indent + "  ");
            }
        }
    } else {
        out << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(const Globals& g, const json& j) {
    if (g.format == "text")
        render_text(std::cout, j);
    else
        std::cout << j.dump(2) << '\n';
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, sep)) out.push_back(tok);
    return out;
}

FieldPtr make_field(std::uint32_t p, std::uint32_t e, const std::string& modulus) {
    if (modulus.empty()) return Field::make(p, e);
    std::vector<std::uint32_t> c;
    for (const auto& t : split(modulus, ',')) c.push_back(static_cast<std::uint32_t>(std::stoul(t)));
    return Field::make(p, e, c);
}

json field_info(const Field& F) {
    json norms = json::array();
    for (std::uint32_t l = 0; l < F.e(); ++l) {
        std::uint64_t count = 0;
        for (auto x : F.elements()) count += !x.is_zero() && F.is_galois_norm(x, l);
        norms.push_back({{"ell", l}, {"nonzero_norms", count}});
    }
    return {{"schema", io::kSchema},
            {"field", io::field_json(F)},
            {"q", F.q()},
            {"zeta", std::to_string(F.zeta().v)},
            {"minus_one", F.format(F.neg(Field::one()))},
            {"norm_sets", norms}};
}

json element_info(const Field& F, Fq x, std::uint32_t ell) {
    json j{{"x", F.format(x)}, {"packed", x.v}, {"frobenius", F.format(F.frobenius(x, ell))}, {"ell", ell}};
    if (!x.is_zero()) {
        j["log"] = F.discrete_log(x);
        j["order"] = F.element_order(x);
        const auto w = F.galois_norm_witness(x, ell);
        j["is_norm"] = w.has_value();
        j["norm_witness"] = w ? json(F.format(*w)) : json(nullptr);
    }
    return j;
}

RstTriple parse_triple(const Field& F, const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw Error(ErrorKind::Parse, "--rst expects three comma-separated elements");
    return {F.parse(parts[0]), F.parse(parts[1]), F.parse(parts[2])};
}

json code_matrix_json(const LinearCode& c) { return io::entries_json(c.generator()); }

}  // namespace

int main(int argc, char** argv) {
    Globals g;
    CLI::App app{"Galois self-dual codes and equiangular tight frames over finite fields"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", g.seed, "seed for randomized factorization");
    app.add_option("--workers", g.workers, "worker threads (default: GFETF_WORKERS or 1)");
    app.add_option("--data-dir", g.data_dir, "directory holding bundled example data");

    std::function<int()> action;

    // field
    auto* field = app.add_subcommand("field", "finite field utilities");
    field->require_subcommand(1);
    std::uint32_t fp = 0, fe = 1, fell = 0;
    std::string fmod, fx;
    auto field_opts = [&](CLI::App* c) {
        c->add_option("--p", fp, "characteristic")->required();
        c->add_option("--e", fe, "extension degree")->required();
        c->add_option("--modulus", fmod, "explicit modulus coefficients c0,...,ce");
    };
    auto* finfo = field->add_subcommand("info", "field parameters and norm-set sizes");
    field_opts(finfo);
    finfo->callback([&] { action = [&] { emit(g, field_info(*make_field(fp, fe, fmod))); return kOk; }; });
    auto* felem = field->add_subcommand("element", "log, order, Frobenius image and norm test of an element");
    field_opts(felem);
    felem->add_option("--x", fx, "element token")->required();
    felem->add_option("--ell", fell, "Frobenius exponent");
    felem->callback([&] {
        action = [&] {
            auto F = make_field(fp, fe, fmod);
            F->check_ell(fell);
            emit(g, element_info(*F, F->parse(fx), fell));
            return kOk;
        };
    });

    // code
    auto* code = app.add_subcommand("code", "linear code operations");
    code->require_subcommand(1);
    std::string gen;
    std::uint32_t cell = 0;
    std::uint64_t budget = 10'000'000;
    auto code_opts = [&](CLI::App* c, bool with_ell) {
        c->add_option("--gen", gen, "generator matrix file")->required();
        if (with_ell) c->add_option("--ell", cell, "Galois exponent");
    };
    auto* chull = code->add_subcommand("hull", "l-Galois hull dimension and classification");
    code_opts(chull, true);
    chull->callback([&] {
        action = [&] {
            LinearCode c(io::load_matrix(gen));
            emit(g, io::hull_json(c, hull_dim(c, cell)));
            return kOk;
        };
    });
    auto* cdual = code->add_subcommand("dual", "generator of the l-Galois dual");
    code_opts(cdual, true);
    cdual->callback([&] {
        action = [&] {
            LinearCode c(io::load_matrix(gen));
            const LinearCode d = galois_dual(c, cell);
            json j = io::hull_json(c, hull_dim(c, cell));
            j["dual"] = {{"k", d.dimension()}, {"generator", code_matrix_json(d)}};
            emit(g, j);
            return kOk;
        };
    });
    auto* csys = code->add_subcommand("sysform", "systematic form [I|A] and column permutation");
    code_opts(csys, true);
    csys->callback([&] {
        action = [&] {
            LinearCode c(io::load_matrix(gen));
            const auto sf = systematic_form(c);
            json j = io::hull_json(c, hull_dim(c, cell));
            j["A"] = io::entries_json(sf.a);
            j["perm"] = sf.perm;
            emit(g, j);
            return kOk;
        };
    });
    auto* cmin = code->add_subcommand("mindist", "exact minimum distance by enumeration");
    code_opts(cmin, true);
    cmin->add_option("--budget", budget, "largest q^k to enumerate");
    cmin->callback([&] {
        action = [&] {
            LinearCode c(io::load_matrix(gen));
            json j = io::hull_json(c, hull_dim(c, cell));
            const auto d = min_distance(c, {.budget = budget, .workers = resolve_workers(g.workers)});
            j["d"] = d ? json(*d) : json(nullptr);
            if (!d) j["note"] = "q^k exceeds the enumeration budget";
            emit(g, j);
            return kOk;
        };
    });

    // ccyclic
    auto* cc = app.add_subcommand("ccyclic", "constacyclic codes");
    cc->require_subcommand(1);
    std::uint32_t cp = 0, ce = 1, ccell = 0;
    std::size_t cn = 0;
    std::string clam = "1";
    bool self_dual_only = false;
    auto* cenum = cc->add_subcommand("enumerate", "all lambda-constacyclic codes of length n");
    cenum->add_option("--p", cp)->required();
    cenum->add_option("--e", ce)->required();
    cenum->add_option("--n", cn)->required();
    cenum->add_option("--lambda", clam, "lambda as an element token");
    cenum->add_option("--ell", ccell, "Galois exponent for the hull");
    cenum->add_flag("--self-dual-only", self_dual_only);
    cenum->callback([&] {
        action = [&] {
            auto F = Field::make(cp, ce);
            F->check_ell(ccell);
            const auto spec = make_consta_spec(*F, cn, F->parse(clam));
            json out = json::array();
            for_each_constacyclic(
                F, spec,
                [&](const ConstacyclicCode& c) {
                    const std::size_t k = c.dimension();
                    const std::size_t h = k ? hull_dim(c.code, ccell).hull_dim : 0;
                    const bool sd = 2 * k == cn && h == k;
                    if (self_dual_only && !sd) return;
                    json coeffs = json::array();
                    for (auto x : c.g.coeffs()) coeffs.push_back(F->format(x));
                    out.push_back({{"g", coeffs}, {"n", cn}, {"k", k}, {"hull_dim", h}, {"self_dual", sd}});
                },
                g.seed);
            emit(g, out);
            return kOk;
        };
    });
    std::uint64_t ord = 0;
    std::optional<std::uint64_t> hpar, rpar;
    auto* cexist = cc->add_subcommand("exists", "existence test for l-Galois self-dual constacyclic codes");
    cexist->add_option("--p", cp)->required();
    cexist->add_option("--e", ce)->required();
    cexist->add_option("--ell", ccell)->required();
    cexist->add_option("--n", cn)->required();
    cexist->add_option("--ord", ord, "multiplicative order of lambda")->required();
    cexist->add_option("--hull-h", hpar, "the parameter h of the parity condition");
    cexist->add_option("--two-adic-r", rpar, "the parameter r of the 2-adic condition");
    cexist->callback([&] {
        action = [&] {
            const auto v = existence_check(cp, ce, ccell, cn, ord, {.h = hpar, .r = rpar});
            emit(g, {{"p", cp}, {"e", ce}, {"ell", ccell}, {"n", cn}, {"ord", ord}, {"verdict", std::string(to_string(v))}});
            return kOk;
        };
    });

    // frame
    auto* frame = app.add_subcommand("frame", "frames under the sesquilinear form");
    frame->require_subcommand(1);
    std::string phi;
    std::uint32_t frell = 0;
    auto* fclass = frame->add_subcommand("classify", "frame, tightness, equal-norm, equiangular and ETF tests");
    fclass->add_option("--phi", phi, "matrix file whose columns are the frame vectors")->required();
    fclass->add_option("--ell", frell);
    fclass->callback([&] {
        action = [&] {
            FrameSystem fs(io::load_matrix(phi), frell);
            json j = io::classification_json(fs.field(), classify(fs));
            j["n"] = fs.dim();
            j["m"] = fs.size();
            j["ell"] = frell;
            emit(g, j);
            return kOk;
        };
    });

    // etf
    auto* etf = app.add_subcommand("etf", "ETFs from Galois self-dual codes");
    etf->require_subcommand(1);
    std::string ecode, rst;
    std::uint32_t eell = 0;
    bool exclude_trivial = false;
    auto* ever = etf->add_subcommand("verify", "certify one triple (r, s, t)");
    ever->add_option("--code", ecode, "generator matrix file of a [2n, n] self-dual code")->required();
    ever->add_option("--ell", eell)->required();
    ever->add_option("--rst", rst, "r,s,t as element tokens")->required();
    ever->callback([&] {
        action = [&] {
            const LinearCode c(io::load_matrix(ecode));
            const auto setup = check_self_dual_setup(c, eell);
            const Field& F = c.field();
            const RstTriple x = parse_triple(F, rst);
            const auto o = certify(setup.a, x, eell);
            const auto vc = verify_case(setup.a, x, eell);
            json j{{"schema", io::kSchema}, {"ell", eell}, {"triple", io::triple_json(F, x)}, {"perm", setup.perm}};
            j["case_conditions"] = vc.accepted() ? io::witness_json(F, *vc.witness)
                                                 : json{{"rejected", std::string(to_string(vc.reason))}, {"failed", vc.failed}};
            if (!o.certificate) {
                j["rejected"] = std::string(to_string(o.reason));
                j["gram"] = io::entries_json(o.gram);
                throw VerificationFailure{j};
            }
            j["certificate"] = io::certificate_json(setup.a, *o.certificate);
            j["a"] = F.format(o.certificate->params.a);
            j["b"] = F.format(o.certificate->params.b);
            j["c"] = F.format(o.certificate->params.c);
            emit(g, j);
            return kOk;
        };
    });
    auto* esearch = etf->add_subcommand("search", "all triples giving an (a,0,a) ETF");
    esearch->add_option("--code", ecode)->required();
    esearch->add_option("--ell", eell)->required();
    esearch->add_flag("--exclude-trivial", exclude_trivial, "r != 0 and at least two nonzero parameters");
    esearch->callback([&] {
        action = [&] {
            const LinearCode c(io::load_matrix(ecode));
            const auto setup = check_self_dual_setup(c, eell);
            const auto certs = search_rst(setup.a, eell, {.exclude_trivial = exclude_trivial, .workers = resolve_workers(g.workers)});
            json list = json::array();
            for (const auto& cert : certs) list.push_back(io::certificate_json(setup.a, cert));
            emit(g, {{"schema", io::kSchema}, {"ell", eell}, {"count", certs.size()}, {"certificates", list}});
            return kOk;
        };
    });

    // reproduce
    auto* repro = app.add_subcommand("reproduce", "rebuild a bundled worked example and compare");
    std::string example;
    bool all_examples = false;
    auto* ex_opt = repro->add_option("--example", example, "5.1.1 ... 5.3.3 or fig1.1 ... fig1.6");
    repro->add_flag("--all", all_examples, "run every bundled example")->excludes(ex_opt);
    repro->callback([&] {
        action = [&] {
            std::vector<std::string> ids;
            if (all_examples) {
                for (const char* id : {"5.1.1", "5.1.2", "5.1.3", "5.2.1", "5.2.2", "5.2.3", "5.3.1", "5.3.2", "5.3.3",
                                       "fig1.1", "fig1.2", "fig1.3", "fig1.4", "fig1.5", "fig1.6"})
                    ids.emplace_back(id);
            } else if (!example.empty()) {
                ids.push_back(example);
            } else {
                throw CLI::RequiredError("--example or --all");
            }
            json out = json::array();
            bool ok = true;
            for (const auto& id : ids) {
                const auto r = reproduce_example(load_example(g.data_dir, id), resolve_workers(g.workers));
                ok = ok && r.ok();
                out.push_back(r.report);
            }
            const json j = ids.size() == 1 ? out[0] : out;
            if (!ok) throw VerificationFailure{j};
            emit(g, j);
            return kOk;
        };
    });

    // census
    auto* census = app.add_subcommand("census", "deterministic sweep over constacyclic self-dual codes");
    std::string cfields, clengths, cells;
    std::uint64_t max_points = 20'000;
    census->add_option("--fields", cfields, "p^e list, e.g. 3^2,5^2 (default: desk grid)");
    census->add_option("--lengths", clengths, "even code lengths, e.g. 2,4,6");
    census->add_option("--ells", cells, "Galois exponents (default: all)");
    census->add_option("--max-points", max_points, "grid point budget");
    census->callback([&] {
        action = [&] {
            CensusGrid grid = CensusGrid::desk_default();
            if (!cfields.empty()) {
                grid.fields.clear();
                for (const auto& t : split(cfields, ',')) {
                    const auto pe = split(t, '^');
                    if (pe.size() != 2) throw Error(ErrorKind::Parse, "bad field '" + t + "', expected p^e");
                    grid.fields.push_back({static_cast<std::uint32_t>(std::stoul(pe[0])), static_cast<std::uint32_t>(std::stoul(pe[1]))});
                }
            }
            if (!clengths.empty()) {
                grid.lengths.clear();
                for (const auto& t : split(clengths, ',')) grid.lengths.push_back(std::stoul(t));
            }
            if (!cells.empty()) {
                std::vector<std::uint32_t> ls;
                for (const auto& t : split(cells, ',')) ls.push_back(static_cast<std::uint32_t>(std::stoul(t)));
                grid.ells = ls;
            }
            grid.max_points = max_points;
            emit(g, census_json(run_census(grid, {.workers = resolve_workers(g.workers), .seed = g.seed})));
            return kOk;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    try {
        return action();
    } catch (const VerificationFailure& f) {
        emit(g, f.report);
        return kVerifyFailed;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        if (g.format == "json") std::cout << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump(2) << '\n';
        return is_verification_kind(e.kind()) ? kVerifyFailed : kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid number: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "number out of range: " << e.what() << '\n';
        return kUsage;
    }
}
