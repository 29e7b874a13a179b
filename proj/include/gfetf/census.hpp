#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gfetf/constacyclic.hpp"
#include "gfetf/etf.hpp"
#include "gfetf/io.hpp"

namespace gfetf {

struct CensusGrid {
    struct FieldParams {
        std::uint32_t p, e;
    };
    std::vector<FieldParams> fields;
    std::vector<std::size_t> lengths;
    std::optional<std::vector<std::uint32_t>> ells;  // all of [0, e) when absent
    std::optional<std::vector<Fq>> lambdas;          // the admissible sweep when absent
    std::uint64_t max_points = 20'000;
    std::uint64_t max_q = 2401;
    std::size_t max_length = 14;

    static CensusGrid desk_default() {
        CensusGrid g;
        g.fields = {{3, 2}, {5, 2}, {7, 2}, {3, 4}};
        g.lengths = {2, 4, 6, 8, 10, 12};
        return g;
    }
};

/// One self-dual code that admits a nontrivial triple, with the first such certificate.
struct CensusHit {
    std::vector<Fq> g;  // generator polynomial coefficients, ascending
    std::size_t triples = 0;
    nlohmann::json certificate;
    std::string digest;  // over "r,s,t:a;" of every certificate in search order, packed encoding
};

struct CensusPoint {
    std::uint32_t p = 0, e = 0;
    std::size_t n = 0;
    Fq lambda;
    std::uint32_t ell = 0;
    std::size_t self_dual = 0;
    std::vector<CensusHit> hits;
};

struct CensusReport {
    std::vector<CensusPoint> points;
};

struct CensusOptions {
    unsigned workers = 1;
    std::uint64_t seed = 0;
};

namespace detail {

struct PlannedPoint {
    FieldPtr F;
    std::size_t n;
    Fq lambda;
    std::uint32_t ell;
};

inline std::vector<PlannedPoint> plan_census(const CensusGrid& grid) {
    std::vector<PlannedPoint> plan;
    for (const auto& fp : grid.fields) {
        const FieldPtr F = Field::make(fp.p, fp.e);
        if (F->q() > grid.max_q)
            throw Error(ErrorKind::GridTooLarge, "q=" + std::to_string(F->q()) + " exceeds " + std::to_string(grid.max_q));
        std::vector<std::uint32_t> ells;
        if (grid.ells) {
            for (auto l : *grid.ells)
                if (l < fp.e) ells.push_back(l);
        } else {
            for (std::uint32_t l = 0; l < fp.e; ++l) ells.push_back(l);
        }
        for (auto n : grid.lengths) {
            if (n > grid.max_length)
                throw Error(ErrorKind::GridTooLarge, "n=" + std::to_string(n) + " exceeds " + std::to_string(grid.max_length));
            if (n % 2 != 0) throw Error(ErrorKind::OddLength, "census lengths must be even");
            for (auto l : ells) {
                const auto lambdas = grid.lambdas ? *grid.lambdas : admissible_lambdas(*F, l);
                for (auto lam : lambdas) {
                    if (!F->contains(lam) || lam.is_zero())
                        throw Error(ErrorKind::InvalidArgument, "lambda outside F_q^*");
                    plan.push_back({F, n, lam, l});
                    if (plan.size() > grid.max_points)
                        throw Error(ErrorKind::GridTooLarge, "more than " + std::to_string(grid.max_points) + " grid points");
                }
            }
        }
    }
    return plan;
}

inline CensusPoint run_point(const PlannedPoint& pp, std::uint64_t seed) {
    const Field& F = *pp.F;
    CensusPoint out{F.p(), F.e(), pp.n, pp.lambda, pp.ell, 0, {}};
    const auto spec = make_consta_spec(F, pp.n, pp.lambda);
    const auto codes = find_galois_self_dual(pp.F, spec, pp.ell, seed);
    out.self_dual = codes.size();
    if (pp.n < 4) return out;  // [I|A] needs A of size at least 2
    for (const auto& c : codes) {
        const SelfDualSetup setup = check_self_dual_setup(c.code, pp.ell);
        const auto certs = search_rst(setup.a, pp.ell, {.exclude_trivial = true, .workers = 1});
        if (certs.empty()) continue;
        CensusHit hit;
        hit.g = c.g.coeffs();
        hit.triples = certs.size();
        hit.certificate = io::certificate_json(setup.a, certs.front());
        std::string all;
        for (const auto& cert : certs) {
            all += std::to_string(cert.triple.r.v) + ',' + std::to_string(cert.triple.s.v) + ',' +
                   std::to_string(cert.triple.t.v) + ':' + std::to_string(cert.params.a.v) + ';';
        }
        hit.digest = io::digest(all);
        out.hits.push_back(std::move(hit));
    }
    return out;
}

}  // namespace detail

inline CensusReport run_census(const CensusGrid& grid, CensusOptions opts = {}) {
    const auto plan = detail::plan_census(grid);
    CensusReport rep;
    rep.points.resize(plan.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(std::max<std::size_t>(plan.size(), 1))));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < plan.size(); i = next++) rep.points[i] = detail::run_point(plan[i], opts.seed);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return rep;
}

inline nlohmann::json census_json(const CensusReport& rep) {
    using nlohmann::json;
    json points = json::array();
    std::size_t total_sd = 0, total_hits = 0;
    for (const auto& pt : rep.points) {
        const FieldPtr F = Field::make(pt.p, pt.e);
        json hits = json::array();
        for (const auto& h : pt.hits) {
            json g = json::array();
            for (auto c : h.g) g.push_back(F->format(c));
            hits.push_back({{"g", g}, {"triples", h.triples}, {"digest", h.digest}, {"certificate", h.certificate}});
        }
        total_sd += pt.self_dual;
        total_hits += pt.hits.size();
        points.push_back({{"q", F->q()},
                          {"p", pt.p},
                          {"e", pt.e},
                          {"n", pt.n},
                          {"lambda", F->format(pt.lambda)},
                          {"ell", pt.ell},
                          {"self_dual_codes", pt.self_dual},
                          {"codes_with_nontrivial_etf", pt.hits.size()},
                          {"hits", hits}});
    }
    return {{"schema", io::kSchema},
            {"points", points},
            {"totals", {{"grid_points", rep.points.size()}, {"self_dual_codes", total_sd}, {"codes_with_nontrivial_etf", total_hits}}}};
}

}  // namespace gfetf
