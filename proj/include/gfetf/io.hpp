#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfetf/code.hpp"
#include "gfetf/etf.hpp"
#include "gfetf/frame.hpp"

namespace gfetf::io {

using nlohmann::json;

inline constexpr int kSchema = 1;

namespace detail {

/// Splits "key=value" tokens of a header line after its leading keyword.
inline std::map<std::string, std::string> header_fields(const std::string& line, std::string_view keyword) {
    std::istringstream in(line);
    std::string word;
    in >> word;
    if (word != keyword) throw Error(ErrorKind::Parse, "expected '" + std::string(keyword) + "' header, got '" + line + "'");
    std::map<std::string, std::string> out;
    while (in >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "malformed header token '" + word + "'");
        out[word.substr(0, eq)] = word.substr(eq + 1);
    }
    return out;
}

inline std::uint64_t parse_uint(const std::string& s, std::string_view what) {
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorKind::Parse, "bad " + std::string(what) + " '" + s + "'");
    }
}

inline std::vector<std::uint32_t> parse_coeffs(const std::string& s) {
    std::vector<std::uint32_t> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(static_cast<std::uint32_t>(parse_uint(tok, "modulus coefficient")));
    return out;
}

inline bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
}

}  // namespace detail

inline std::string join_coeffs(const std::vector<std::uint32_t>& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
    return out;
}

/// `field p=<p> e=<e> [modulus=<c0,...,ce>]`; a missing modulus selects the Conway polynomial.
inline FieldPtr parse_field_header(const std::string& line) {
    auto f = detail::header_fields(line, "field");
    if (!f.count("p") || !f.count("e")) throw Error(ErrorKind::Parse, "field header needs p and e");
    const auto p = static_cast<std::uint32_t>(detail::parse_uint(f["p"], "p"));
    const auto e = static_cast<std::uint32_t>(detail::parse_uint(f["e"], "e"));
    if (f.count("modulus")) return Field::make(p, e, detail::parse_coeffs(f["modulus"]));
    return Field::make(p, e);
}

inline std::string field_header(const Field& F) {
    return "field p=" + std::to_string(F.p()) + " e=" + std::to_string(F.e()) +
           " modulus=" + join_coeffs(F.spec().modulus);
}

inline Matrix read_matrix_body(std::istream& in, const FieldPtr& F) {
    std::string line;
    if (!detail::next_content_line(in, line)) throw Error(ErrorKind::Parse, "missing matrix header");
    auto m = detail::header_fields(line, "matrix");
    if (!m.count("rows") || !m.count("cols")) throw Error(ErrorKind::Parse, "matrix header needs rows and cols");
    const auto rows = detail::parse_uint(m["rows"], "rows");
    const auto cols = detail::parse_uint(m["cols"], "cols");
    Matrix out(F, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!detail::next_content_line(in, line))
            throw Error(ErrorKind::Parse, "expected " + std::to_string(rows) + " rows, got " + std::to_string(i));
        std::istringstream row(line);
        std::string tok;
        std::size_t j = 0;
        while (row >> tok) {
            if (j == cols) throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " has too many entries");
            out(i, j++) = F->parse(tok);
        }
        if (j != cols) throw Error(ErrorKind::Parse, "row " + std::to_string(i) + " has " + std::to_string(j) + " entries");
    }
    return out;
}

inline Matrix read_matrix(std::istream& in) {
    std::string line;
    if (!detail::next_content_line(in, line)) throw Error(ErrorKind::Parse, "empty matrix file");
    return read_matrix_body(in, parse_field_header(line));
}

inline void write_matrix(std::ostream& out, const Matrix& m) {
    const Field& F = m.field();
    out << field_header(F) << "\nmatrix rows=" << m.rows() << " cols=" << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << F.format(m(i, j));
        out << '\n';
    }
}

inline json field_json(const Field& F) {
    return {{"p", F.p()}, {"e", F.e()}, {"modulus", F.spec().modulus}};
}

inline FieldPtr field_from_json(const json& j) {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto e = j.at("e").get<std::uint32_t>();
    if (j.contains("modulus")) return Field::make(p, e, j.at("modulus").get<std::vector<std::uint32_t>>());
    return Field::make(p, e);
}

inline json entries_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix entries_from_json(const FieldPtr& F, const json& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.at(0).size() : 0;
    Matrix out(F, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows.at(i).size() != c) throw Error(ErrorKind::Parse, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) {
            const json& v = rows[i][j];
            out(i, j) = v.is_number_unsigned() ? F->parse(std::to_string(v.get<std::uint64_t>())) : F->parse(v.get<std::string>());
        }
    }
    return out;
}

inline json matrix_json(const Matrix& m) {
    return {{"field", field_json(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries_json(m)}};
}

inline Matrix matrix_from_json(const json& j) {
    Matrix m = entries_from_json(field_from_json(j.at("field")), j.at("entries"));
    if (j.contains("rows") && j.at("rows").get<std::size_t>() != m.rows())
        throw Error(ErrorKind::Parse, "rows field disagrees with entries");
    if (j.contains("cols") && j.at("cols").get<std::size_t>() != m.cols())
        throw Error(ErrorKind::Parse, "cols field disagrees with entries");
    return m;
}

/// Reads either format; JSON is recognized by a leading '{'.
inline Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return matrix_from_json(json::parse(text));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, path + ": " + e.what());
        }
    }
    std::istringstream is(text);
    return read_matrix(is);
}

inline json triple_json(const Field& F, const RstTriple& x) {
    return {{"r", F.format(x.r)}, {"s", F.format(x.s)}, {"t", F.format(x.t)}};
}

inline json hull_json(const LinearCode& c, const HullReport& h) {
    return {{"n", c.length()}, {"k", c.dimension()}, {"ell", h.ell}, {"hull_dim", h.hull_dim},
            {"class", std::string(to_string(h.classification))}};
}

inline json classification_json(const Field& F, const FrameClassification& c) {
    auto opt = [&](const std::optional<Fq>& v) { return v ? json(F.format(*v)) : json(nullptr); };
    json j{{"is_frame", c.is_frame},
           {"tight_c", opt(c.tight_c)},
           {"degenerate_tight", c.degenerate_tight},
           {"equal_norm_a", opt(c.equal_norm_a)},
           {"equiangular_b", opt(c.equiangular_b)}};
    j["etf"] = c.etf ? json{{"a", F.format(c.etf->a)}, {"b", F.format(c.etf->b)}, {"c", F.format(c.etf->c)}} : json(nullptr);
    return j;
}

inline json witness_json(const Field& F, const CaseWitness& w) {
    json j{{"case", std::string(to_string(w.label))}, {"predicted_a", F.format(w.predicted_a)}};
    if (w.theta) j["theta"] = F.format(*w.theta);
    if (w.alpha) j["alpha"] = F.format(*w.alpha);
    if (w.delta) j["delta"] = F.format(*w.delta);
    return j;
}

/// Self-contained certificate: A and the triple are enough to re-run the oracle.
inline json certificate_json(const Matrix& a, const EtfCertificate& c) {
    const Field& F = a.field();
    json j{{"schema", kSchema},
           {"field", field_json(F)},
           {"ell", c.ell},
           {"n", a.rows()},
           {"triple", triple_json(F, c.triple)},
           {"case", c.label ? json(std::string(to_string(*c.label))) : json(nullptr)},
           {"a", F.format(c.params.a)},
           {"b", F.format(c.params.b)},
           {"c", F.format(c.params.c)},
           {"norm_witness", F.format(c.norm_witness)},
           {"A", entries_json(a)},
           {"M", entries_json(c.m)},
           {"gram", entries_json(c.gram)}};
    j["witness"] = c.witness ? witness_json(F, *c.witness) : json(nullptr);
    return j;
}

/// Re-runs the Gram oracle on a stored certificate and checks the recorded values.
inline bool reverify_certificate(const json& j) {
    const FieldPtr F = field_from_json(j.at("field"));
    const Matrix a = entries_from_json(F, j.at("A"));
    const json& t = j.at("triple");
    const RstTriple x{F->parse(t.at("r").get<std::string>()), F->parse(t.at("s").get<std::string>()),
                      F->parse(t.at("t").get<std::string>())};
    const auto o = gram_oracle(a, x, j.at("ell").get<std::uint32_t>());
    if (!o.certificate) return false;
    const Fq av = F->parse(j.at("a").get<std::string>());
    const Fq cv = F->parse(j.at("c").get<std::string>());
    const Fq bv = F->parse(j.at("b").get<std::string>());
    return av == o.certificate->params.a && cv == o.certificate->params.c && bv.is_zero() &&
           entries_from_json(F, j.at("M")) == o.certificate->m && entries_from_json(F, j.at("gram")) == o.certificate->gram;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    return out;
}

}  // namespace gfetf::io
