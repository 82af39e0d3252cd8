#ifndef WDCALC_JSON_IO_HPP
#define WDCALC_JSON_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "matrix.hpp"
#include "modp_gl2.hpp"
#include "multisegment.hpp"
#include "scalar.hpp"
#include "specialization.hpp"
#include "weil_deligne.hpp"

namespace wdcalc::json_io
{

using json = nlohmann::json;

/// Input JSON is well formed but does not have the expected shape.
class schema_error : public invalid_input
{
public:
    using invalid_input::invalid_input;
};

inline const json& require(const json& j, const char* key)
{
    if (!j.is_object()) {
        throw schema_error(std::string("expected an object holding \"") + key + "\"");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw schema_error(std::string("missing field \"") + key + "\"");
    }
    return *it;
}

inline std::int64_t require_int(const json& j, const char* key)
{
    const json& v = require(j, key);
    if (!v.is_number_integer()) {
        throw schema_error(std::string("field \"") + key + "\" must be an integer");
    }
    return v.get<std::int64_t>();
}

inline std::uint64_t require_positive(const json& j, const char* key)
{
    const std::int64_t v = require_int(j, key);
    if (v <= 0) {
        throw schema_error(std::string("field \"") + key + "\" must be positive");
    }
    return static_cast<std::uint64_t>(v);
}

inline const json& require_array(const json& j, const char* key)
{
    const json& v = require(j, key);
    if (!v.is_array()) {
        throw schema_error(std::string("field \"") + key + "\" must be an array");
    }
    return v;
}

// Fields: {"type":"rational"} or {"type":"prime","p":5}; absent means rational.

inline json encode(const Field& f)
{
    if (f.is_rational()) {
        return {{"type", "rational"}};
    }
    return {{"type", "prime"}, {"p", f.characteristic()}};
}

inline Field decode_field(const json& j)
{
    const auto it = j.find("field");
    if (it == j.end()) {
        return Field::rational();
    }
    const json& type = require(*it, "type");
    if (type == "rational") {
        return Field::rational();
    }
    if (type == "prime") {
        return Field::prime(require_positive(*it, "p"));
    }
    throw schema_error("unknown field type " + type.dump());
}

// Rational entries are strings "a/b" (integers also accepted); residues are integers.

inline json encode(const Scalar& s)
{
    if (s.is_rational()) {
        return s.to_string();
    }
    return s.as_residue();
}

inline Scalar decode_scalar(const Field& f, const json& j)
{
    if (j.is_string()) {
        return Scalar::parse(f, j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Scalar::parse(f, j.dump());
    }
    throw schema_error("matrix entry " + j.dump() + " must be a string or an integer");
}

inline json encode_rows(const Matrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(encode(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix decode_rows(const Field& f, const json& rows, const char* what)
{
    if (!rows.is_array() || rows.empty()) {
        throw schema_error(std::string(what) + " must be a non-empty array of rows");
    }
    std::vector<std::vector<Scalar>> entries;
    for (const auto& row : rows) {
        if (!row.is_array()) {
            throw schema_error(std::string(what) + " rows must be arrays");
        }
        std::vector<Scalar> r;
        for (const auto& x : row) {
            r.push_back(decode_scalar(f, x));
        }
        entries.push_back(std::move(r));
    }
    return Matrix::from_rows(f, entries);
}

// Matrices: {"field": ..., "rows": [[...], ...]}.

inline json encode(const Matrix& m) { return {{"field", encode(m.field())}, {"rows", encode_rows(m)}}; }

inline Matrix decode_matrix(const json& j, const char* what)
{
    if (!j.is_object()) {
        throw schema_error(std::string(what) + " must be an object with \"rows\"");
    }
    return decode_rows(decode_field(j), require(j, "rows"), what);
}

// Representations: {"q", "P", "N"}.

inline json encode(const WeilDeligneRep& w)
{
    return {{"q", w.q()}, {"P", encode(w.frobenius())}, {"N", encode(w.monodromy())}};
}

inline WeilDeligneRep decode_rep(const json& j)
{
    return WeilDeligneRep(require_int(j, "q"), decode_matrix(require(j, "P"), "P"),
                          decode_matrix(require(j, "N"), "N"));
}

// Galois samples: {"q", "phi", "sigma"}.

inline GaloisSample decode_galois_sample(const json& j)
{
    return GaloisSample{require_int(j, "q"), decode_matrix(require(j, "phi"), "phi"),
                        decode_matrix(require(j, "sigma"), "sigma")};
}

inline json encode(const Segment& s)
{
    json out = {{"line", s.line}, {"start", s.start}, {"len", s.len}};
    if (s.period > 0) {
        out["period"] = s.period;
    }
    return out;
}

inline Segment decode_segment(const json& j)
{
    const json& line = require(j, "line");
    if (!line.is_string()) {
        throw schema_error("segment line must be a string");
    }
    Segment s{line.get<std::string>(), require_int(j, "start"), require_int(j, "len"), 0};
    if (j.contains("period")) {
        s.period = require_int(j, "period");
    }
    return s;
}

inline json encode_segments(const std::vector<Segment>& segs)
{
    json out = json::array();
    for (const auto& s : segs) {
        out.push_back(encode(s));
    }
    return out;
}

inline json encode(const Multisegment& m) { return {{"segments", encode_segments(m.segments())}}; }

inline Multisegment decode_multisegment(const json& j)
{
    std::vector<Segment> segs;
    for (const auto& s : require_array(j, "segments")) {
        segs.push_back(decode_segment(s));
    }
    return Multisegment(std::move(segs));
}

inline json encode(const TwistedMultisegment& t)
{
    return {{"half_twist", t.half_twist}, {"segments", encode_segments(t.ms.segments())}};
}

inline json encode(const CuspidalLabel& c) { return {{"line", c.line}, {"pos", c.pos}}; }

inline CuspidalLabel decode_label(const json& j)
{
    const json& line = require(j, "line");
    if (!line.is_string()) {
        throw schema_error("label line must be a string");
    }
    return {line.get<std::string>(), require_int(j, "pos")};
}

inline json encode(const SpecializationReport& r)
{
    return {{"S", encode(r.s)},
            {"S_bar", encode(r.s_bar)},
            {"S_prime", encode(r.s_prime)},
            {"dominance_ok", r.dominance_ok},
            {"is_isomorphism", r.is_isomorphism},
            {"generic_profile", r.generic_profile},
            {"reduced_profile", r.reduced_profile}};
}

inline Gl2ModpInput decode_gl2_input(const json& j)
{
    const json& shape = require(j, "shape");
    if (!shape.is_string()) {
        throw schema_error("shape must be a string");
    }
    return {require_positive(j, "q_mod_p"), require_positive(j, "p"), parse_shape(shape.get<std::string>())};
}

inline json encode(const Gl2ModpOutput& o)
{
    return {{"constituents", o.constituents}, {"regime", to_string(o.regime)}, {"extension_note", o.extension_note}};
}

} // namespace wdcalc::json_io

#endif // WDCALC_JSON_IO_HPP
