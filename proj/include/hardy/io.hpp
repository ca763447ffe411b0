#pragma once

// JSON and CSV encodings.
//
//   Rational          "num/den"                    e.g. "1/6", "-3/1"
//   ComplexRational   {"re": "1/6", "im": "0/1"}
//   MultiIndex        [1, 1]
//   CPoint            [{"re": 0.5, "im": 0.0}, ...]
//   SpherePolynomial  {"n": 2, "terms": [{"mu": [1,1], "nu": [1,1], "re": "1/1", "im": "0/1"}, ...]}
//
// Exact values are always written as rational strings; float renderings
// sit next to them under "*_float" keys.

#include "hardy/error.hpp"
#include "hardy/exactnum.hpp"
#include "hardy/multiindex.hpp"
#include "hardy/sphere.hpp"
#include "hardy/sphere_poly.hpp"
#include "hardy/tracetest.hpp"
#include "hardy/transforms.hpp"

#include <json.hpp>

#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hardy::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.to_string(); }

inline Json to_json(const ComplexRational& z) { return Json{{"re", z.re.to_string()}, {"im", z.im.to_string()}}; }

inline Json float_json(const ComplexFloat& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Json to_json(const MultiIndex& a) {
    Json arr = Json::array();
    for (unsigned c : a.components()) {
        arr.push_back(c);
    }
    return arr;
}

inline Json to_json(const CPoint& z) {
    Json arr = Json::array();
    for (const auto& c : z.coords()) {
        arr.push_back(float_json(c));
    }
    return arr;
}

inline Json to_json(const SpherePolynomial& f) {
    Json terms = Json::array();
    for (const auto& [key, a] : f.terms()) {
        terms.push_back(Json{{"mu", to_json(key.first)},
                             {"nu", to_json(key.second)},
                             {"re", a.re.to_string()},
                             {"im", a.im.to_string()}});
    }
    return Json{{"n", f.dimension()}, {"terms", std::move(terms)}};
}

inline Json to_json(const HolomorphicPolynomial& g) {
    Json terms = Json::array();
    for (const auto& [mu, b] : g.terms()) {
        terms.push_back(Json{{"mu", to_json(mu)}, {"re", b.re.to_string()}, {"im", b.im.to_string()}});
    }
    return Json{{"n", g.dimension()}, {"terms", std::move(terms)}};
}

inline Json to_json(const ConditionReport& r) {
    return Json{{"kind", std::string(to_string(r.kind))},
                {"alpha", to_json(r.alpha)},
                {"beta", to_json(r.beta)},
                {"lhs", to_json(r.lhs)},
                {"rhs", to_json(r.rhs)},
                {"lhs_float", float_json(to_float(r.lhs))},
                {"rhs_float", float_json(to_float(r.rhs))},
                {"satisfied", r.satisfied}};
}

inline Json to_json(const MembershipCertificate& c) {
    Json j{{"member", c.member},
           {"residual_sq", to_json(c.residual_sq)},
           {"residual_sq_float", to_float(c.residual_sq)}};
    if (c.witness_extension) {
        j["witness_extension"] = to_json(*c.witness_extension);
    }
    if (c.violation) {
        j["violation"] = to_json(*c.violation);
        j["violation_order"] = *c.violation_order;
        j["violation_count"] = c.violation_count;
    }
    if (!c.orders_searched.empty()) {
        j["orders_searched"] = c.orders_searched;
    }
    return j;
}

inline Json to_json(const MCEstimate& e) {
    return Json{{"value", float_json(e.value)}, {"stderr", e.std_error}, {"samples", e.samples}, {"seed", e.seed}};
}

namespace detail {

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::schema, where + ": " + what);
}

inline MultiIndex parse_index(const Json& j, std::size_t n, const std::string& where) {
    if (!j.is_array()) {
        schema_error(where, "expected an array of nonnegative integers");
    }
    if (j.size() != n) {
        schema_error(where, "expected " + std::to_string(n) + " components, got " + std::to_string(j.size()));
    }
    std::vector<unsigned> comps;
    comps.reserve(n);
    for (const auto& c : j) {
        if (!c.is_number_integer() || c.get<long long>() < 0) {
            schema_error(where, "components must be nonnegative integers");
        }
        comps.push_back(c.get<unsigned>());
    }
    return MultiIndex(std::move(comps));
}

inline Rational parse_scalar(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const Error& e) {
            schema_error(where, e.what());
        }
    }
    if (j.is_number_integer()) {
        return Rational(j.get<long long>());
    }
    if (j.is_number_float()) {
        return Rational::from_double(j.get<double>());
    }
    schema_error(where, "expected a rational string \"p/q\" or a number");
}

} // namespace detail

/// Parses the polynomial document. Zero terms are dropped; repeated
/// (mu, nu) pairs are summed.
inline SpherePolynomial parse_polynomial(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::parse, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        detail::schema_error("$", "expected an object");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() <= 0) {
        detail::schema_error("$.n", "expected a positive integer dimension");
    }
    const auto n = doc["n"].get<std::size_t>();
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        detail::schema_error("$.terms", "expected an array");
    }
    SpherePolynomial f(n);
    std::size_t i = 0;
    for (const auto& t : doc["terms"]) {
        const std::string where = "$.terms[" + std::to_string(i++) + "]";
        if (!t.is_object()) {
            detail::schema_error(where, "expected an object");
        }
        if (!t.contains("mu") || !t.contains("nu") || !t.contains("re")) {
            detail::schema_error(where, "term needs \"mu\", \"nu\" and \"re\"");
        }
        const MultiIndex mu = detail::parse_index(t["mu"], n, where + ".mu");
        const MultiIndex nu = detail::parse_index(t["nu"], n, where + ".nu");
        Rational re = detail::parse_scalar(t["re"], where + ".re");
        Rational im = t.contains("im") ? detail::parse_scalar(t["im"], where + ".im") : Rational{};
        f.add_term(mu, nu, ComplexRational(std::move(re), std::move(im)));
    }
    return f;
}

/// %.17g rendering used in CSV output.
inline std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline constexpr std::string_view radial_scan_csv_header = "r,p,lp_error,lp_error_stderr,lp_norm_r,samples,seed";

inline std::string radial_scan_csv(std::span<const RadialScanRow> rows) {
    std::string out(radial_scan_csv_header);
    out += '\n';
    for (const auto& row : rows) {
        out += format_float(row.r) + ',' + format_float(row.p) + ',' + format_float(row.lp_error) + ',' +
               format_float(row.lp_error_stderr) + ',' + format_float(row.lp_norm_r) + ',' +
               std::to_string(row.samples) + ',' + std::to_string(row.seed) + '\n';
    }
    return out;
}

} // namespace hardy::io
