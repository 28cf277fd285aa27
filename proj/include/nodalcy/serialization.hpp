#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclotomic.hpp"
#include "errors.hpp"
#include "hypersurface.hpp"
#include "multipoly.hpp"

namespace nodalcy {

using json = nlohmann::json;

namespace detail {

inline bool is_positive_integer(const json& j) { return j.is_number_integer() && j.get<long long>() >= 1; }

}  // namespace detail

// --- cyclotomic values ------------------------------------------------------
//
// Wire forms accepted for a field element:
//   {"order": N, "coeffs": ["num/den", ...]}   canonical object, phi(N) coeffs
//   "z^k"                                      zeta_N^k (context supplies N)
//   "num/den" or "int"                         rational constant
//   integer literal                            rational constant
// Emission favors the compact forms when they are exact.

inline json cyclotomic_to_json(const CyclotomicNumber& value) {
    json coeffs = json::array();
    for (const auto& c : value.coeffs()) coeffs.push_back(to_fraction_string(c));
    return json{{"order", value.order()}, {"coeffs", coeffs}};
}

inline json cyclotomic_to_compact_json(const CyclotomicNumber& value) {
    if (value.is_rational()) return to_fraction_string(value.rational_value());
    for (unsigned k = 1; k < value.order(); ++k) {
        if (value == CyclotomicNumber::zeta_power(value.order(), k)) return "z^" + std::to_string(k);
    }
    return cyclotomic_to_json(value);
}

inline CyclotomicNumber cyclotomic_from_json(const json& j, std::optional<unsigned> context_order) {
    if (j.is_number_integer()) {
        if (!context_order) fail(errc::schema_error, "bare rational needs a field order from context");
        return CyclotomicNumber(*context_order, Rational(j.get<long long>()));
    }
    if (j.is_string()) {
        const std::string text = j.get<std::string>();
        if (text.rfind("z^", 0) == 0) {
            if (!context_order) fail(errc::schema_error, "'z^k' shorthand needs a field order from context");
            try {
                long long k = std::stoll(text.substr(2));
                return CyclotomicNumber::zeta_power(*context_order, k);
            } catch (const std::exception&) {
                fail(errc::schema_error, "malformed zeta power '" + text + "'");
            }
        }
        if (!context_order) fail(errc::schema_error, "bare rational needs a field order from context");
        return CyclotomicNumber(*context_order, parse_rational(text));
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        fail(errc::schema_error, "expected a cyclotomic object with 'order' and 'coeffs'");
    if (!detail::is_positive_integer(j["order"]))
        fail(errc::schema_error, "'order' must be a positive integer");
    unsigned order = j["order"].get<unsigned>();
    if (context_order && order != *context_order)
        fail(errc::order_mismatch,
             "value has order " + std::to_string(order) + ", context expects " + std::to_string(*context_order));
    if (!j["coeffs"].is_array() || j["coeffs"].size() != euler_totient(order))
        fail(errc::schema_error, "'coeffs' must have phi(order) = " + std::to_string(euler_totient(order)) +
                                     " entries");
    std::vector<Rational> coeffs;
    coeffs.reserve(j["coeffs"].size());
    for (const auto& c : j["coeffs"]) {
        if (c.is_number_integer())
            coeffs.emplace_back(c.get<long long>());
        else if (c.is_string())
            coeffs.push_back(parse_rational(c.get<std::string>()));
        else
            fail(errc::schema_error, "coefficients must be 'num/den' strings");
    }
    return CyclotomicNumber(order, std::move(coeffs));
}

// --- polynomials ------------------------------------------------------------

inline json poly_to_json(const MultiPoly& f) {
    json terms = json::array();
    // x0-dominant term order, matching the monomial basis layout
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        terms.push_back(json{{"exponents", it->first}, {"coeff", cyclotomic_to_compact_json(it->second)}});
    }
    return json{{"num_vars", f.num_vars()}, {"cyclotomic_order", f.field_order()}, {"terms", terms}};
}

inline MultiPoly poly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("num_vars") || !j.contains("cyclotomic_order") || !j.contains("terms"))
        fail(errc::schema_error, "polynomial needs 'num_vars', 'cyclotomic_order' and 'terms'");
    if (!detail::is_positive_integer(j["num_vars"]))
        fail(errc::schema_error, "'num_vars' must be a positive integer");
    if (!detail::is_positive_integer(j["cyclotomic_order"]))
        fail(errc::schema_error, "'cyclotomic_order' must be a positive integer");
    unsigned num_vars = j["num_vars"].get<unsigned>();
    unsigned order = j["cyclotomic_order"].get<unsigned>();
    if (!j["terms"].is_array()) fail(errc::schema_error, "'terms' must be an array");
    MultiPoly f(num_vars, order);
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff"))
            fail(errc::schema_error, "each term needs 'exponents' and 'coeff'");
        if (!term["exponents"].is_array() || term["exponents"].size() != num_vars)
            fail(errc::schema_error, "'exponents' must list one entry per variable");
        Exponents exps;
        exps.reserve(num_vars);
        for (const auto& e : term["exponents"]) {
            if (!e.is_number_integer() || e.get<long long>() < 0)
                fail(errc::schema_error, "exponents must be nonnegative integers");
            exps.push_back(e.get<unsigned>());
        }
        f.add_term(exps, cyclotomic_from_json(term["coeff"], order));  // duplicates sum, zeros drop
    }
    return f;
}

// --- projective points ------------------------------------------------------

inline json point_to_json(const ProjectivePoint& p) {
    json coords = json::array();
    for (const auto& c : p.coords()) coords.push_back(cyclotomic_to_compact_json(c));
    return coords;
}

inline ProjectivePoint point_from_json(const json& j, unsigned order) {
    if (!j.is_array() || j.empty()) fail(errc::schema_error, "a point is a nonempty array of coordinates");
    std::vector<CyclotomicNumber> coords;
    coords.reserve(j.size());
    for (const auto& c : j) coords.push_back(cyclotomic_from_json(c, order));
    bool nonzero = false;
    for (const auto& c : coords) nonzero = nonzero || !c.is_zero();
    if (!nonzero) fail(errc::schema_error, "point coordinates are all zero");
    return ProjectivePoint(std::move(coords));
}

// --- nodal hypersurface models ----------------------------------------------

inline json model_to_json(const NodalHypersurface& model) {
    json nodes = json::array();
    for (const auto& node : model.nodes()) nodes.push_back(point_to_json(node));
    return json{{"n", model.n()},
                {"cyclotomic_order", model.field_order()},
                {"f", poly_to_json(model.f())},
                {"nodes", nodes}};
}

// Parses, canonicalizes and fully verifies an external model description.
inline NodalHypersurface model_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("cyclotomic_order") || !j.contains("f") ||
        !j.contains("nodes"))
        fail(errc::schema_error, "model needs 'n', 'cyclotomic_order', 'f' and 'nodes'");
    if (!detail::is_positive_integer(j["n"])) fail(errc::schema_error, "'n' must be a positive integer");
    unsigned n = j["n"].get<unsigned>();
    if (n < 3 || n % 2 == 0) fail(errc::invalid_dimension, "'n' must be odd and at least 3");
    if (!detail::is_positive_integer(j["cyclotomic_order"]))
        fail(errc::schema_error, "'cyclotomic_order' must be a positive integer");
    unsigned order = j["cyclotomic_order"].get<unsigned>();
    MultiPoly f = poly_from_json(j["f"]);
    if (f.field_order() != order) fail(errc::order_mismatch, "f has a different cyclotomic order than the model");
    if (!j["nodes"].is_array()) fail(errc::schema_error, "'nodes' must be an array");
    std::vector<ProjectivePoint> nodes;
    nodes.reserve(j["nodes"].size());
    for (const auto& node : j["nodes"]) nodes.push_back(point_from_json(node, order));
    return NodalHypersurface::build(n, std::move(f), std::move(nodes));
}

inline json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(errc::schema_error, "input is not valid JSON");
    return j;
}

}  // namespace nodalcy
