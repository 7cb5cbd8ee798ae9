#pragma once

// JSON forms of the library's values. Integers and rationals are written as
// decimal strings ("-3", "537/64") so nothing is ever rounded.

#include <json.hpp>

#include <string>
#include <vector>

#include "domopt/domination.hpp"
#include "domopt/enumeration.hpp"
#include "domopt/optimality.hpp"
#include "domopt/polynomial.hpp"
#include "domopt/reliability.hpp"

namespace domopt {

using json = nlohmann::ordered_json;

inline json coefficients_json(std::span<const mpz_class> c)
{
    json a = json::array();
    for (const auto& v : c) a.push_back(v.get_str());
    return a;
}

inline json to_json(const IntPoly& p) { return coefficients_json(p.coeffs()); }

inline IntPoly int_poly_from_json(const json& j)
{
    std::vector<mpz_class> c;
    for (const auto& v : j) c.emplace_back(v.get<std::string>());
    return IntPoly(std::move(c));
}

inline json to_json(const DomPoly& p)
{
    json j;
    j["n"] = p.n;
    if (auto g = p.gamma())
        j["gamma"] = *g;
    else
        j["gamma"] = nullptr;
    j["d"] = coefficients_json(p.d);
    return j;
}

inline DomPoly dom_poly_from_json(const json& j)
{
    DomPoly p;
    p.n = j.at("n").get<int>();
    p.d.clear();
    for (const auto& v : j.at("d")) p.d.emplace_back(v.get<std::string>());
    if (p.d.size() != static_cast<std::size_t>(p.n) + 1) throw InvalidArgument("DomPoly JSON has wrong length");
    return p;
}

inline json to_json(const ReliabilityPoly& r)
{
    json j;
    j["n"] = r.n;
    j["coeffs"] = coefficients_json(r.coeffs.coeffs());
    return j;
}

inline json to_json(const RootWitness& w)
{
    json j;
    j["lo"] = w.lo.get_str();
    j["hi"] = w.hi.get_str();
    j["exact"] = w.exact ? json(w.exact->get_str()) : json(nullptr);
    return j;
}

inline json to_json(const ComparisonVerdict& v)
{
    json j;
    j["relation"] = to_string(v.relation);
    j["strict"] = v.strict;
    json crossings = json::array(), touches = json::array(), samples = json::array();
    for (const auto& w : v.crossings) crossings.push_back(to_json(w));
    for (const auto& w : v.touches) touches.push_back(to_json(w));
    for (const auto& s : v.samples) samples.push_back({{"x", s.x.get_str()}, {"sign", s.sign}});
    j["crossings"] = std::move(crossings);
    j["touches"] = std::move(touches);
    j["samples"] = std::move(samples);
    return j;
}

inline json to_json(const ClassWitness& w)
{
    return {{"first", w.first}, {"second", w.second}, {"verdict", to_json(w.verdict)}};
}

inline json to_json(const ClassReport& r, bool with_members = false)
{
    json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["class_size"] = r.members.size();
    j["optimal_exists"] = r.optimal_exists;
    j["optimal_members"] = r.optimal_members;
    j["unique"] = r.unique;
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    j["least_optimal_exists"] = r.least_optimal_exists;
    j["least_optimal_members"] = r.least_optimal_members;
    j["least_unique"] = r.least_unique;
    j["least_witness"] = r.least_witness ? to_json(*r.least_witness) : json(nullptr);
    j["shared_polynomials"] = r.shared_polynomials;
    if (with_members) {
        json members = json::array();
        for (const auto& mb : r.members) members.push_back({{"graph6", mb.graph6}, {"poly", to_json(mb.poly)}});
        j["members"] = std::move(members);
    }
    return j;
}

inline json to_json(const ClassIndex& idx)
{
    json members = json::array();
    for (const auto& l : idx.members) members.push_back(l.graph6());
    return {{"n", idx.n}, {"m", idx.m}, {"count", idx.members.size()}, {"members", std::move(members)}};
}

inline json to_json(const Prediction& p)
{
    json j;
    j["n"] = p.n;
    j["m"] = p.m;
    j["regime"] = to_string(p.regime);
    j["predicted_optimal"] = p.predicted ? json(canonical_form(*p.predicted).graph6()) : json("none");
    j["description"] = p.description;
    return j;
}

} // namespace domopt
