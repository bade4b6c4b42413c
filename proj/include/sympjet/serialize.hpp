#ifndef SYMPJET_SERIALIZE_HPP
#define SYMPJET_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include <sympjet/forms.hpp>

namespace sympjet
{

using Json = nlohmann::ordered_json;

// Polynomial text such as "x^2 + y + 1/3*p1*q1 - (y - q1)^2", truncated to
// `order`. Division is allowed by numeric constants only. Throws ParseError
// with the column of the offending character.
Jet parse_polynomial(const std::string &text, const VariableSpace &space, unsigned order);

// "symplectic-4", "quasi-3", "constrained-4" as printed by VariableSpace::name().
VariableSpace space_from_name(const std::string &name);

// {"space": name, "order": k, "terms": [["num", "den", [e1, ..., em]], ...]}
// in graded-lex order.
Json jet_to_json(const Jet &f);
// Accepts that object, a bare terms array (order taken from `order`), or a
// polynomial string.
Jet jet_from_json(const Json &j, const VariableSpace &space, unsigned order);

// {"space": name, "degree": k, "order": o, "terms": [[[i1, ..., ik], jet], ...]}
Json form_to_json(const FormJet &a);
FormJet form_from_json(const Json &j, const VariableSpace &space, unsigned order);

// {"source": name, "target": name, "components": [jet, ...]}
Json map_to_json(const MapJet &m);
MapJet map_from_json(const Json &j, const VariableSpace &source, const VariableSpace &target, unsigned order);

Json rational_to_json(const Rational &r);

} // namespace sympjet

#endif
