#pragma once

#include <string>

#include "gramkit/grammar.hpp"

namespace gramkit {

/// Canonical textual form: one line per import and per rule, single spaces,
/// minimal parentheses. Annotations are not printed (they belong to
/// aspects). Re-parsing the output yields a structurally equal grammar.
/// Symbols whose names collide across namespaces print as `alias_Name`.
std::string printGrammar(const Grammar& g);

/// One expression in the concrete syntax, parenthesized as needed for the
/// given context precedence.
std::string printExpression(const Expression& e);

std::string printValue(const Value& v);
std::string printAttribute(const Attribute& a);

/// The `@annotations` section used by `weave`: one line per annotated node,
/// `nodePath { attr; attr = value; }`, in walk order. Empty string when the
/// grammar carries no annotations.
std::string printAnnotationsSection(const Grammar& g);

}  // namespace gramkit
