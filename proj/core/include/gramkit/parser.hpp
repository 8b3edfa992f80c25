#pragma once

#include <string>
#include <string_view>

#include "gramkit/aspect.hpp"
#include "gramkit/grammar.hpp"
#include "gramkit/query.hpp"
#include "gramkit/templates.hpp"

namespace gramkit {

/// Parse a `.grammar` file: import declarations followed by rules. On
/// success the grammar's references are resolved unless imports are pending
/// (resolveImports finishes those).
ParseResult<Grammar> parseGrammar(std::string_view text, const std::string& fileName);

/// Parse a `.aspect` file: rules of the form `query { attachments/constraints }`.
ParseResult<Aspect> parseAspect(std::string_view text, const std::string& fileName);

/// Parse a `.templates` file.
ParseResult<TemplateLibrary> parseTemplates(std::string_view text, const std::string& fileName);

/// Parse a bare query (a rule pattern and/or metadata patterns with no
/// attachment block).
ParseResult<Query> parseQuery(std::string_view text, const std::string& fileName);

/// Parse a bare attribute block body (`name; name = value; ...`).
ParseResult<std::vector<Attribute>> parseAttributeList(std::string_view text,
                                                       const std::string& fileName);

}  // namespace gramkit
