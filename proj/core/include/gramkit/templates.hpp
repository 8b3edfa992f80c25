#pragma once

#include <map>
#include <string>
#include <vector>

#include "gramkit/grammar.hpp"

namespace gramkit {

enum class TemplateKind { Symbol, Production, Expression, Id };

struct TemplateParam {
    TemplateKind kind = TemplateKind::Expression;
    bool many = false;  // `Production* $xs` accepts zero or more productions
    std::string name;   // without the `$`
    SourceSpan span;
};

/// One rule of a template body. The head is either a fixed identifier or an
/// ID-kind placeholder; bodies are ordinary expressions whose atoms may be
/// Placeholder nodes.
struct TemplateRule {
    bool headIsPlaceholder = false;
    std::string head;
    std::vector<Expression> productions;
    SourceSpan span;
};

struct Template {
    TemplateKind resultKind = TemplateKind::Symbol;
    std::string name;
    std::vector<TemplateParam> params;
    std::vector<TemplateRule> rules;
    SourceSpan span;
};

struct TemplateLibrary {
    std::map<std::string, Template> templates;

    const Template* find(const std::string& name) const {
        auto it = templates.find(name);
        return it == templates.end() ? nullptr : &it->second;
    }
};

/// Result of instantiating one template: the produced symbols, not yet part
/// of any grammar.
struct Instantiation {
    std::string alias;
    std::vector<Symbol> symbols;
};

/// Substitute `args` for the template's placeholders. ID arguments name
/// symbols, Expression arguments replace expression-position placeholders,
/// Production(-list) arguments splice at production positions. Node ids are
/// drawn from `ids` so two instantiations never share them.
ParseResult<Instantiation> instantiate(const Template& tmpl, const std::vector<ImportArg>& args,
                                       Grammar& ids);

/// Convenience overload allocating ids from a fresh grammar.
ParseResult<Instantiation> instantiate(const Template& tmpl, const std::vector<ImportArg>& args);

/// Expand every pending import of `parsed` against `library`: each import
/// becomes a namespace (anonymous imports get `_ns1`, `_ns2`, ... aliases),
/// its symbols are spliced ahead of the host rules, and all references are
/// resolved. On success the returned grammar has no pending imports and no
/// placeholder nodes.
ParseResult<Grammar> resolveImports(const Grammar& parsed, const TemplateLibrary& library);

}  // namespace gramkit
