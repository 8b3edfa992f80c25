#include "gramkit/templates.hpp"

#include <set>

namespace gramkit {

namespace {

const char* kindName(TemplateKind k) {
    switch (k) {
        case TemplateKind::Symbol: return "Symbol";
        case TemplateKind::Production: return "Production";
        case TemplateKind::Expression: return "Expression";
        case TemplateKind::Id: return "ID";
    }
    return "?";
}

void freshIds(Expression& e, Grammar& ids) {
    e.id = ids.allocateId();
    for (auto& c : e.children) freshIds(c, ids);
}

// The substitution an argument provides for one parameter.
struct BoundArg {
    const TemplateParam* param = nullptr;
    std::string identName;               // ID / Symbol parameters
    const Expression* expr = nullptr;    // Expression parameters
    std::vector<const Expression*> productions;  // Production(-list) parameters
};

class Instantiator {
public:
    Instantiator(const Template& tmpl, const std::vector<ImportArg>& args, Grammar& ids,
                 std::vector<Diagnostic>& diags)
        : tmpl_(tmpl), args_(args), ids_(ids), diags_(diags) {}

    bool bindArgs() {
        if (args_.size() != tmpl_.params.size()) {
            SourceSpan span = args_.empty() ? tmpl_.span : args_.front().span;
            error(span, "template '" + tmpl_.name + "' expects " +
                            std::to_string(tmpl_.params.size()) + " argument(s), got " +
                            std::to_string(args_.size()));
            return false;
        }
        for (std::size_t i = 0; i < args_.size(); ++i) {
            const TemplateParam& param = tmpl_.params[i];
            const ImportArg& arg = args_[i];
            BoundArg bound;
            bound.param = &param;
            switch (param.kind) {
                case TemplateKind::Id:
                case TemplateKind::Symbol: {
                    if (arg.items.size() != 1 ||
                        arg.items.front().kind != Expression::Kind::SymbolRef) {
                        error(arg.span, std::string("parameter '$") + param.name + "' of kind " +
                                            kindName(param.kind) + " needs an identifier");
                        return false;
                    }
                    bound.identName = arg.items.front().text;
                    break;
                }
                case TemplateKind::Expression: {
                    if (arg.items.size() != 1) {
                        error(arg.span, "parameter '$" + param.name +
                                            "' of kind Expression cannot take a production list");
                        return false;
                    }
                    bound.expr = &arg.items.front();
                    break;
                }
                case TemplateKind::Production: {
                    if (!param.many && arg.items.size() != 1) {
                        error(arg.span, "parameter '$" + param.name +
                                            "' takes exactly one production");
                        return false;
                    }
                    if (param.many && arg.items.empty() && !arg.explicitlyEmpty) {
                        error(arg.span, "empty production list must be written as 'empty'");
                        return false;
                    }
                    for (const auto& item : arg.items) bound.productions.push_back(&item);
                    break;
                }
            }
            bound_.emplace(param.name, std::move(bound));
        }
        return true;
    }

    std::optional<Instantiation> run() {
        if (!bindArgs()) return std::nullopt;
        Instantiation ns;
        bool ok = true;
        for (const auto& rule : tmpl_.rules) {
            Symbol sym;
            sym.span = rule.span;
            if (rule.headIsPlaceholder) {
                auto it = bound_.find(rule.head);
                if (it == bound_.end() || it->second.identName.empty()) {
                    error(rule.span, "head placeholder '$" + rule.head + "' has no ID argument");
                    ok = false;
                    continue;
                }
                sym.name = it->second.identName;
            } else {
                sym.name = rule.head;
            }
            for (const auto& prod : rule.productions) {
                if (prod.kind == Expression::Kind::Placeholder) {
                    const BoundArg* b = lookup(prod);
                    if (!b) {
                        ok = false;
                        continue;
                    }
                    if (b->param->kind == TemplateKind::Production) {
                        for (const Expression* spliced : b->productions)
                            sym.productions.push_back(makeProduction(*spliced, prod.span));
                        continue;
                    }
                }
                Expression body = substitute(prod, ok);
                sym.productions.push_back(makeProductionFrom(std::move(body), prod.span));
            }
            if (sym.productions.empty()) {
                error(rule.span, "instantiation left symbol '" + sym.name + "' with no productions");
                ok = false;
                continue;
            }
            sym.id = ids_.allocateId();
            ns.symbols.push_back(std::move(sym));
        }
        std::set<std::string> names;
        for (const auto& s : ns.symbols)
            if (!names.insert(s.name).second) {
                error(tmpl_.span, "instantiation produces duplicate symbol '" + s.name + "'");
                ok = false;
            }
        if (!ok) return std::nullopt;
        return ns;
    }

private:
    void error(SourceSpan span, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), std::move(span), {}});
    }

    const BoundArg* lookup(const Expression& placeholder) {
        auto it = bound_.find(placeholder.text);
        if (it == bound_.end()) {
            error(placeholder.span, "undeclared placeholder '$" + placeholder.text + "'");
            return nullptr;
        }
        return &it->second;
    }

    Production makeProduction(const Expression& body, SourceSpan span) {
        Production p;
        p.body = body;
        freshIds(p.body, ids_);
        p.id = ids_.allocateId();
        p.span = span;
        return p;
    }

    Production makeProductionFrom(Expression body, SourceSpan span) {
        Production p;
        p.body = std::move(body);
        p.id = ids_.allocateId();
        p.span = span;
        return p;
    }

    // Deep copy with fresh ids, substituting expression-position placeholders.
    Expression substitute(const Expression& e, bool& ok) {
        if (e.kind == Expression::Kind::Placeholder) {
            const BoundArg* b = lookup(e);
            if (!b) {
                ok = false;
                return makeRef("$" + e.text, e.span);
            }
            switch (b->param->kind) {
                case TemplateKind::Id:
                case TemplateKind::Symbol:
                    return makeRef(b->identName, e.span);
                case TemplateKind::Expression: {
                    Expression copy = *b->expr;
                    freshIds(copy, ids_);
                    return copy;
                }
                case TemplateKind::Production:
                    error(e.span, "Production placeholder '$" + e.text +
                                      "' used inside an expression");
                    ok = false;
                    return makeRef("$" + e.text, e.span);
            }
        }
        Expression copy = e;
        copy.id = ids_.allocateId();
        copy.children.clear();
        for (const auto& c : e.children) copy.children.push_back(substitute(c, ok));
        return copy;
    }

    Expression makeRef(std::string name, SourceSpan span) {
        Expression e;
        e.kind = Expression::Kind::SymbolRef;
        e.text = std::move(name);
        e.id = ids_.allocateId();
        e.span = std::move(span);
        return e;
    }

    const Template& tmpl_;
    const std::vector<ImportArg>& args_;
    Grammar& ids_;
    std::vector<Diagnostic>& diags_;
    std::map<std::string, BoundArg> bound_;
};

}  // namespace

ParseResult<Instantiation> instantiate(const Template& tmpl, const std::vector<ImportArg>& args,
                                       Grammar& ids) {
    ParseResult<Instantiation> result;
    Instantiator inst(tmpl, args, ids, result.diagnostics);
    auto value = inst.run();
    if (value && !hasErrors(result.diagnostics)) result.value = std::move(value);
    return result;
}

ParseResult<Instantiation> instantiate(const Template& tmpl, const std::vector<ImportArg>& args) {
    Grammar scratch;
    return instantiate(tmpl, args, scratch);
}

namespace {

// Pin down references in import arguments at the import site: host symbols
// and the namespaces of earlier imports are visible.
void preResolveArg(const Grammar& g, Expression& e) {
    if (e.kind == Expression::Kind::SymbolRef && !e.resolvedSymbol) {
        bool ambiguous = false;
        const Symbol* target = resolveRef(g, e.text, "", &ambiguous);
        if (target) e.resolvedSymbol = target->id;
    }
    for (auto& c : e.children) preResolveArg(g, c);
}

}  // namespace

ParseResult<Grammar> resolveImports(const Grammar& parsed, const TemplateLibrary& library) {
    ParseResult<Grammar> result;
    Grammar g = parsed;
    std::vector<ImportDecl> imports = std::move(g.imports);
    g.imports.clear();
    std::vector<Symbol> host = std::move(g.symbols);
    g.symbols.clear();

    int anonCounter = 0;
    bool ok = true;
    for (auto& imp : imports) {
        const Template* tmpl = library.find(imp.templateName);
        if (!tmpl) {
            result.diagnostics.push_back({Severity::Error,
                                          "unknown template '" + imp.templateName + "'", imp.span,
                                          {}});
            ok = false;
            continue;
        }
        std::string alias = imp.alias.empty() ? "_ns" + std::to_string(++anonCounter) : imp.alias;
        for (const auto& ns : g.namespaces)
            if (ns.alias == alias) {
                result.diagnostics.push_back(
                    {Severity::Error, "duplicate import alias '" + alias + "'", imp.span, {}});
                ok = false;
            }

        // Arguments see the host symbols and everything imported so far.
        {
            Grammar view = g;
            view.symbols.insert(view.symbols.end(), host.begin(), host.end());
            for (auto& arg : imp.args)
                for (auto& item : arg.items) preResolveArg(view, item);
        }

        ParseResult<Instantiation> inst = instantiate(*tmpl, imp.args, g);
        result.diagnostics.insert(result.diagnostics.end(), inst.diagnostics.begin(),
                                  inst.diagnostics.end());
        if (!inst.value) {
            ok = false;
            continue;
        }
        if (tmpl->resultKind != TemplateKind::Symbol) {
            result.diagnostics.push_back(
                {Severity::Error,
                 "only Symbol templates can be imported into a grammar ('" + imp.templateName +
                     "' results in " + std::string(kindName(tmpl->resultKind)) + ")",
                 imp.span,
                 {}});
            ok = false;
            continue;
        }

        Namespace ns;
        ns.alias = alias;
        for (auto& sym : inst.value->symbols) {
            sym.namespaceAlias = alias;
            ns.members.push_back(sym.id);
            g.symbols.push_back(std::move(sym));
        }
        g.namespaces.push_back(std::move(ns));
    }

    g.symbols.insert(g.symbols.end(), std::make_move_iterator(host.begin()),
                     std::make_move_iterator(host.end()));

    auto refDiags = resolveReferences(g);
    result.diagnostics.insert(result.diagnostics.end(), refDiags.begin(), refDiags.end());

    if (ok && !hasErrors(result.diagnostics)) result.value = std::move(g);
    return result;
}

}  // namespace gramkit
