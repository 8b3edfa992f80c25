#include "gramkit/grammar.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gramkit {

namespace {

void walkExpr(const Expression& e, std::vector<NodeRef>& out) {
    out.push_back(NodeRef{NodeKind::Expression, e.id, nullptr, nullptr, &e, &e.annotations, e.span});
    for (const auto& c : e.children) walkExpr(c, out);
}

}  // namespace

std::vector<NodeRef> walk(const Grammar& g) {
    std::vector<NodeRef> out;
    out.push_back(NodeRef{NodeKind::Grammar, g.id, nullptr, nullptr, nullptr, &g.annotations, g.span});
    for (const auto& s : g.symbols) {
        out.push_back(NodeRef{NodeKind::Symbol, s.id, &s, nullptr, nullptr, &s.annotations, s.span});
        for (const auto& p : s.productions) {
            out.push_back(NodeRef{NodeKind::Production, p.id, &s, &p, nullptr, &p.annotations, p.span});
            walkExpr(p.body, out);
        }
    }
    return out;
}

bool findNode(const Grammar& g, NodeId id, NodeRef& out) {
    for (const auto& n : walk(g)) {
        if (n.id == id) {
            out = n;
            return true;
        }
    }
    return false;
}

namespace {

AnnotationSet* mutableAnnotationsOfExpr(Expression& e, NodeId id) {
    if (e.id == id) return &e.annotations;
    for (auto& c : e.children)
        if (AnnotationSet* a = mutableAnnotationsOfExpr(c, id)) return a;
    return nullptr;
}

AnnotationSet* mutableAnnotations(Grammar& g, NodeId id) {
    if (g.id == id) return &g.annotations;
    for (auto& s : g.symbols) {
        if (s.id == id) return &s.annotations;
        for (auto& p : s.productions) {
            if (p.id == id) return &p.annotations;
            if (AnnotationSet* a = mutableAnnotationsOfExpr(p.body, id)) return a;
        }
    }
    return nullptr;
}

}  // namespace

AttachOutcome attach(Grammar& g, NodeId target, Attribute attribute) {
    AnnotationSet* set = mutableAnnotations(g, target);
    if (!set) throw std::invalid_argument("attach: unknown node id " + std::to_string(target.value));
    return set->set(std::move(attribute));
}

const Symbol* resolveSymbol(const Grammar& g, std::string_view name) {
    auto dot = name.find('.');
    if (dot == std::string_view::npos) {
        for (const auto& s : g.symbols)
            if (s.namespaceAlias.empty() && s.name == name) return &s;
        return nullptr;
    }
    std::string_view alias = name.substr(0, dot);
    std::string_view member = name.substr(dot + 1);
    for (const auto& s : g.symbols)
        if (s.namespaceAlias == alias && s.name == member) return &s;
    return nullptr;
}

const Symbol* resolveRef(const Grammar& g, std::string_view name,
                         std::string_view fromNamespace, bool* ambiguous) {
    if (ambiguous) *ambiguous = false;
    if (name.find('.') != std::string_view::npos) return resolveSymbol(g, name);

    if (!fromNamespace.empty()) {
        for (const auto& s : g.symbols)
            if (s.namespaceAlias == fromNamespace && s.name == name) return &s;
    }
    for (const auto& s : g.symbols)
        if (s.namespaceAlias.empty() && s.name == name) return &s;

    // Namespaces in import order; two hits without a root match is ambiguous.
    const Symbol* found = nullptr;
    for (const auto& ns : g.namespaces) {
        if (ns.alias == fromNamespace) continue;
        for (const auto& s : g.symbols) {
            if (s.namespaceAlias == ns.alias && s.name == name) {
                if (found) {
                    if (ambiguous) *ambiguous = true;
                    return nullptr;
                }
                found = &s;
                break;
            }
        }
    }
    return found;
}

namespace {

void resolveExprRefs(Grammar& g, Expression& e, const std::string& fromNs,
                     std::vector<Diagnostic>& diags) {
    if (e.kind == Expression::Kind::SymbolRef) {
        if (!e.resolvedSymbol) {
            bool ambiguous = false;
            const Symbol* target = resolveRef(g, e.text, fromNs, &ambiguous);
            if (target) {
                e.resolvedSymbol = target->id;
            } else if (ambiguous) {
                diags.push_back({Severity::Error,
                                 "ambiguous reference '" + e.text +
                                     "': exported by more than one import (qualify it)",
                                 e.span, e.id});
            } else if (e.text.find('.') != std::string::npos) {
                diags.push_back({Severity::Error,
                                 "unresolved qualified reference '" + e.text + "'", e.span, e.id});
            }
            // Unqualified names with no match stay unresolved: they denote
            // undeclared terminals.
        }
    }
    for (auto& c : e.children) resolveExprRefs(g, c, fromNs, diags);
}

}  // namespace

std::vector<Diagnostic> resolveReferences(Grammar& g) {
    std::vector<Diagnostic> diags;
    for (auto& s : g.symbols)
        for (auto& p : s.productions) resolveExprRefs(g, p.body, s.namespaceAlias, diags);
    return diags;
}

NodeId canonicalUndeclaredRef(const Grammar& g, std::string_view name) {
    for (const auto& n : walk(g)) {
        if (n.kind == NodeKind::Expression && n.expression->kind == Expression::Kind::SymbolRef &&
            !n.expression->resolvedSymbol && n.expression->text == name)
            return n.id;
    }
    return NodeId{};
}

bool structuralEquals(const Expression& a, const Expression& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expression::Kind::Iteration:
            if (a.iter != b.iter) return false;
            break;
        case Expression::Kind::SymbolRef:
        case Expression::Kind::StringLiteral:
        case Expression::Kind::Placeholder:
            if (a.text != b.text) return false;
            break;
        case Expression::Kind::CharClass:
            if (a.ranges != b.ranges) return false;
            break;
        default:
            break;
    }
    if (a.annotations != b.annotations) return false;
    if (a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!structuralEquals(a.children[i], b.children[i])) return false;
    return true;
}

namespace {

bool structuralEquals(const ImportArg& a, const ImportArg& b) {
    if (a.explicitlyEmpty != b.explicitlyEmpty) return false;
    if (a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i)
        if (!structuralEquals(a.items[i], b.items[i])) return false;
    return true;
}

}  // namespace

bool structuralEquals(const Grammar& a, const Grammar& b) {
    if (a.annotations != b.annotations) return false;
    if (a.symbols.size() != b.symbols.size()) return false;
    for (std::size_t i = 0; i < a.symbols.size(); ++i) {
        const Symbol& x = a.symbols[i];
        const Symbol& y = b.symbols[i];
        if (x.name != y.name || x.annotations != y.annotations) return false;
        if (x.productions.size() != y.productions.size()) return false;
        for (std::size_t j = 0; j < x.productions.size(); ++j) {
            if (x.productions[j].annotations != y.productions[j].annotations) return false;
            if (!structuralEquals(x.productions[j].body, y.productions[j].body)) return false;
        }
    }
    if (a.imports.size() != b.imports.size()) return false;
    for (std::size_t i = 0; i < a.imports.size(); ++i) {
        const ImportDecl& x = a.imports[i];
        const ImportDecl& y = b.imports[i];
        if (x.alias != y.alias || x.templateName != y.templateName) return false;
        if (x.args.size() != y.args.size()) return false;
        for (std::size_t j = 0; j < x.args.size(); ++j)
            if (!structuralEquals(x.args[j], y.args[j])) return false;
    }
    return true;
}

namespace {

bool exprPath(const Expression& e, NodeId id, std::string& path) {
    if (e.id == id) return true;
    for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (exprPath(e.children[i], id, path)) {
            path = "[" + std::to_string(i) + "]" + path;
            return true;
        }
    }
    return false;
}

}  // namespace

std::string nodePath(const Grammar& g, NodeId id) {
    if (g.id == id) return "/";
    for (const auto& s : g.symbols) {
        std::string symName = s.namespaceAlias.empty() ? s.name : s.namespaceAlias + "." + s.name;
        if (s.id == id) return symName;
        for (std::size_t i = 0; i < s.productions.size(); ++i) {
            const Production& p = s.productions[i];
            std::string prodPath = symName + "/production[" + std::to_string(i) + "]";
            if (p.id == id) return prodPath;
            std::string sub;
            if (exprPath(p.body, id, sub)) return prodPath + "/expr" + sub;
        }
    }
    return "";
}

std::string formatDiagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << (d.span.file.empty() ? "<input>" : d.span.file) << ":" << d.span.line << ":"
        << d.span.column << ": " << (d.severity == Severity::Error ? "error" : "warning") << ": "
        << d.message;
    return out.str();
}

}  // namespace gramkit
