#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gramkit/node_id.hpp"
#include "gramkit/source.hpp"
#include "gramkit/value.hpp"

namespace gramkit {

/// One node of a production body. The tree mirrors the concrete syntax:
/// parentheses group but create no node, nested same-kind nodes are kept,
/// and Sequence/Alternative always have at least two children.
struct Expression {
    enum class Kind { Sequence, Alternative, Iteration, SymbolRef, StringLiteral, CharClass, Placeholder };
    enum class Iter { Star, Plus, Option };

    struct CharRange {
        char lo = 0;
        char hi = 0;  // inclusive; a single character is the range (c, c)
        friend bool operator==(CharRange a, CharRange b) { return a.lo == b.lo && a.hi == b.hi; }
    };

    Kind kind = Kind::SymbolRef;
    std::vector<Expression> children;  // Sequence terms / Alternative options / Iteration inner (size 1)
    Iter iter = Iter::Star;
    std::string text;                  // SymbolRef name (possibly "alias.Name") / literal text / placeholder name
    std::vector<CharRange> ranges;     // CharClass
    AnnotationSet annotations;
    NodeId id{};
    SourceSpan span;
    NodeId resolvedSymbol{};           // SymbolRef: the target Symbol node, 0 when undeclared
};

struct Production {
    Expression body;
    AnnotationSet annotations;
    NodeId id{};
    SourceSpan span;
};

struct Symbol {
    std::string name;
    std::string namespaceAlias;        // "" for the root namespace
    std::vector<Production> productions;  // nonempty
    AnnotationSet annotations;
    NodeId id{};
    SourceSpan span;
};

/// Scope created by one template instantiation; members are reachable as
/// `alias.Name`.
struct Namespace {
    std::string alias;
    std::vector<NodeId> members;
};

/// One argument of a template import: a single expression, a `||`-separated
/// production list, or the explicit `empty` list.
struct ImportArg {
    std::vector<Expression> items;
    bool explicitlyEmpty = false;
    SourceSpan span;
};

struct ImportDecl {
    std::string alias;                 // "" when anonymous
    std::string templateName;
    std::vector<ImportArg> args;
    SourceSpan span;
};

/// An annotated grammar: ordered symbols, grammar-level annotations, the
/// namespaces produced by imports, and any still-unresolved import
/// declarations. Values are immutable after construction except during a
/// single-owner build or weave phase; copies preserve every NodeId.
struct Grammar {
    Grammar() { id = allocateId(); }

    std::vector<Symbol> symbols;
    AnnotationSet annotations;
    std::vector<Namespace> namespaces;
    std::vector<ImportDecl> imports;   // pending; consumed by resolveImports
    NodeId id{};
    SourceSpan span;

    NodeId allocateId() { return NodeId{nextId++}; }
    std::uint32_t nextId = 1;
};

enum class NodeKind { Grammar, Symbol, Production, Expression };

/// A view of one node found in a grammar. Exactly one of the pointers
/// matching `kind` is set (the grammar itself has none).
struct NodeRef {
    NodeKind kind = NodeKind::Grammar;
    NodeId id{};
    const Symbol* symbol = nullptr;
    const Production* production = nullptr;
    const Expression* expression = nullptr;
    const AnnotationSet* annotations = nullptr;
    SourceSpan span;
};

/// Depth-first pre-order enumeration of every node: the grammar, then each
/// symbol, its productions, and every expression subnode in source order.
std::vector<NodeRef> walk(const Grammar& g);

/// Locate a node by id; kind == Grammar with id 0 when absent.
bool findNode(const Grammar& g, NodeId id, NodeRef& out);

/// Attach an attribute to the node identified by `target`. An existing
/// attribute of the same name is replaced (later writers win). Throws
/// std::invalid_argument for an unknown NodeId.
AttachOutcome attach(Grammar& g, NodeId target, Attribute attribute);

/// Look up a symbol by plain name (root namespace) or `alias.Name`
/// (inside namespace `alias`). Returns nullptr when absent.
const Symbol* resolveSymbol(const Grammar& g, std::string_view name);

/// Resolve `name` as a reference appearing inside namespace `fromNamespace`
/// ("" for host rules): own namespace first, then the root, then namespaces
/// in import order. Ambiguity across namespaces yields nullptr and sets
/// `ambiguous`.
const Symbol* resolveRef(const Grammar& g, std::string_view name,
                         std::string_view fromNamespace, bool* ambiguous = nullptr);

/// Resolve every SymbolRef in the grammar, caching targets in the nodes.
/// Unqualified names that match no symbol stay unresolved (they denote
/// undeclared terminals); qualified names must resolve. Reports qualified
/// failures and ambiguous unqualified references.
std::vector<Diagnostic> resolveReferences(Grammar& g);

/// First SymbolRef node (walk order) carrying this unresolved name; used as
/// the canonical identity of an undeclared symbol. 0 when none exists.
NodeId canonicalUndeclaredRef(const Grammar& g, std::string_view name);

/// Structural equality: symbol order, names, production bodies and
/// annotations. NodeIds, spans, namespace placement and reference-resolution
/// caches are ignored; pending imports are compared.
bool structuralEquals(const Grammar& a, const Grammar& b);
bool structuralEquals(const Expression& a, const Expression& b);

/// Stable textual address of a node: `/` for the grammar, `Name` or
/// `alias.Name` for symbols, `Sym/production[i]` and
/// `Sym/production[i]/expr[path...]` below that. Empty for unknown ids.
std::string nodePath(const Grammar& g, NodeId id);

}  // namespace gramkit
