#pragma once

#include <map>
#include <string>
#include <vector>

#include "gramkit/grammar.hpp"

namespace gramkit {

/// Structural pattern over production bodies. Identifiers are unifying
/// variables that match symbol references; `..` is a wildcard; `X=(...)`
/// captures the matched subexpression and `X=..` captures whatever a
/// wildcard in that position absorbs.
struct PatternExpr {
    enum class Kind {
        Sequence,
        Alternative,
        Iteration,
        StringLiteral,
        CharClass,
        Var,          // identifier: matches one SymbolRef
        Wildcard,     // ..
        Capture,      // X=( inner )
        CaptureWild,  // X=..
    };

    Kind kind = Kind::Wildcard;
    std::vector<PatternExpr> children;  // Sequence/Alternative terms, Iteration/Capture inner
    Expression::Iter iter = Expression::Iter::Star;
    std::string text;                   // Var / Capture / CaptureWild name, literal text
    std::vector<Expression::CharRange> ranges;
    SourceSpan span;
};

/// `Head -> pattern || pattern ;` — Head is a variable binding the symbol.
struct RulePattern {
    std::string headVar;
    std::vector<PatternExpr> productionPatterns;
    SourceSpan span;
};

/// One condition on a node's annotations.
struct Predicate {
    enum class Kind { Present, Absent, Equals, HasType };

    Kind kind = Kind::Present;
    std::string attribute;
    Value value;              // Equals
    Value::Kind type = Value::Kind::Identifier;  // HasType
    SourceSpan span;
};

/// `V { predicates }` — restricts the node bound to V; a variable not bound
/// by the rule pattern ranges over all symbols of the grammar.
struct MetaPattern {
    std::string var;
    std::vector<Predicate> predicates;
    SourceSpan span;
};

struct Query {
    bool hasRulePattern = false;
    RulePattern rulePattern;
    std::vector<MetaPattern> metaPatterns;
    SourceSpan span;
};

/// Target of one bound variable. Normally a single node (symbol, production
/// or expression). A sequence-position `X=..` may capture a run of zero or
/// more consecutive terms; `first`/`parent` record the run's position for
/// printing. Equality — and match de-duplication — looks at `nodes` only.
struct BoundTarget {
    std::vector<NodeId> nodes;
    bool isRun = false;
    NodeId parent{};  // owning sequence (or sole term's production body) for runs
    int first = -1;   // run start index

    bool single() const { return nodes.size() == 1; }

    friend bool operator==(const BoundTarget& a, const BoundTarget& b) {
        return a.nodes == b.nodes;
    }
    friend bool operator<(const BoundTarget& a, const BoundTarget& b) {
        return a.nodes < b.nodes;
    }
};

using Binding = std::map<std::string, BoundTarget>;

/// All matches of `query` against `grammar`, deterministically ordered
/// (symbol order, then production order, then position order) and with
/// duplicate bindings removed. Occurrences of one variable unify: every
/// site must reference the same symbol (undeclared names unify by name).
std::vector<Binding> matchQuery(const Query& query, const Grammar& grammar);

/// Matches of one pattern against one expression node, extending `env`;
/// every consistent extension is returned.
std::vector<Binding> matchPattern(const PatternExpr& pattern, const Expression& node,
                                  const Grammar& grammar, const Binding& env);

/// Evaluate one predicate against an annotation set.
bool evalPredicate(const Predicate& pred, const AnnotationSet& annotations);

/// Variables a query binds: the head variable, body variables, capture
/// names and metadata-pattern variables, in order of first appearance.
std::vector<std::string> queryVariables(const Query& query);

}  // namespace gramkit
