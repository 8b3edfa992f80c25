#include "gramkit/query.hpp"

#include <algorithm>

namespace gramkit {

namespace {

// Unification key of a symbol reference: resolved refs unify by target
// symbol, undeclared names by name.
std::string refKey(const Expression& ref) {
    if (ref.resolvedSymbol) return "#" + std::to_string(ref.resolvedSymbol.value);
    return "@" + ref.text;
}

std::string symbolKey(const Symbol& s) { return "#" + std::to_string(s.id.value); }

// Node a symbol variable exports for a given key: the symbol itself, or the
// canonical first occurrence of an undeclared name.
BoundTarget targetForKey(const Grammar& g, const std::string& key) {
    BoundTarget t;
    if (key[0] == '#') {
        t.nodes.push_back(NodeId{static_cast<std::uint32_t>(std::stoul(key.substr(1)))});
    } else {
        t.nodes.push_back(canonicalUndeclaredRef(g, key.substr(1)));
    }
    return t;
}

struct Env {
    Binding binding;
    // Unification keys of symbol variables (parallel to binding entries).
    std::map<std::string, std::string> symKeys;
};

class Matcher {
public:
    explicit Matcher(const Grammar& g) : g_(g) {}

    std::vector<Env> matchExpr(const PatternExpr& p, const Expression& n, const Env& env) const {
        switch (p.kind) {
            case PatternExpr::Kind::Var: {
                if (n.kind != Expression::Kind::SymbolRef) return {};
                return bindSymbolVar(p.text, refKey(n), env);
            }
            case PatternExpr::Kind::Wildcard: return {env};
            case PatternExpr::Kind::CaptureWild: {
                Env e = env;
                BoundTarget t;
                t.nodes.push_back(n.id);
                e.binding[p.text] = std::move(t);
                return {std::move(e)};
            }
            case PatternExpr::Kind::Capture: {
                std::vector<Env> inner = matchExpr(p.children.front(), n, env);
                for (auto& e : inner) {
                    BoundTarget t;
                    t.nodes.push_back(n.id);
                    e.binding[p.text] = std::move(t);
                }
                return inner;
            }
            case PatternExpr::Kind::StringLiteral:
                if (n.kind == Expression::Kind::StringLiteral && n.text == p.text) return {env};
                return {};
            case PatternExpr::Kind::CharClass:
                if (n.kind == Expression::Kind::CharClass && n.ranges == p.ranges) return {env};
                return {};
            case PatternExpr::Kind::Iteration:
                if (n.kind != Expression::Kind::Iteration || n.iter != p.iter) return {};
                return matchExpr(p.children.front(), n.children.front(), env);
            case PatternExpr::Kind::Alternative: {
                if (n.kind != Expression::Kind::Alternative) return {};
                if (n.children.size() != p.children.size()) return {};
                std::vector<Env> envs{env};
                for (std::size_t i = 0; i < p.children.size(); ++i) {
                    std::vector<Env> next;
                    for (const auto& e : envs) {
                        auto sub = matchExpr(p.children[i], n.children[i], e);
                        next.insert(next.end(), sub.begin(), sub.end());
                    }
                    envs = std::move(next);
                    if (envs.empty()) return {};
                }
                return envs;
            }
            case PatternExpr::Kind::Sequence: {
                // A non-sequence node is treated as the one-term sequence [n],
                // so `Rec ..` still matches a single-reference body.
                const std::vector<Expression>* terms;
                std::vector<Expression> single;
                NodeId parent;
                if (n.kind == Expression::Kind::Sequence) {
                    terms = &n.children;
                    parent = n.id;
                } else {
                    single.push_back(n);
                    terms = &single;
                    parent = n.id;
                }
                return matchSeq(p.children, 0, *terms, 0, parent, env);
            }
        }
        return {};
    }

    std::vector<Env> matchSeq(const std::vector<PatternExpr>& ps, std::size_t pi,
                              const std::vector<Expression>& ts, std::size_t ti, NodeId parent,
                              const Env& env) const {
        if (pi == ps.size()) {
            if (ti == ts.size()) return {env};
            return {};
        }
        const PatternExpr& p = ps[pi];
        if (p.kind == PatternExpr::Kind::Wildcard || p.kind == PatternExpr::Kind::CaptureWild) {
            // A sequence-position wildcard absorbs a possibly-empty run of
            // consecutive terms; runs are enumerated shortest-first.
            std::vector<Env> out;
            for (std::size_t len = 0; ti + len <= ts.size(); ++len) {
                Env e = env;
                if (p.kind == PatternExpr::Kind::CaptureWild) {
                    BoundTarget t;
                    t.isRun = true;
                    t.parent = parent;
                    t.first = static_cast<int>(ti);
                    for (std::size_t k = 0; k < len; ++k) t.nodes.push_back(ts[ti + k].id);
                    e.binding[p.text] = std::move(t);
                }
                auto rest = matchSeq(ps, pi + 1, ts, ti + len, parent, e);
                out.insert(out.end(), rest.begin(), rest.end());
            }
            return out;
        }
        if (ti == ts.size()) return {};
        std::vector<Env> out;
        for (const auto& e : matchExpr(p, ts[ti], env)) {
            auto rest = matchSeq(ps, pi + 1, ts, ti + 1, parent, e);
            out.insert(out.end(), rest.begin(), rest.end());
        }
        return out;
    }

    std::vector<Env> bindSymbolVar(const std::string& var, const std::string& key,
                                   const Env& env) const {
        auto it = env.symKeys.find(var);
        if (it != env.symKeys.end()) {
            if (it->second == key) return {env};
            return {};
        }
        Env e = env;
        e.symKeys[var] = key;
        e.binding[var] = targetForKey(g_, key);
        return {std::move(e)};
    }

    // Matches one pattern production against one actual production.
    // A whole-production `X=..` binds the Production node itself.
    std::vector<Env> matchProduction(const PatternExpr& p, const Production& prod,
                                     const Env& env) const {
        if (p.kind == PatternExpr::Kind::CaptureWild) {
            Env e = env;
            BoundTarget t;
            t.nodes.push_back(prod.id);
            e.binding[p.text] = std::move(t);
            return {std::move(e)};
        }
        return matchExpr(p, prod.body, env);
    }

    const Grammar& g_;
};

const AnnotationSet* annotationsOf(const Grammar& g, NodeId id) {
    NodeRef ref;
    if (!findNode(g, id, ref)) return nullptr;
    return ref.annotations;
}

}  // namespace

bool evalPredicate(const Predicate& pred, const AnnotationSet& annotations) {
    const Attribute* attr = annotations.find(pred.attribute);
    switch (pred.kind) {
        case Predicate::Kind::Present: return attr != nullptr;
        case Predicate::Kind::Absent: return attr == nullptr;
        case Predicate::Kind::Equals:
            return attr && attr->value.has_value() && *attr->value == pred.value;
        case Predicate::Kind::HasType:
            return attr && attr->value.has_value() && attr->value->kind() == pred.type;
    }
    return false;
}

std::vector<Binding> matchPattern(const PatternExpr& pattern, const Expression& node,
                                  const Grammar& grammar, const Binding& env) {
    Env e;
    e.binding = env;
    // Rebuild unification keys for symbol-variable entries of the seed
    // binding (single nodes that are symbols or references).
    for (const auto& [var, target] : env) {
        if (target.nodes.size() != 1) continue;
        NodeRef ref;
        if (!findNode(grammar, target.nodes.front(), ref)) continue;
        if (ref.kind == NodeKind::Symbol) {
            e.symKeys[var] = symbolKey(*ref.symbol);
        } else if (ref.kind == NodeKind::Expression &&
                   ref.expression->kind == Expression::Kind::SymbolRef &&
                   !ref.expression->resolvedSymbol) {
            e.symKeys[var] = "@" + ref.expression->text;
        }
    }
    std::vector<Binding> out;
    for (auto& r : Matcher(grammar).matchExpr(pattern, node, e)) out.push_back(std::move(r.binding));
    return out;
}

namespace {

// Injective, order-free assignment of pattern productions to actual
// productions, enumerated in ascending index order.
void enumerateAssignments(std::size_t patterns, std::size_t actuals,
                          std::vector<int>& current, std::vector<char>& used,
                          std::vector<std::vector<int>>& out) {
    if (current.size() == patterns) {
        out.push_back(current);
        return;
    }
    for (std::size_t j = 0; j < actuals; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        current.push_back(static_cast<int>(j));
        enumerateAssignments(patterns, actuals, current, used, out);
        current.pop_back();
        used[j] = 0;
    }
}

}  // namespace

std::vector<Binding> matchQuery(const Query& query, const Grammar& grammar) {
    Matcher matcher(grammar);
    std::vector<Env> envs;

    if (query.hasRulePattern) {
        const RulePattern& rp = query.rulePattern;
        for (const auto& sym : grammar.symbols) {
            Env head;
            head.symKeys[rp.headVar] = symbolKey(sym);
            BoundTarget t;
            t.nodes.push_back(sym.id);
            head.binding[rp.headVar] = std::move(t);

            std::vector<std::vector<int>> assignments;
            if (rp.productionPatterns.size() <= sym.productions.size()) {
                std::vector<int> current;
                std::vector<char> used(sym.productions.size(), 0);
                enumerateAssignments(rp.productionPatterns.size(), sym.productions.size(),
                                     current, used, assignments);
            }
            for (const auto& assignment : assignments) {
                std::vector<Env> cur{head};
                for (std::size_t i = 0; i < assignment.size() && !cur.empty(); ++i) {
                    std::vector<Env> next;
                    for (const auto& e : cur) {
                        auto sub = matcher.matchProduction(rp.productionPatterns[i],
                                                           sym.productions[assignment[i]], e);
                        next.insert(next.end(), sub.begin(), sub.end());
                    }
                    cur = std::move(next);
                }
                envs.insert(envs.end(), cur.begin(), cur.end());
            }
        }
    } else {
        envs.push_back(Env{});
    }

    // Metadata patterns: bound variables are filtered, free variables range
    // over all symbols of the grammar in document order.
    for (const auto& mp : query.metaPatterns) {
        std::vector<Env> next;
        for (const auto& e : envs) {
            auto bound = e.binding.find(mp.var);
            if (bound != e.binding.end()) {
                if (bound->second.nodes.size() != 1) continue;
                const AnnotationSet* ann = annotationsOf(grammar, bound->second.nodes.front());
                if (!ann) continue;
                bool ok = true;
                for (const auto& pred : mp.predicates)
                    if (!evalPredicate(pred, *ann)) {
                        ok = false;
                        break;
                    }
                if (ok) next.push_back(e);
            } else {
                for (const auto& sym : grammar.symbols) {
                    bool ok = true;
                    for (const auto& pred : mp.predicates)
                        if (!evalPredicate(pred, sym.annotations)) {
                            ok = false;
                            break;
                        }
                    if (!ok) continue;
                    Env extended = e;
                    extended.symKeys[mp.var] = symbolKey(sym);
                    BoundTarget t;
                    t.nodes.push_back(sym.id);
                    extended.binding[mp.var] = std::move(t);
                    next.push_back(std::move(extended));
                }
            }
        }
        envs = std::move(next);
    }

    // Distinct bindings only, first occurrence kept.
    std::vector<Binding> out;
    for (auto& e : envs) {
        bool dup = false;
        for (const auto& b : out)
            if (b == e.binding) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(e.binding));
    }
    return out;
}

namespace {

void collectVars(const PatternExpr& p, std::vector<std::string>& out) {
    switch (p.kind) {
        case PatternExpr::Kind::Var:
        case PatternExpr::Kind::Capture:
        case PatternExpr::Kind::CaptureWild:
            if (std::find(out.begin(), out.end(), p.text) == out.end()) out.push_back(p.text);
            break;
        default: break;
    }
    for (const auto& c : p.children) collectVars(c, out);
}

}  // namespace

std::vector<std::string> queryVariables(const Query& query) {
    std::vector<std::string> out;
    if (query.hasRulePattern) {
        out.push_back(query.rulePattern.headVar);
        for (const auto& pp : query.rulePattern.productionPatterns) collectVars(pp, out);
    }
    for (const auto& mp : query.metaPatterns)
        if (std::find(out.begin(), out.end(), mp.var) == out.end()) out.push_back(mp.var);
    return out;
}

}  // namespace gramkit
