#include "support/random_gen.hpp"

#include <algorithm>
#include <set>

namespace testgen {

using namespace gramkit;

namespace {

int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(std::mt19937& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

struct GenContext {
    std::mt19937& rng;
    const GrammarOptions& opt;
    Grammar& g;
    std::vector<std::string> symbolNames;
    std::vector<std::string> undeclared;
};

Expression makeNode(GenContext& cx, Expression::Kind kind) {
    Expression e;
    e.kind = kind;
    e.id = cx.g.allocateId();
    return e;
}

Expression randomAtom(GenContext& cx) {
    int roll = pick(cx.rng, 0, 9);
    if (roll < 5) {
        Expression e = makeNode(cx, Expression::Kind::SymbolRef);
        if (!cx.opt.onlyDeclaredRefs && !cx.undeclared.empty() && chance(cx.rng, 0.3))
            e.text = cx.undeclared[pick(cx.rng, 0, int(cx.undeclared.size()) - 1)];
        else
            e.text = cx.symbolNames[pick(cx.rng, 0, int(cx.symbolNames.size()) - 1)];
        return e;
    }
    if (roll < 8 || !cx.opt.allowCharClasses) {
        Expression e = makeNode(cx, Expression::Kind::StringLiteral);
        e.text = cx.opt.literals[pick(cx.rng, 0, int(cx.opt.literals.size()) - 1)];
        return e;
    }
    Expression e = makeNode(cx, Expression::Kind::CharClass);
    int ranges = pick(cx.rng, 1, 2);
    for (int i = 0; i < ranges; ++i) {
        char lo = static_cast<char>('a' + pick(cx.rng, 0, 9));
        char hi = static_cast<char>(lo + pick(cx.rng, 0, 3));
        e.ranges.push_back({lo, hi});
    }
    return e;
}

Expression randomExpr(GenContext& cx, int depth) {
    if (depth <= 0) return randomAtom(cx);
    switch (pick(cx.rng, 0, 5)) {
        case 0: {
            Expression e = makeNode(cx, Expression::Kind::Sequence);
            int n = pick(cx.rng, 2, 3);
            for (int i = 0; i < n; ++i) e.children.push_back(randomExpr(cx, depth - 1));
            return e;
        }
        case 1: {
            Expression e = makeNode(cx, Expression::Kind::Alternative);
            int n = pick(cx.rng, 2, 3);
            for (int i = 0; i < n; ++i) e.children.push_back(randomExpr(cx, depth - 1));
            return e;
        }
        case 2: {
            Expression e = makeNode(cx, Expression::Kind::Iteration);
            e.iter = static_cast<Expression::Iter>(pick(cx.rng, 0, 2));
            e.children.push_back(randomExpr(cx, depth - 1));
            return e;
        }
        default: return randomAtom(cx);
    }
}

}  // namespace

Grammar randomGrammar(std::mt19937& rng, const GrammarOptions& opt) {
    Grammar g;
    GenContext cx{rng, opt, g, {}, {}};

    int symbols = pick(rng, 1, opt.maxSymbols);
    for (int i = 0; i < symbols; ++i) {
        std::string name;
        if (opt.lowercaseNames) {
            name = "sym" + std::to_string(i);
        } else {
            switch (pick(rng, 0, 2)) {
                case 0: name = "Sym" + std::to_string(i); break;
                case 1: name = "sym" + std::to_string(i); break;
                default: name = "TOK" + std::to_string(i); break;
            }
        }
        cx.symbolNames.push_back(name);
    }
    if (!opt.onlyDeclaredRefs)
        cx.undeclared = {"Extra", "ID", "undeclared" };

    for (int i = 0; i < symbols; ++i) {
        Symbol s;
        s.name = cx.symbolNames[i];
        int prods = pick(rng, 1, opt.maxProductions);
        for (int p = 0; p < prods; ++p) {
            Production prod;
            prod.body = randomExpr(cx, pick(rng, 0, opt.maxDepth - 1));
            prod.id = g.allocateId();
            s.productions.push_back(std::move(prod));
        }
        s.id = g.allocateId();
        g.symbols.push_back(std::move(s));
    }
    resolveReferences(g);
    return g;
}

void randomAnnotations(std::mt19937& rng, Grammar& g) {
    for (auto& s : g.symbols) {
        if (chance(rng, 0.5)) continue;
        if (chance(rng, 0.5)) attach(g, s.id, {"operation", std::nullopt});
        if (chance(rng, 0.4))
            attach(g, s.id, {"type", Value::identifier(chance(rng, 0.5) ? "Nonterminal"
                                                                        : "Terminal")});
        if (chance(rng, 0.3))
            attach(g, s.id,
                   {"associativity", chance(rng, 0.5) ? Value::identifier("left")
                                                      : Value::string("left")});
        if (chance(rng, 0.3)) attach(g, s.id, {"commutative", std::nullopt});
        if (chance(rng, 0.2)) attach(g, s.id, {"prio", Value::integer(pick(rng, 0, 3))});
    }
}

namespace {

struct QueryContext {
    std::mt19937& rng;
    const QueryOptions& opt;
    std::vector<std::string> varNames;  // variables introduced so far
    int wildcards = 0;
    int captures = 0;

    std::string freshOrReusedVar() {
        if (!varNames.empty() && int(varNames.size()) >= opt.maxVars)
            return varNames[pick(rng, 0, int(varNames.size()) - 1)];
        if (!varNames.empty() && chance(rng, 0.3))
            return varNames[pick(rng, 0, int(varNames.size()) - 1)];
        std::string v = "V" + std::to_string(varNames.size());
        varNames.push_back(v);
        return v;
    }
};

PatternExpr abstractExpr(QueryContext& qx, const Expression& e) {
    // Occasionally erase a whole subtree into a wildcard or capture.
    if (qx.wildcards < qx.opt.maxWildcards && chance(qx.rng, 0.15)) {
        ++qx.wildcards;
        PatternExpr p;
        if (chance(qx.rng, 0.3)) {
            p.kind = PatternExpr::Kind::CaptureWild;
            p.text = "W" + std::to_string(qx.wildcards);
        } else {
            p.kind = PatternExpr::Kind::Wildcard;
        }
        return p;
    }
    if (qx.captures < 1 && e.kind != Expression::Kind::SymbolRef && chance(qx.rng, 0.1)) {
        ++qx.captures;
        PatternExpr p;
        p.kind = PatternExpr::Kind::Capture;
        p.text = "Cap" + std::to_string(qx.captures);
        p.children.push_back(abstractExpr(qx, e));
        return p;
    }
    PatternExpr p;
    switch (e.kind) {
        case Expression::Kind::SymbolRef:
            p.kind = PatternExpr::Kind::Var;
            p.text = qx.freshOrReusedVar();
            return p;
        case Expression::Kind::StringLiteral:
            p.kind = PatternExpr::Kind::StringLiteral;
            p.text = e.text;
            return p;
        case Expression::Kind::CharClass:
            p.kind = PatternExpr::Kind::CharClass;
            p.ranges = e.ranges;
            return p;
        case Expression::Kind::Iteration:
            p.kind = PatternExpr::Kind::Iteration;
            p.iter = e.iter;
            p.children.push_back(abstractExpr(qx, e.children.front()));
            return p;
        case Expression::Kind::Sequence: {
            p.kind = PatternExpr::Kind::Sequence;
            for (const auto& c : e.children) p.children.push_back(abstractExpr(qx, c));
            // Sometimes chop the tail into a trailing wildcard.
            if (qx.wildcards < qx.opt.maxWildcards && p.children.size() > 2 &&
                chance(qx.rng, 0.3)) {
                ++qx.wildcards;
                p.children.resize(1 + pick(qx.rng, 0, int(p.children.size()) - 2));
                PatternExpr w;
                w.kind = PatternExpr::Kind::Wildcard;
                p.children.push_back(std::move(w));
            }
            return p;
        }
        case Expression::Kind::Alternative: {
            p.kind = PatternExpr::Kind::Alternative;
            for (const auto& c : e.children) p.children.push_back(abstractExpr(qx, c));
            return p;
        }
        case Expression::Kind::Placeholder:
            p.kind = PatternExpr::Kind::Wildcard;
            return p;
    }
    return p;
}

}  // namespace

Query randomQuery(std::mt19937& rng, const Grammar& g, const QueryOptions& opt) {
    QueryContext qx{rng, opt};
    Query q;
    if (!g.symbols.empty() && chance(rng, 0.85)) {
        const Symbol& sym = g.symbols[pick(rng, 0, int(g.symbols.size()) - 1)];
        q.hasRulePattern = true;
        q.rulePattern.headVar = qx.freshOrReusedVar();
        int count = std::min<int>(pick(rng, 1, 2), int(sym.productions.size()));
        for (int i = 0; i < count; ++i) {
            const Production& prod = sym.productions[pick(rng, 0, int(sym.productions.size()) - 1)];
            q.rulePattern.productionPatterns.push_back(abstractExpr(qx, prod.body));
        }
    }
    if (opt.allowMetaPatterns && (chance(rng, 0.4) || !q.hasRulePattern)) {
        MetaPattern mp;
        if (!qx.varNames.empty() && chance(rng, 0.6)) {
            mp.var = qx.varNames[pick(rng, 0, int(qx.varNames.size()) - 1)];
        } else {
            mp.var = qx.freshOrReusedVar();
        }
        int preds = pick(rng, 1, 2);
        const char* names[] = {"operation", "type", "associativity", "commutative", "prio"};
        std::set<std::string> used;
        for (int i = 0; i < preds; ++i) {
            Predicate pr;
            pr.attribute = names[pick(rng, 0, 4)];
            if (!used.insert(pr.attribute).second) continue;
            switch (pick(rng, 0, 3)) {
                case 0: pr.kind = Predicate::Kind::Present; break;
                case 1: pr.kind = Predicate::Kind::Absent; break;
                case 2:
                    pr.kind = Predicate::Kind::Equals;
                    pr.value = Value::identifier("Nonterminal");
                    break;
                default:
                    pr.kind = Predicate::Kind::HasType;
                    pr.type = chance(rng, 0.5) ? Value::Kind::Identifier : Value::Kind::String;
                    break;
            }
            mp.predicates.push_back(std::move(pr));
        }
        q.metaPatterns.push_back(std::move(mp));
    }
    return q;
}

}  // namespace testgen
