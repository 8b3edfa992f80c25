#include <doctest.h>

#include <random>

#include "gramkit/parser.hpp"
#include "gramkit/query.hpp"
#include "support/match_oracle.hpp"
#include "support/random_gen.hpp"
#include "support/test_util.hpp"

using namespace gramkit;
using testutil::readFixture;

namespace {

Grammar parseOk(const std::string& text) {
    auto r = parseGrammar(text, "test.grammar");
    REQUIRE(r.value.has_value());
    return std::move(*r.value);
}

Query queryOk(const std::string& text) {
    auto r = parseQuery(text, "test.query");
    REQUIRE(r.value.has_value());
    return std::move(*r.value);
}

NodeId symId(const Grammar& g, const std::string& name) {
    const Symbol* s = resolveSymbol(g, name);
    REQUIRE(s != nullptr);
    return s->id;
}

}  // namespace

TEST_CASE("binary-operation query matches the two rules of section 3.3") {
    Grammar g = parseOk(readFixture("s33_binary_ops.grammar"));
    Query q = queryOk(readFixture("s33_binary_op.query"));
    auto bindings = matchQuery(q, g);
    REQUIRE(bindings.size() == 2);

    // {Op=Product, Arg=Factor, Sign=MultOrDiv}
    const Binding& first = bindings[0];
    CHECK(first.at("Op").nodes.front() == symId(g, "Product"));
    NodeRef arg;
    REQUIRE(findNode(g, first.at("Arg").nodes.front(), arg));
    CHECK(arg.expression->text == "Factor");
    NodeRef sign;
    REQUIRE(findNode(g, first.at("Sign").nodes.front(), sign));
    CHECK(sign.expression->text == "MultOrDiv");

    // {Op=Sum, Arg=Product, Sign=PlusOrMinus}
    const Binding& second = bindings[1];
    CHECK(second.at("Op").nodes.front() == symId(g, "Sum"));
    // Product is declared here, so Arg binds the symbol itself.
    CHECK(second.at("Arg").nodes.front() == symId(g, "Product"));
    NodeRef plusMinus;
    REQUIRE(findNode(g, second.at("Sign").nodes.front(), plusMinus));
    CHECK(plusMinus.expression->text == "PlusOrMinus");
}

TEST_CASE("left-recursion query unifies head and first term") {
    Grammar g = parseOk("Expr -> Expr '+' Term || Term ;\nTerm -> ID ;\n");
    Query q = queryOk(readFixture("s33_leftrec.query"));
    auto bindings = matchQuery(q, g);
    REQUIRE(bindings.size() == 1);
    CHECK(bindings[0].at("Rec").nodes.front() == symId(g, "Expr"));
}

TEST_CASE("left-recursion query matches the degenerate self rule") {
    Grammar g = parseOk("Loop -> Loop ;\n");
    auto bindings = matchQuery(queryOk("Rec -> Rec ..;"), g);
    REQUIRE(bindings.size() == 1);
    CHECK(bindings[0].at("Rec").nodes.front() == symId(g, "Loop"));
}

TEST_CASE("captured wildcard binds the rest of a production") {
    Grammar g = parseOk("Expr -> Expr '+' Term || Term ;\nTerm -> ID ;\n");
    auto bindings = matchQuery(queryOk(readFixture("s33_leftrec_capture.query")), g);
    REQUIRE(bindings.size() == 1);
    const BoundTarget& rest = bindings[0].at("Rest");
    CHECK(rest.isRun);
    REQUIRE(rest.nodes.size() == 2);  // '+' Term
    NodeRef plus;
    REQUIRE(findNode(g, rest.nodes[0], plus));
    CHECK(plus.expression->kind == Expression::Kind::StringLiteral);
    CHECK(plus.expression->text == "+");
}

TEST_CASE("subexpression capture: A -> Alt=(B | C)") {
    Grammar g = parseOk("X -> (Y | Z) ;\n");
    auto bindings = matchQuery(queryOk(readFixture("s33_capture.query")), g);
    REQUIRE(bindings.size() == 1);
    const Binding& b = bindings[0];
    CHECK(b.at("A").nodes.front() == symId(g, "X"));
    NodeRef alt;
    REQUIRE(findNode(g, b.at("Alt").nodes.front(), alt));
    CHECK(alt.expression->kind == Expression::Kind::Alternative);
    NodeRef bRef;
    REQUIRE(findNode(g, b.at("B").nodes.front(), bRef));
    CHECK(bRef.expression->text == "Y");
    NodeRef cRef;
    REQUIRE(findNode(g, b.at("C").nodes.front(), cRef));
    CHECK(cRef.expression->text == "Z");
}

TEST_CASE("metadata queries filter on annotations") {
    Grammar g = parseOk("Plus -> x ;\nTimes -> y ;\n");
    NodeId plus = symId(g, "Plus");
    attach(g, plus, {"type", Value::identifier("Nonterminal")});
    attach(g, plus, {"operation", std::nullopt});
    attach(g, plus, {"associativity", Value::identifier("left")});

    Query q = queryOk(readFixture("s33_meta.query"));
    auto bindings = matchQuery(q, g);
    REQUIRE(bindings.size() == 1);
    CHECK(bindings[0].at("N").nodes.front() == plus);

    attach(g, plus, {"commutative", std::nullopt});
    CHECK(matchQuery(q, g).empty());
}

TEST_CASE("matchPattern: variables refuse literals, wildcards accept anything") {
    Grammar g = parseOk("A -> Factor '*' ;\n");
    const Expression& body = resolveSymbol(g, "A")->productions[0].body;
    const Expression& ref = body.children[0];
    const Expression& lit = body.children[1];

    PatternExpr var;
    var.kind = PatternExpr::Kind::Var;
    var.text = "Arg";
    auto refMatches = matchPattern(var, ref, g, {});
    REQUIRE(refMatches.size() == 1);
    CHECK(refMatches[0].count("Arg") == 1);
    CHECK(matchPattern(var, lit, g, {}).empty());

    PatternExpr wild;
    wild.kind = PatternExpr::Kind::Wildcard;
    auto wildMatches = matchPattern(wild, lit, g, {});
    REQUIRE(wildMatches.size() == 1);
    CHECK(wildMatches[0].empty());
}

TEST_CASE("matchPattern respects a pre-seeded environment") {
    Grammar g = parseOk("A -> X Y ;\nX -> 'x' ;\nY -> 'y' ;\n");
    const Expression& body = resolveSymbol(g, "A")->productions[0].body;
    PatternExpr var;
    var.kind = PatternExpr::Kind::Var;
    var.text = "V";

    Binding env;
    BoundTarget t;
    t.nodes.push_back(symId(g, "X"));
    env["V"] = t;
    CHECK(matchPattern(var, body.children[0], g, env).size() == 1);  // X unifies
    CHECK(matchPattern(var, body.children[1], g, env).empty());     // Y does not
}

TEST_CASE("evalPredicate covers the four predicate kinds") {
    AnnotationSet ann;
    ann.set({"operation", std::nullopt});
    ann.set({"type", Value::identifier("Nonterminal")});
    ann.set({"associativity", Value::identifier("left")});

    CHECK(evalPredicate({Predicate::Kind::Absent, "commutative", {}, {}, {}}, ann));
    CHECK(!evalPredicate({Predicate::Kind::Absent, "operation", {}, {}, {}}, ann));
    CHECK(evalPredicate({Predicate::Kind::Present, "operation", {}, {}, {}}, ann));

    Predicate hasType{Predicate::Kind::HasType, "associativity", {}, Value::Kind::Identifier, {}};
    CHECK(evalPredicate(hasType, ann));
    AnnotationSet strAnn;
    strAnn.set({"associativity", Value::string("left")});
    CHECK(!evalPredicate(hasType, strAnn));

    Predicate eq{Predicate::Kind::Equals, "type", Value::identifier("Nonterminal"), {}, {}};
    CHECK(evalPredicate(eq, ann));
    // Flag attributes fail every type and equality test.
    Predicate flagType{Predicate::Kind::HasType, "operation", {}, Value::Kind::Identifier, {}};
    CHECK(!evalPredicate(flagType, ann));
}

TEST_CASE("repeated queries return identical binding lists") {
    Grammar g = parseOk(readFixture("s33_binary_ops.grammar"));
    Query q = queryOk(readFixture("s33_binary_op.query"));
    auto a = matchQuery(q, g);
    auto b = matchQuery(q, g);
    CHECK(a == b);
}

TEST_CASE("duplicate wildcard splits collapse to one binding") {
    // Both splits of the two wildcards produce the same variable targets.
    Grammar g = parseOk("A -> x y z ;\n");
    auto bindings = matchQuery(queryOk("H -> .. .. ;"), g);
    CHECK(bindings.size() == 1);
}

TEST_CASE("engine agrees with the brute-force oracle on the paper queries") {
    Grammar g = parseOk(readFixture("s33_binary_ops.grammar"));
    for (const char* name :
         {"s33_binary_op.query", "s33_leftrec.query", "s33_leftrec_capture.query"}) {
        CAPTURE(name);
        Query q = queryOk(readFixture(name));
        CHECK(oracle::sameBindingSets(matchQuery(q, g), oracle::matchQueryOracle(q, g)));
    }
}

TEST_CASE("engine agrees with the brute-force oracle on random cases") {
    std::mt19937 rng(20240817);
    testgen::GrammarOptions gopt;
    gopt.maxSymbols = 5;
    testgen::QueryOptions qopt;
    qopt.maxVars = 3;
    for (int i = 0; i < 60; ++i) {
        Grammar g = testgen::randomGrammar(rng, gopt);
        testgen::randomAnnotations(rng, g);
        Query q = testgen::randomQuery(rng, g, qopt);
        auto engine = matchQuery(q, g);
        auto reference = oracle::matchQueryOracle(q, g);
        CAPTURE(i);
        CHECK(oracle::sameBindingSets(engine, reference));
    }
}

TEST_CASE("predicate monotonicity: Absent never enlarges a match set") {
    std::mt19937 rng(7);
    testgen::GrammarOptions gopt;
    gopt.maxSymbols = 5;
    for (int i = 0; i < 20; ++i) {
        Grammar g = testgen::randomGrammar(rng, gopt);
        testgen::randomAnnotations(rng, g);
        Query base;
        MetaPattern mp;
        mp.var = "N";
        mp.predicates.push_back({Predicate::Kind::Present, "operation", {}, {}, {}});
        base.metaPatterns.push_back(mp);
        auto baseline = matchQuery(base, g).size();

        Query narrowed = base;
        narrowed.metaPatterns[0].predicates.push_back(
            {Predicate::Kind::Absent, "commutative", {}, {}, {}});
        CHECK(matchQuery(narrowed, g).size() <= baseline);

        // Satisfying the Present predicate on more nodes never shrinks it.
        Grammar annotated = g;
        for (auto& s : annotated.symbols)
            if (!s.annotations.has("operation")) {
                attach(annotated, s.id, {"operation", std::nullopt});
                break;
            }
        CHECK(matchQuery(base, annotated).size() >= baseline);
    }
}
