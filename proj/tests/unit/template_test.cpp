#include <doctest.h>

#include <set>

#include "gramkit/parser.hpp"
#include "gramkit/printer.hpp"
#include "gramkit/templates.hpp"
#include "support/test_util.hpp"

using namespace gramkit;
using testutil::readFixture;

namespace {

Grammar parseOk(const std::string& text, const std::string& file = "test.grammar") {
    auto r = parseGrammar(text, file);
    REQUIRE(r.value.has_value());
    return std::move(*r.value);
}

TemplateLibrary libraryOk(const std::string& fixture) {
    auto r = parseTemplates(readFixture(fixture), fixture);
    REQUIRE(r.value.has_value());
    return std::move(*r.value);
}

// Wrap an instantiation's symbols into a grammar for comparison purposes.
Grammar asGrammar(const Instantiation& inst) {
    Grammar g;
    g.symbols = inst.symbols;
    resolveReferences(g);
    return g;
}

bool hasPlaceholders(const Grammar& g) {
    for (const auto& n : walk(g))
        if (n.kind == NodeKind::Expression &&
            n.expression->kind == Expression::Kind::Placeholder)
            return true;
    return false;
}

}  // namespace

TEST_CASE("instantiating binaryOperation substitutes name, sign and argument") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    Grammar host = parseOk(readFixture("s42_host.grammar"), "host");
    REQUIRE(host.imports.size() == 2);

    auto inst = instantiate(*lib.find("binaryOperation"), host.imports[0].args);
    REQUIRE(inst.value.has_value());
    REQUIRE(inst.value->symbols.size() == 1);
    Grammar got = asGrammar(*inst.value);
    Grammar expected = parseOk("Product -> Factor (('*' | '/') Factor)* ;");
    CHECK(structuralEquals(got, expected));
}

TEST_CASE("the two-symbol variant yields Sign and the named operation") {
    TemplateLibrary lib = libraryOk("s42_binary_operation2.templates");
    Grammar host = parseOk(readFixture("s42_anysign.grammar"), "host");

    auto inst = instantiate(*lib.find("binaryOperation"), host.imports[1].args);
    REQUIRE(inst.value.has_value());
    REQUIRE(inst.value->symbols.size() == 2);
    CHECK(inst.value->symbols[0].name == "Sign");
    CHECK(inst.value->symbols[1].name == "Sum");
    Grammar got = asGrammar(*inst.value);
    Grammar expected = parseOk("Sign -> '+' | '-' ;\nSum -> Product (Sign Product)* ;");
    CHECK(structuralEquals(got, expected));
}

TEST_CASE("attributeValue instantiation splices the extra production") {
    TemplateLibrary lib = libraryOk("s42_attribute_value.templates");
    Grammar host = parseOk(readFixture("s42_attribute_value_host.grammar"), "host");

    auto inst = instantiate(*lib.find("attributeValue"), host.imports[0].args);
    REQUIRE(inst.value.has_value());
    REQUIRE(inst.value->symbols.size() == 1);
    const Symbol& sym = inst.value->symbols[0];
    CHECK(sym.name == "AttributeValue");
    REQUIRE(sym.productions.size() == 6);
    const Expression& spliced = sym.productions[5].body;
    REQUIRE(spliced.kind == Expression::Kind::Sequence);
    CHECK(spliced.children[0].text == "{{{");
}

TEST_CASE("an empty many-argument splices nothing") {
    TemplateLibrary lib = libraryOk("s42_attribute_value.templates");
    Grammar host = parseOk("import attributeValue<empty>;", "host");
    auto inst = instantiate(*lib.find("attributeValue"), host.imports[0].args);
    REQUIRE(inst.value.has_value());
    CHECK(inst.value->symbols[0].productions.size() == 5);
}

TEST_CASE("arity and kind mismatches are reported") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    const Template& binop = *lib.find("binaryOperation");

    Grammar two = parseOk("import binaryOperation<Product, Factor>;", "host");
    auto arity = instantiate(binop, two.imports[0].args);
    CHECK(!arity.value.has_value());
    REQUIRE(hasErrors(arity.diagnostics));
    CHECK(arity.diagnostics[0].message.find("3 argument") != std::string::npos);

    // A production list cannot stand in for an Expression parameter.
    Grammar list = parseOk("import binaryOperation<Product, 'a' || 'b', Factor>;", "host");
    auto kind = instantiate(binop, list.imports[0].args);
    CHECK(!kind.value.has_value());

    // An ID parameter needs a plain identifier.
    Grammar lit = parseOk("import binaryOperation<'x', 'a', Factor>;", "host");
    auto id = instantiate(binop, lit.imports[0].args);
    CHECK(!id.value.has_value());
}

TEST_CASE("two instantiations never share node ids") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    Grammar host = parseOk(readFixture("s42_host.grammar"), "host");
    Grammar ids;
    auto a = instantiate(*lib.find("binaryOperation"), host.imports[0].args, ids);
    auto b = instantiate(*lib.find("binaryOperation"), host.imports[1].args, ids);
    REQUIRE(a.value.has_value());
    REQUIRE(b.value.has_value());
    std::set<std::uint32_t> seen;
    for (const auto& inst : {*a.value, *b.value}) {
        Grammar g;
        g.symbols = inst.symbols;
        for (const auto& n : walk(g))
            if (n.kind != NodeKind::Grammar) CHECK(seen.insert(n.id.value).second);
    }
}

TEST_CASE("resolveImports expands the section 4.2 host grammar") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    Grammar host = parseOk(readFixture("s42_host.grammar"), "host");
    auto resolved = resolveImports(host, lib);
    for (const auto& d : resolved.diagnostics) INFO(formatDiagnostic(d));
    REQUIRE(resolved.value.has_value());
    const Grammar& g = *resolved.value;

    CHECK(g.imports.empty());
    CHECK(!hasPlaceholders(g));
    Grammar golden = parseOk(readFixture("golden_binop_expanded.grammar"), "golden");
    CHECK(structuralEquals(g, golden));

    // Factor's '(' Sum ')' resolves Sum into the second instantiation.
    const Symbol* factor = resolveSymbol(g, "Factor");
    REQUIRE(factor != nullptr);
    const Expression& paren = factor->productions[2].body;
    REQUIRE(paren.kind == Expression::Kind::Sequence);
    const Expression& sumRef = paren.children[1];
    REQUIRE(sumRef.resolvedSymbol);
    const Symbol* sum = resolveSymbol(g, "_ns2.Sum");
    REQUIRE(sum != nullptr);
    CHECK(sumRef.resolvedSymbol == sum->id);
}

TEST_CASE("named imports give distinct Sign symbols reachable by qualified names") {
    TemplateLibrary lib = libraryOk("s42_binary_operation2.templates");
    Grammar host = parseOk(readFixture("s42_anysign.grammar"), "host");
    auto resolved = resolveImports(host, lib);
    for (const auto& d : resolved.diagnostics) INFO(formatDiagnostic(d));
    REQUIRE(resolved.value.has_value());
    const Grammar& g = *resolved.value;

    const Symbol* productSign = resolveSymbol(g, "product.Sign");
    const Symbol* sumSign = resolveSymbol(g, "sum.Sign");
    REQUIRE(productSign != nullptr);
    REQUIRE(sumSign != nullptr);
    CHECK(productSign->id != sumSign->id);

    const Symbol* anySign = resolveSymbol(g, "AnySign");
    REQUIRE(anySign != nullptr);
    const Expression& body = anySign->productions[0].body;
    REQUIRE(body.kind == Expression::Kind::Alternative);
    CHECK(body.children[0].resolvedSymbol == productSign->id);
    CHECK(body.children[1].resolvedSymbol == sumSign->id);

    // Sign inside each namespace resolves to its own namespace's symbol.
    const Symbol* sum = resolveSymbol(g, "sum.Sum");
    REQUIRE(sum != nullptr);
    const Expression& sumBody = sum->productions[0].body;  // Product (Sign Product)*
    const Expression& signRef = sumBody.children[1].children[0].children[0];
    CHECK(signRef.resolvedSymbol == sumSign->id);
}

TEST_CASE("unknown templates and alias collisions are errors") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    Grammar unknown = parseOk("import missingTemplate<X, 'a', Y>;", "host");
    auto r = resolveImports(unknown, lib);
    CHECK(!r.value.has_value());
    REQUIRE(hasErrors(r.diagnostics));
    CHECK(r.diagnostics[0].message.find("missingTemplate") != std::string::npos);

    Grammar collide = parseOk(
        "import a = binaryOperation<P, '*', F>;\n"
        "import a = binaryOperation<Q, '+', F>;\n",
        "host");
    auto c = resolveImports(collide, lib);
    CHECK(!c.value.has_value());
}

TEST_CASE("unqualified references shared by two anonymous imports are ambiguous") {
    TemplateLibrary lib = libraryOk("s42_binary_operation2.templates");
    Grammar host = parseOk(
        "import binaryOperation<Product, '*' | '/', Factor>;\n"
        "import binaryOperation<Sum, '+' | '-', Product>;\n"
        "Use -> Sign ;\n",
        "host");
    auto r = resolveImports(host, lib);
    CHECK(!r.value.has_value());
    REQUIRE(hasErrors(r.diagnostics));
    bool found = false;
    for (const auto& d : r.diagnostics)
        if (d.message.find("ambiguous") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("instantiation results print as a plain grammar") {
    TemplateLibrary lib = libraryOk("s42_binary_operation.templates");
    Grammar host = parseOk(readFixture("s42_host.grammar"), "host");
    auto resolved = resolveImports(host, lib);
    REQUIRE(resolved.value.has_value());
    std::string printed = printGrammar(*resolved.value);
    Grammar again = parseOk(printed, "printed");
    CHECK(structuralEquals(*resolved.value, again));
}
