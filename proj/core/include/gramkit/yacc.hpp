#pragma once

#include <string>
#include <vector>

#include "gramkit/grammar.hpp"

namespace gramkit {

/// Partition of a grammar's symbols into lexical (terminal) and syntactic
/// (nonterminal) ones. A symbol is lexical iff it carries the `lexical` flag
/// or its name is entirely uppercase letters, digits and underscores.
struct SymbolClassification {
    std::vector<NodeId> lexical;
    std::vector<NodeId> syntactic;
    std::vector<Diagnostic> diagnostics;  // lexical symbols referencing syntactic ones

    bool isLexical(NodeId id) const;
};

SymbolClassification classifySymbols(const Grammar& grammar);

/// Terminal declaration of the lowered grammar. Literal tokens carry their
/// text; tokens born from lexical symbols carry the symbol's regular
/// definition; tokens for undeclared names carry nothing.
struct TokenDecl {
    enum class Origin { Literal, CharClass, LexicalSymbol, Undeclared };

    std::string name;
    Origin origin = Origin::Undeclared;
    std::string lexeme;  // literal text or serialized regular definition
};

struct BnfTerm {
    bool isToken = false;
    std::string name;

    friend bool operator==(const BnfTerm& a, const BnfTerm& b) {
        return a.isToken == b.isToken && a.name == b.name;
    }
};

/// One alternative of a BNF rule; empty `terms` is the epsilon alternative.
struct BnfAlternative {
    std::vector<BnfTerm> terms;
    NodeId sourceProduction{};  // originating Production, 0 for helper rules
};

struct BnfRule {
    std::string head;
    std::vector<BnfAlternative> alternatives;
};

struct BnfGrammar {
    std::vector<TokenDecl> tokens;
    std::vector<BnfRule> rules;
    std::string startSymbol;
};

/// Lower EBNF to plain BNF: iterations, inner alternatives and groups become
/// fresh helper nonterminals (`Owner_1`, `Owner_2`, ...; the counter skips
/// user names). `X*` lowers left-recursively to `H -> ε | H X`, `X+` to
/// `H -> X | H X`, `X?` to `H -> ε | X`. Embedded literals and character
/// classes become synthesized tokens. Lexical symbols turn into token
/// declarations and keep no rules.
BnfGrammar lowerEbnf(const Grammar& grammar, const SymbolClassification& classification);

/// Serialize to Yacc input: `%token` declarations, `%start`, `%%`, one rule
/// block per nonterminal, `%%`. An alternative whose originating production
/// carries a string attribute named `action` is followed by that code in
/// braces. A non-string `action` is an error.
ParseResult<std::string> emitYacc(const BnfGrammar& bnf, const Grammar& grammar);

/// Full pipeline: classify, lower, emit.
ParseResult<std::string> exportYacc(const Grammar& grammar);

}  // namespace gramkit
