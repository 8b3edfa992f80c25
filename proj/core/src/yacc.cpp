#include "gramkit/yacc.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "gramkit/printer.hpp"

namespace gramkit {

namespace {

bool uppercaseName(const std::string& name) {
    bool letter = false;
    for (char c : name) {
        if (std::isupper(static_cast<unsigned char>(c))) {
            letter = true;
        } else if (!std::isdigit(static_cast<unsigned char>(c)) && c != '_') {
            return false;
        }
    }
    return letter;
}

void collectRefs(const Expression& e, std::vector<const Expression*>& out) {
    if (e.kind == Expression::Kind::SymbolRef) out.push_back(&e);
    for (const auto& c : e.children) collectRefs(c, out);
}

}  // namespace

bool SymbolClassification::isLexical(NodeId id) const {
    return std::find(lexical.begin(), lexical.end(), id) != lexical.end();
}

SymbolClassification classifySymbols(const Grammar& grammar) {
    SymbolClassification result;
    for (const auto& s : grammar.symbols) {
        if (s.annotations.has("lexical") || uppercaseName(s.name))
            result.lexical.push_back(s.id);
        else
            result.syntactic.push_back(s.id);
    }
    for (const auto& s : grammar.symbols) {
        if (!result.isLexical(s.id)) continue;
        for (const auto& p : s.productions) {
            std::vector<const Expression*> refs;
            collectRefs(p.body, refs);
            for (const Expression* ref : refs) {
                if (!ref->resolvedSymbol) continue;
                if (!result.isLexical(ref->resolvedSymbol)) {
                    result.diagnostics.push_back(
                        {Severity::Error,
                         "lexical symbol '" + s.name + "' references syntactic symbol '" +
                             ref->text + "'",
                         ref->span, ref->id});
                }
            }
        }
    }
    return result;
}

namespace {

const std::map<std::string, std::string>& punctuationTokens() {
    static const std::map<std::string, std::string> table = {
        {"*", "STAR"},    {"+", "PLUS"},     {"-", "MINUS"},    {"/", "SLASH"},
        {"(", "LPAREN"},  {")", "RPAREN"},   {"[", "LBRACK"},   {"]", "RBRACK"},
        {"{", "LBRACE"},  {"}", "RBRACE"},   {"<", "LT"},       {">", "GT"},
        {"=", "EQUALS"},  {".", "DOT"},      {",", "COMMA"},    {";", "SEMI"},
        {":", "COLON"},   {"|", "PIPE"},     {"&", "AMP"},      {"!", "BANG"},
        {"?", "QUESTION"},{"@", "AT"},       {"#", "HASH"},     {"%", "PERCENT"},
        {"^", "CARET"},   {"~", "TILDE"},    {"'", "SQUOTE"},   {"\"", "DQUOTE"},
    };
    return table;
}

std::string hexName(const std::string& text) {
    static const char* digits = "0123456789ABCDEF";
    std::string out = "LIT_";
    for (unsigned char c : text) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xF]);
    }
    return out;
}

class Lowering {
public:
    Lowering(const Grammar& g, const SymbolClassification& cls) : g_(g), cls_(cls) {
        for (const auto& s : g.symbols) userNames_.insert(printedName(s));
    }

    BnfGrammar run() {
        // Lexical symbols and their regular definitions come first.
        for (const auto& s : g_.symbols) {
            if (!cls_.isLexical(s.id)) continue;
            TokenDecl tok;
            tok.name = printedName(s);
            tok.origin = TokenDecl::Origin::LexicalSymbol;
            std::string def;
            for (std::size_t i = 0; i < s.productions.size(); ++i) {
                if (i > 0) def += " || ";
                def += printExpression(s.productions[i].body);
            }
            tok.lexeme = def;
            tokenIndex_[tok.name] = bnf_.tokens.size();
            lexSymbolToken_[s.id] = tok.name;
            bnf_.tokens.push_back(std::move(tok));
        }

        for (const auto& s : g_.symbols) {
            if (cls_.isLexical(s.id)) continue;
            if (bnf_.startSymbol.empty()) bnf_.startSymbol = printedName(s);
            if (s.annotations.has("start")) bnf_.startSymbol = printedName(s);
            lowerSymbol(s);
        }
        return std::move(bnf_);
    }

private:
    std::string printedName(const Symbol& s) const {
        // Names must stay unique after namespaces are flattened away.
        int uses = 0;
        for (const auto& other : g_.symbols)
            if (other.name == s.name) ++uses;
        if (uses > 1 && !s.namespaceAlias.empty()) return s.namespaceAlias + "_" + s.name;
        return s.name;
    }

    std::string tokenForLiteral(const std::string& text) {
        auto lit = literalTokens_.find(text);
        if (lit != literalTokens_.end()) return lit->second;
        const auto& table = punctuationTokens();
        auto fixed = table.find(text);
        std::string name = fixed != table.end() ? fixed->second : hexName(text);
        TokenDecl tok;
        tok.name = name;
        tok.origin = TokenDecl::Origin::Literal;
        tok.lexeme = text;
        tokenIndex_[name] = bnf_.tokens.size();
        bnf_.tokens.push_back(std::move(tok));
        literalTokens_[text] = name;
        return name;
    }

    std::string tokenForCharClass(const Expression& e) {
        std::string printed = printExpression(e);
        auto it = charClassTokens_.find(printed);
        if (it != charClassTokens_.end()) return it->second;
        std::string name = "CC" + std::to_string(charClassTokens_.size() + 1);
        TokenDecl tok;
        tok.name = name;
        tok.origin = TokenDecl::Origin::CharClass;
        tok.lexeme = printed;
        tokenIndex_[name] = bnf_.tokens.size();
        bnf_.tokens.push_back(std::move(tok));
        charClassTokens_[printed] = name;
        return name;
    }

    std::string tokenForUndeclared(const std::string& name) {
        if (!tokenIndex_.count(name)) {
            TokenDecl tok;
            tok.name = name;
            tok.origin = TokenDecl::Origin::Undeclared;
            tokenIndex_[name] = bnf_.tokens.size();
            bnf_.tokens.push_back(std::move(tok));
        }
        return name;
    }

    std::string freshHelper(const std::string& owner) {
        int& counter = helperCounters_[owner];
        for (;;) {
            ++counter;
            std::string name = owner + "_" + std::to_string(counter);
            if (!userNames_.count(name) && !helperNames_.count(name)) {
                helperNames_.insert(name);
                return name;
            }
        }
    }

    void lowerSymbol(const Symbol& s) {
        std::string head = printedName(s);
        BnfRule rule;
        rule.head = head;
        std::vector<BnfRule> helpers;
        for (const auto& p : s.productions) {
            // A top-level alternative contributes one BNF alternative per
            // option; anything nested becomes a helper.
            if (p.body.kind == Expression::Kind::Alternative) {
                for (const auto& option : p.body.children) {
                    BnfAlternative alt;
                    alt.terms = lowerToTerms(option, head, helpers);
                    alt.sourceProduction = p.id;
                    rule.alternatives.push_back(std::move(alt));
                }
            } else {
                BnfAlternative alt;
                alt.terms = lowerToTerms(p.body, head, helpers);
                alt.sourceProduction = p.id;
                rule.alternatives.push_back(std::move(alt));
            }
        }
        bnf_.rules.push_back(std::move(rule));
        for (auto& h : helpers) bnf_.rules.push_back(std::move(h));
    }

    std::vector<BnfTerm> lowerToTerms(const Expression& e, const std::string& owner,
                                      std::vector<BnfRule>& helpers) {
        std::vector<BnfTerm> terms;
        appendTerms(e, owner, helpers, terms);
        return terms;
    }

    void appendTerms(const Expression& e, const std::string& owner, std::vector<BnfRule>& helpers,
                     std::vector<BnfTerm>& out) {
        switch (e.kind) {
            case Expression::Kind::Sequence:
                for (const auto& c : e.children) appendTerms(c, owner, helpers, out);
                return;
            case Expression::Kind::SymbolRef: {
                if (e.resolvedSymbol) {
                    if (cls_.isLexical(e.resolvedSymbol)) {
                        out.push_back({true, lexSymbolToken_.at(e.resolvedSymbol)});
                    } else {
                        NodeRef ref;
                        findNode(g_, e.resolvedSymbol, ref);
                        out.push_back({false, printedName(*ref.symbol)});
                    }
                } else {
                    out.push_back({true, tokenForUndeclared(e.text)});
                }
                return;
            }
            case Expression::Kind::StringLiteral:
                out.push_back({true, tokenForLiteral(e.text)});
                return;
            case Expression::Kind::CharClass:
                out.push_back({true, tokenForCharClass(e)});
                return;
            case Expression::Kind::Iteration: {
                std::string helper = freshHelper(owner);
                std::vector<BnfTerm> inner = lowerToTerms(e.children.front(), owner, helpers);
                BnfRule h;
                h.head = helper;
                switch (e.iter) {
                    case Expression::Iter::Star: {
                        h.alternatives.push_back({});  // epsilon
                        BnfAlternative rec;
                        rec.terms.push_back({false, helper});
                        rec.terms.insert(rec.terms.end(), inner.begin(), inner.end());
                        h.alternatives.push_back(std::move(rec));
                        break;
                    }
                    case Expression::Iter::Plus: {
                        BnfAlternative once;
                        once.terms = inner;
                        h.alternatives.push_back(std::move(once));
                        BnfAlternative rec;
                        rec.terms.push_back({false, helper});
                        rec.terms.insert(rec.terms.end(), inner.begin(), inner.end());
                        h.alternatives.push_back(std::move(rec));
                        break;
                    }
                    case Expression::Iter::Option: {
                        h.alternatives.push_back({});  // epsilon
                        BnfAlternative some;
                        some.terms = std::move(inner);
                        h.alternatives.push_back(std::move(some));
                        break;
                    }
                }
                helpers.push_back(std::move(h));
                out.push_back({false, helper});
                return;
            }
            case Expression::Kind::Alternative: {
                std::string helper = freshHelper(owner);
                BnfRule h;
                h.head = helper;
                for (const auto& option : e.children) {
                    BnfAlternative alt;
                    alt.terms = lowerToTerms(option, owner, helpers);
                    h.alternatives.push_back(std::move(alt));
                }
                helpers.push_back(std::move(h));
                out.push_back({false, helper});
                return;
            }
            case Expression::Kind::Placeholder:
                // Unreachable in resolved grammars; keep the name visible.
                out.push_back({true, tokenForUndeclared("$" + e.text)});
                return;
        }
    }

    const Grammar& g_;
    const SymbolClassification& cls_;
    BnfGrammar bnf_;
    std::set<std::string> userNames_;
    std::set<std::string> helperNames_;
    std::map<std::string, int> helperCounters_;
    std::map<std::string, std::string> literalTokens_;
    std::map<std::string, std::string> charClassTokens_;
    std::map<std::string, std::size_t> tokenIndex_;
    std::map<NodeId, std::string> lexSymbolToken_;
};

}  // namespace

BnfGrammar lowerEbnf(const Grammar& grammar, const SymbolClassification& classification) {
    return Lowering(grammar, classification).run();
}

ParseResult<std::string> emitYacc(const BnfGrammar& bnf, const Grammar& grammar) {
    ParseResult<std::string> result;
    std::ostringstream out;

    for (const auto& tok : bnf.tokens) {
        out << "%token " << tok.name;
        if (!tok.lexeme.empty()) {
            if (tok.origin == TokenDecl::Origin::Literal)
                out << " /* '" << tok.lexeme << "' */";
            else
                out << " /* " << tok.lexeme << " */";
        }
        out << "\n";
    }
    if (!bnf.startSymbol.empty()) out << "%start " << bnf.startSymbol << "\n";
    out << "%%\n";

    for (const auto& rule : bnf.rules) {
        out << "\n" << rule.head << "\n";
        for (std::size_t i = 0; i < rule.alternatives.size(); ++i) {
            const BnfAlternative& alt = rule.alternatives[i];
            out << (i == 0 ? "    : " : "    | ");
            if (alt.terms.empty()) {
                out << "/* empty */";
            } else {
                for (std::size_t j = 0; j < alt.terms.size(); ++j) {
                    if (j > 0) out << " ";
                    out << alt.terms[j].name;
                }
            }
            if (alt.sourceProduction) {
                NodeRef ref;
                if (findNode(grammar, alt.sourceProduction, ref) &&
                    ref.kind == NodeKind::Production) {
                    const Attribute* action = ref.annotations->find("action");
                    if (action) {
                        if (!action->value || action->value->kind() != Value::Kind::String) {
                            result.diagnostics.push_back(
                                {Severity::Error,
                                 "'action' attribute on " + nodePath(grammar, ref.id) +
                                     " must be a string",
                                 ref.span, ref.id});
                        } else {
                            out << " { " << action->value->stringText() << " }";
                        }
                    }
                }
            }
            out << "\n";
        }
        out << "    ;\n";
    }
    out << "%%\n";

    if (!hasErrors(result.diagnostics)) result.value = out.str();
    return result;
}

ParseResult<std::string> exportYacc(const Grammar& grammar) {
    ParseResult<std::string> result;
    SymbolClassification cls = classifySymbols(grammar);
    result.diagnostics = cls.diagnostics;
    if (hasErrors(result.diagnostics)) return result;
    BnfGrammar bnf = lowerEbnf(grammar, cls);
    ParseResult<std::string> emitted = emitYacc(bnf, grammar);
    result.diagnostics.insert(result.diagnostics.end(), emitted.diagnostics.begin(),
                              emitted.diagnostics.end());
    if (emitted.value && !hasErrors(result.diagnostics)) result.value = std::move(emitted.value);
    return result;
}

}  // namespace gramkit
