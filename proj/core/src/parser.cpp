#include "gramkit/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gramkit/lexer.hpp"

namespace gramkit {

namespace {

struct ParseAbort {};

std::string baseName(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

class Parser {
public:
    Parser(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags)
        : file_(file), diags_(diags) {
        toks_ = lex(text, file, diags_);
    }

    bool hadLexErrors() const { return hasErrors(diags_); }

    // ---- grammar files ------------------------------------------------

    Grammar parseGrammarFile() {
        Grammar g;
        g.span = at().span;
        g.span.file = file_;
        while (isIdent("import")) g.imports.push_back(parseImportDecl(g));
        while (at().kind == Tok::Ident) g.symbols.push_back(parseRule(g));
        expect(Tok::End);
        checkDuplicateSymbols(g);
        return g;
    }

    // ---- aspect files --------------------------------------------------

    Aspect parseAspectFile() {
        Aspect a;
        a.name = baseName(file_);
        while (at().kind != Tok::End) a.rules.push_back(parseAspectRule());
        return a;
    }

    Query parseBareQuery() {
        Query q = parseQueryPart();
        expect(Tok::End);
        return q;
    }

    std::vector<Attribute> parseAttributeListBody() {
        std::vector<Attribute> attrs;
        while (at().kind == Tok::Ident) attrs.push_back(parseAttribute());
        expect(Tok::End);
        return attrs;
    }

    // ---- template files -------------------------------------------------

    TemplateLibrary parseTemplateFile() {
        TemplateLibrary lib;
        while (at().kind != Tok::End) {
            Template t = parseTemplateDecl();
            if (lib.templates.count(t.name)) {
                error(t.span, "duplicate template name '" + t.name + "'");
            } else {
                lib.templates.emplace(t.name, std::move(t));
            }
        }
        return lib;
    }

private:
    // ---- token plumbing --------------------------------------------------

    const Token& at(std::size_t ahead = 0) const {
        std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    bool isIdent(std::string_view text) const {
        return at().kind == Tok::Ident && at().text == text;
    }

    void error(SourceSpan span, std::string message) {
        diags_.push_back({Severity::Error, std::move(message), std::move(span), {}});
    }

    [[noreturn]] void fail(std::string message) {
        error(at().span, std::move(message));
        throw ParseAbort{};
    }

    const Token& expect(Tok kind) {
        if (at().kind != kind)
            fail(std::string("expected ") + tokName(kind) + ", found " + tokName(at().kind));
        return take();
    }

    std::string expectIdent(const char* what) {
        if (at().kind != Tok::Ident) fail(std::string("expected ") + what);
        return take().text;
    }

    // ---- expressions ------------------------------------------------------

    bool atExprStart(bool placeholders) const {
        switch (at().kind) {
            case Tok::Ident:
            case Tok::LexLiteral:
            case Tok::LBracket:
            case Tok::LParen: return true;
            case Tok::Dollar: return placeholders;
            default: return false;
        }
    }

    Expression parseExpr(Grammar& g, bool placeholders) {
        SourceSpan start = at().span;
        std::vector<Expression> options;
        options.push_back(parseSeq(g, placeholders));
        while (at().kind == Tok::Bar) {
            take();
            options.push_back(parseSeq(g, placeholders));
        }
        if (options.size() == 1) return std::move(options.front());
        Expression e;
        e.kind = Expression::Kind::Alternative;
        e.children = std::move(options);
        e.id = g.allocateId();
        e.span = spanFrom(start);
        return e;
    }

    Expression parseSeq(Grammar& g, bool placeholders) {
        SourceSpan start = at().span;
        std::vector<Expression> terms;
        terms.push_back(parseTerm(g, placeholders));
        while (atExprStart(placeholders)) terms.push_back(parseTerm(g, placeholders));
        if (terms.size() == 1) return std::move(terms.front());
        Expression e;
        e.kind = Expression::Kind::Sequence;
        e.children = std::move(terms);
        e.id = g.allocateId();
        e.span = spanFrom(start);
        return e;
    }

    Expression parseTerm(Grammar& g, bool placeholders) {
        SourceSpan start = at().span;
        Expression atom = parseAtom(g, placeholders);
        Expression::Iter iter;
        switch (at().kind) {
            case Tok::Star: iter = Expression::Iter::Star; break;
            case Tok::Plus: iter = Expression::Iter::Plus; break;
            case Tok::Question: iter = Expression::Iter::Option; break;
            default: return atom;
        }
        take();
        Expression e;
        e.kind = Expression::Kind::Iteration;
        e.iter = iter;
        e.children.push_back(std::move(atom));
        e.id = g.allocateId();
        e.span = spanFrom(start);
        return e;
    }

    Expression parseAtom(Grammar& g, bool placeholders) {
        SourceSpan start = at().span;
        switch (at().kind) {
            case Tok::Ident: {
                Expression e;
                e.kind = Expression::Kind::SymbolRef;
                e.text = take().text;
                if (at().kind == Tok::Dot) {
                    take();
                    e.text += "." + expectIdent("identifier after '.'");
                }
                e.id = g.allocateId();
                e.span = spanFrom(start);
                return e;
            }
            case Tok::LexLiteral: {
                Expression e;
                e.kind = Expression::Kind::StringLiteral;
                e.text = take().text;
                e.id = g.allocateId();
                e.span = spanFrom(start);
                return e;
            }
            case Tok::LBracket: {
                Expression e;
                e.kind = Expression::Kind::CharClass;
                e.ranges = parseCharRanges();
                e.id = g.allocateId();
                e.span = spanFrom(start);
                return e;
            }
            case Tok::LParen: {
                take();
                Expression e = parseExpr(g, placeholders);
                expect(Tok::RParen);
                return e;
            }
            case Tok::Dollar: {
                if (!placeholders) fail("placeholders are only allowed in template bodies");
                take();
                Expression e;
                e.kind = Expression::Kind::Placeholder;
                e.text = expectIdent("placeholder name after '$'");
                e.id = g.allocateId();
                e.span = spanFrom(start);
                return e;
            }
            default: fail(std::string("expected expression, found ") + tokName(at().kind));
        }
    }

    std::vector<Expression::CharRange> parseCharRanges() {
        expect(Tok::LBracket);
        std::vector<Expression::CharRange> ranges;
        while (at().kind == Tok::LexLiteral) {
            SourceSpan span = at().span;
            char lo = takeClassChar();
            char hi = lo;
            if (at().kind == Tok::DashDash) {
                take();
                hi = takeClassChar();
            }
            if (static_cast<unsigned char>(lo) > static_cast<unsigned char>(hi))
                error(span, "invalid character range: lower bound exceeds upper bound");
            ranges.push_back({lo, hi});
        }
        if (ranges.empty()) fail("empty character class");
        expect(Tok::RBracket);
        return ranges;
    }

    char takeClassChar() {
        const Token& t = expect(Tok::LexLiteral);
        if (t.text.size() != 1) {
            error(t.span, "character class elements must be single characters");
            return t.text.empty() ? '?' : t.text[0];
        }
        return t.text[0];
    }

    SourceSpan spanFrom(const SourceSpan& start) const {
        SourceSpan s = start;
        s.end = pos_ > 0 ? toks_[pos_ - 1].span.end : start.end;
        return s;
    }

    // ---- grammar rules and imports ---------------------------------------

    Symbol parseRule(Grammar& g) {
        Symbol s;
        s.span = at().span;
        s.name = expectIdent("rule name");
        expect(Tok::Arrow);
        for (;;) {
            Production p;
            p.span = at().span;
            p.body = parseExpr(g, false);
            p.id = g.allocateId();
            p.span = spanFrom(p.span);
            s.productions.push_back(std::move(p));
            if (at().kind != Tok::DblBar) break;
            take();
        }
        expect(Tok::Semi);
        s.id = g.allocateId();
        s.span = spanFrom(s.span);
        return s;
    }

    ImportDecl parseImportDecl(Grammar& g) {
        ImportDecl d;
        d.span = at().span;
        take();  // import
        if (at().kind == Tok::Ident && at(1).kind == Tok::Eq) {
            d.alias = take().text;
            take();  // =
        }
        d.templateName = expectIdent("template name");
        expect(Tok::Lt);
        for (;;) {
            d.args.push_back(parseImportArg(g));
            if (at().kind != Tok::Comma) break;
            take();
        }
        expect(Tok::Gt);
        expect(Tok::Semi);
        d.span = spanFrom(d.span);
        return d;
    }

    ImportArg parseImportArg(Grammar& g) {
        ImportArg arg;
        arg.span = at().span;
        if (isIdent("empty") && (at(1).kind == Tok::Comma || at(1).kind == Tok::Gt)) {
            take();
            arg.explicitlyEmpty = true;
            arg.span = spanFrom(arg.span);
            return arg;
        }
        arg.items.push_back(parseExpr(g, false));
        while (at().kind == Tok::DblBar) {
            take();
            arg.items.push_back(parseExpr(g, false));
        }
        arg.span = spanFrom(arg.span);
        return arg;
    }

    void checkDuplicateSymbols(const Grammar& g) {
        std::set<std::string> seen;
        for (const auto& s : g.symbols)
            if (!seen.insert(s.name).second)
                error(s.span, "duplicate symbol name '" + s.name + "'");
    }

    // ---- queries -----------------------------------------------------------

    Query parseQueryPart() {
        Query q;
        q.span = at().span;
        if (at().kind == Tok::Ident && at(1).kind == Tok::Arrow) {
            q.hasRulePattern = true;
            q.rulePattern = parseRulePattern();
        }
        while (at().kind == Tok::Ident && at(1).kind == Tok::LBrace)
            q.metaPatterns.push_back(parseMetaPattern());
        if (!q.hasRulePattern && q.metaPatterns.empty())
            fail("expected a query (rule pattern or metadata pattern)");
        q.span = spanFrom(q.span);
        validateQuery(q);
        return q;
    }

    RulePattern parseRulePattern() {
        RulePattern rp;
        rp.span = at().span;
        rp.headVar = take().text;
        expect(Tok::Arrow);
        for (;;) {
            rp.productionPatterns.push_back(parsePatExpr());
            if (at().kind != Tok::DblBar) break;
            take();
        }
        expect(Tok::Semi);
        rp.span = spanFrom(rp.span);
        return rp;
    }

    bool atPatStart() const {
        switch (at().kind) {
            case Tok::Ident:
            case Tok::DotDot:
            case Tok::LexLiteral:
            case Tok::LBracket:
            case Tok::LParen: return true;
            default: return false;
        }
    }

    PatternExpr parsePatExpr() {
        SourceSpan start = at().span;
        std::vector<PatternExpr> options;
        options.push_back(parsePatSeq());
        while (at().kind == Tok::Bar) {
            take();
            options.push_back(parsePatSeq());
        }
        if (options.size() == 1) return std::move(options.front());
        PatternExpr p;
        p.kind = PatternExpr::Kind::Alternative;
        p.children = std::move(options);
        p.span = spanFrom(start);
        return p;
    }

    PatternExpr parsePatSeq() {
        SourceSpan start = at().span;
        std::vector<PatternExpr> terms;
        terms.push_back(parsePatTerm());
        while (atPatStart()) terms.push_back(parsePatTerm());
        if (terms.size() == 1) return std::move(terms.front());
        PatternExpr p;
        p.kind = PatternExpr::Kind::Sequence;
        p.children = std::move(terms);
        p.span = spanFrom(start);
        return p;
    }

    PatternExpr parsePatTerm() {
        SourceSpan start = at().span;
        PatternExpr atom = parsePatAtom();
        Expression::Iter iter;
        switch (at().kind) {
            case Tok::Star: iter = Expression::Iter::Star; break;
            case Tok::Plus: iter = Expression::Iter::Plus; break;
            case Tok::Question: iter = Expression::Iter::Option; break;
            default: return atom;
        }
        take();
        PatternExpr p;
        p.kind = PatternExpr::Kind::Iteration;
        p.iter = iter;
        p.children.push_back(std::move(atom));
        p.span = spanFrom(start);
        return p;
    }

    PatternExpr parsePatAtom() {
        SourceSpan start = at().span;
        PatternExpr p;
        switch (at().kind) {
            case Tok::Ident: {
                std::string name = take().text;
                if (at().kind == Tok::Eq) {
                    take();
                    if (at().kind == Tok::DotDot) {
                        take();
                        p.kind = PatternExpr::Kind::CaptureWild;
                        p.text = std::move(name);
                        break;
                    }
                    expect(Tok::LParen);
                    PatternExpr inner = parsePatExpr();
                    expect(Tok::RParen);
                    p.kind = PatternExpr::Kind::Capture;
                    p.text = std::move(name);
                    p.children.push_back(std::move(inner));
                    break;
                }
                p.kind = PatternExpr::Kind::Var;
                p.text = std::move(name);
                break;
            }
            case Tok::DotDot:
                take();
                p.kind = PatternExpr::Kind::Wildcard;
                break;
            case Tok::LexLiteral:
                p.kind = PatternExpr::Kind::StringLiteral;
                p.text = take().text;
                break;
            case Tok::LBracket:
                p.kind = PatternExpr::Kind::CharClass;
                p.ranges = parseCharRanges();
                break;
            case Tok::LParen: {
                take();
                PatternExpr inner = parsePatExpr();
                expect(Tok::RParen);
                return inner;
            }
            default: fail(std::string("expected pattern, found ") + tokName(at().kind));
        }
        p.span = spanFrom(start);
        return p;
    }

    MetaPattern parseMetaPattern() {
        MetaPattern mp;
        mp.span = at().span;
        mp.var = take().text;
        expect(Tok::LBrace);
        while (at().kind == Tok::Ident || at().kind == Tok::Bang)
            mp.predicates.push_back(parsePredicate());
        expect(Tok::RBrace);
        if (at().kind == Tok::Semi) take();
        mp.span = spanFrom(mp.span);
        std::set<std::string> names;
        for (const auto& pr : mp.predicates)
            if (!names.insert(pr.attribute).second)
                error(pr.span, "duplicate predicate for attribute '" + pr.attribute + "'");
        return mp;
    }

    Predicate parsePredicate() {
        Predicate pr;
        pr.span = at().span;
        if (at().kind == Tok::Bang) {
            take();
            pr.kind = Predicate::Kind::Absent;
            pr.attribute = expectIdent("attribute name after '!'");
            expect(Tok::Semi);
            pr.span = spanFrom(pr.span);
            return pr;
        }
        pr.attribute = expectIdent("attribute name");
        switch (at().kind) {
            case Tok::Semi:
                take();
                pr.kind = Predicate::Kind::Present;
                break;
            case Tok::Eq:
                take();
                pr.kind = Predicate::Kind::Equals;
                pr.value = parseValue();
                expect(Tok::Semi);
                break;
            case Tok::Colon: {
                take();
                pr.kind = Predicate::Kind::HasType;
                SourceSpan tspan = at().span;
                std::string tn = expectIdent("type name");
                if (tn == "ID") pr.type = Value::Kind::Identifier;
                else if (tn == "STRING") pr.type = Value::Kind::String;
                else if (tn == "INT") pr.type = Value::Kind::Int;
                else if (tn == "Annotation") pr.type = Value::Kind::Annotation;
                else if (tn == "Sequence") pr.type = Value::Kind::Sequence;
                else error(tspan, "unknown value type '" + tn +
                                      "' (expected ID, STRING, INT, Annotation or Sequence)");
                expect(Tok::Semi);
                break;
            }
            default: fail("expected ';', '=' or ':' in metadata predicate");
        }
        pr.span = spanFrom(pr.span);
        return pr;
    }

    void collectPatternVars(const PatternExpr& p, std::vector<std::string>& symVars,
                            std::vector<std::string>& captureVars) {
        switch (p.kind) {
            case PatternExpr::Kind::Var: symVars.push_back(p.text); break;
            case PatternExpr::Kind::Capture:
            case PatternExpr::Kind::CaptureWild: captureVars.push_back(p.text); break;
            default: break;
        }
        for (const auto& c : p.children) collectPatternVars(c, symVars, captureVars);
    }

    void validateQuery(const Query& q) {
        std::vector<std::string> symVars;
        std::vector<std::string> captureVars;
        if (q.hasRulePattern) {
            symVars.push_back(q.rulePattern.headVar);
            for (const auto& pp : q.rulePattern.productionPatterns)
                collectPatternVars(pp, symVars, captureVars);
        }
        std::set<std::string> captureSet;
        for (const auto& name : captureVars)
            if (!captureSet.insert(name).second)
                error(q.span, "capture variable '" + name + "' introduced more than once");
        for (const auto& name : captureVars)
            if (std::find(symVars.begin(), symVars.end(), name) != symVars.end())
                error(q.span,
                      "variable '" + name + "' used both as a symbol variable and a capture");
    }

    // ---- aspect rules --------------------------------------------------------

    AspectRule parseAspectRule() {
        AspectRule r;
        r.span = at().span;
        r.query = parseQueryPart();
        expect(Tok::LBrace);
        while (at().kind != Tok::RBrace && at().kind != Tok::End) {
            if ((isIdent("error") || isIdent("warning")) && at(1).kind == Tok::Ident &&
                at(1).text == "on") {
                r.constraints.push_back(parseConstraint());
            } else {
                r.attachments.push_back(parseAttachment());
            }
        }
        expect(Tok::RBrace);
        r.span = spanFrom(r.span);

        std::vector<std::string> vars = queryVariables(r.query);
        auto bound = [&](const std::string& v) {
            return std::find(vars.begin(), vars.end(), v) != vars.end();
        };
        for (const auto& att : r.attachments)
            if (!bound(att.var))
                error(att.span, "attachment references variable '" + att.var +
                                    "' not bound in the rule's query");
        for (const auto& c : r.constraints)
            if (!c.onNoMatch && !bound(c.targetVar))
                error(c.span, "constraint references variable '" + c.targetVar +
                                  "' not bound in the rule's query");
        return r;
    }

    AttachmentRule parseAttachment() {
        AttachmentRule att;
        att.span = at().span;
        att.var = expectIdent("variable name");
        expect(Tok::LBrace);
        while (at().kind == Tok::Ident) att.attributes.push_back(parseAttribute());
        expect(Tok::RBrace);
        expect(Tok::Semi);
        att.span = spanFrom(att.span);
        return att;
    }

    ConstraintRule parseConstraint() {
        ConstraintRule c;
        c.span = at().span;
        c.severity = take().text == "error" ? Severity::Error : Severity::Warning;
        take();  // on
        if (isIdent("nomatch")) {
            take();
            c.onNoMatch = true;
        } else {
            c.targetVar = expectIdent("variable name or 'nomatch' after 'on'");
        }
        expect(Tok::Colon);
        c.message = expect(Tok::String).text;
        if (c.message.empty()) error(c.span, "constraint message must not be empty");
        expect(Tok::Semi);
        c.span = spanFrom(c.span);
        return c;
    }

    // ---- attributes and values -------------------------------------------------

    Attribute parseAttribute() {
        Attribute a;
        a.name = expectIdent("attribute name");
        if (at().kind == Tok::Eq) {
            take();
            a.value = parseValue();
        }
        expect(Tok::Semi);
        return a;
    }

    Value parseValue() {
        switch (at().kind) {
            case Tok::Ident: return Value::identifier(take().text);
            case Tok::String: return Value::string(take().text);
            case Tok::Int: return Value::integer(take().intValue);
            case Tok::LBrace: {
                take();
                std::vector<Attribute> attrs;
                while (at().kind == Tok::Ident) attrs.push_back(parseAttribute());
                expect(Tok::RBrace);
                return Value::annotation(std::move(attrs));
            }
            case Tok::SeqOpen: {
                take();
                std::vector<SequenceToken> tokens;
                for (;;) {
                    switch (at().kind) {
                        case Tok::Ident:
                            tokens.push_back({Value::identifier(take().text)});
                            continue;
                        case Tok::Int:
                            tokens.push_back({Value::integer(take().intValue)});
                            continue;
                        case Tok::String:
                        case Tok::LexLiteral:
                            tokens.push_back({Value::string(take().text)});
                            continue;
                        case Tok::SeqPunct:
                            tokens.push_back({take().text[0]});
                            continue;
                        default: break;
                    }
                    break;
                }
                expect(Tok::SeqClose);
                return Value::sequence(std::move(tokens));
            }
            default: fail(std::string("expected a value, found ") + tokName(at().kind));
        }
    }

    // ---- templates ----------------------------------------------------------------

    TemplateKind parseKindName() {
        SourceSpan span = at().span;
        std::string k = expectIdent("kind (Symbol, Production, Expression or ID)");
        if (k == "Symbol") return TemplateKind::Symbol;
        if (k == "Production") return TemplateKind::Production;
        if (k == "Expression") return TemplateKind::Expression;
        if (k == "ID") return TemplateKind::Id;
        error(span, "unknown kind '" + k + "' (expected Symbol, Production, Expression or ID)");
        return TemplateKind::Expression;
    }

    Template parseTemplateDecl() {
        Template t;
        t.span = at().span;
        t.resultKind = parseKindName();
        t.name = expectIdent("template name");
        expect(Tok::Lt);
        for (;;) {
            TemplateParam p;
            p.span = at().span;
            p.kind = parseKindName();
            if (at().kind == Tok::Star) {
                take();
                p.many = true;
                if (p.kind != TemplateKind::Production)
                    error(p.span, "only Production parameters may be starred");
            }
            expect(Tok::Dollar);
            p.name = expectIdent("parameter name");
            p.span = spanFrom(p.span);
            for (const auto& prev : t.params)
                if (prev.name == p.name)
                    error(p.span, "duplicate parameter name '$" + p.name + "'");
            t.params.push_back(std::move(p));
            if (at().kind != Tok::Comma) break;
            take();
        }
        expect(Tok::Gt);
        expect(Tok::LBrace);
        while (at().kind == Tok::Ident || at().kind == Tok::Dollar)
            t.rules.push_back(parseTemplateRule());
        expect(Tok::RBrace);
        t.span = spanFrom(t.span);
        validateTemplate(t);
        return t;
    }

    TemplateRule parseTemplateRule() {
        TemplateRule r;
        r.span = at().span;
        if (at().kind == Tok::Dollar) {
            take();
            r.headIsPlaceholder = true;
        }
        r.head = expectIdent("rule head");
        expect(Tok::Arrow);
        for (;;) {
            r.productions.push_back(parseExpr(scratch_, true));
            if (at().kind != Tok::DblBar) break;
            take();
        }
        expect(Tok::Semi);
        r.span = spanFrom(r.span);
        return r;
    }

    const TemplateParam* findParam(const Template& t, const std::string& name) {
        for (const auto& p : t.params)
            if (p.name == name) return &p;
        return nullptr;
    }

    void checkPlaceholders(const Template& t, const Expression& e, bool isProductionRoot) {
        if (e.kind == Expression::Kind::Placeholder) {
            const TemplateParam* p = findParam(t, e.text);
            if (!p) {
                error(e.span, "undeclared placeholder '$" + e.text + "'");
                return;
            }
            if (p->kind == TemplateKind::Production && !isProductionRoot)
                error(e.span, "Production placeholder '$" + e.text +
                                  "' may only stand for a whole production");
        }
        for (const auto& c : e.children) checkPlaceholders(t, c, false);
    }

    void validateTemplate(const Template& t) {
        for (const auto& r : t.rules) {
            if (r.headIsPlaceholder) {
                const TemplateParam* p = findParam(t, r.head);
                if (!p)
                    error(r.span, "undeclared placeholder '$" + r.head + "'");
                else if (p->kind != TemplateKind::Id)
                    error(r.span, "head placeholder '$" + r.head + "' must have kind ID");
            }
            for (const auto& prod : r.productions) checkPlaceholders(t, prod, true);
        }
    }

    std::string file_;
    std::vector<Diagnostic>& diags_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Grammar scratch_;  // id source for template-body expressions
};

template <typename T, typename Fn>
ParseResult<T> runParser(std::string_view text, const std::string& file, Fn fn) {
    ParseResult<T> result;
    Parser p(text, file, result.diagnostics);
    try {
        T value = fn(p);
        if (!hasErrors(result.diagnostics)) result.value = std::move(value);
    } catch (ParseAbort&) {
        // diagnostics already recorded
    }
    return result;
}

}  // namespace

ParseResult<Grammar> parseGrammar(std::string_view text, const std::string& fileName) {
    ParseResult<Grammar> result =
        runParser<Grammar>(text, fileName, [](Parser& p) { return p.parseGrammarFile(); });
    if (result.value && result.value->imports.empty()) {
        auto diags = resolveReferences(*result.value);
        result.diagnostics.insert(result.diagnostics.end(), diags.begin(), diags.end());
        if (hasErrors(result.diagnostics)) result.value.reset();
    }
    return result;
}

ParseResult<Aspect> parseAspect(std::string_view text, const std::string& fileName) {
    return runParser<Aspect>(text, fileName, [](Parser& p) { return p.parseAspectFile(); });
}

ParseResult<TemplateLibrary> parseTemplates(std::string_view text, const std::string& fileName) {
    return runParser<TemplateLibrary>(text, fileName,
                                      [](Parser& p) { return p.parseTemplateFile(); });
}

ParseResult<Query> parseQuery(std::string_view text, const std::string& fileName) {
    return runParser<Query>(text, fileName, [](Parser& p) { return p.parseBareQuery(); });
}

ParseResult<std::vector<Attribute>> parseAttributeList(std::string_view text,
                                                       const std::string& fileName) {
    return runParser<std::vector<Attribute>>(
        text, fileName, [](Parser& p) { return p.parseAttributeListBody(); });
}

}  // namespace gramkit
