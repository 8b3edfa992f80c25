#include "gramkit/lexer.hpp"

#include <cctype>

namespace gramkit {

const char* tokName(Tok t) {
    switch (t) {
        case Tok::End: return "end of input";
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer";
        case Tok::String: return "string";
        case Tok::LexLiteral: return "lexical literal";
        case Tok::Arrow: return "'->'";
        case Tok::DblBar: return "'||'";
        case Tok::Bar: return "'|'";
        case Tok::Star: return "'*'";
        case Tok::Plus: return "'+'";
        case Tok::Question: return "'?'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::SeqOpen: return "'{{'";
        case Tok::SeqClose: return "'}}'";
        case Tok::SeqPunct: return "punctuation";
        case Tok::Semi: return "';'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::DotDot: return "'..'";
        case Tok::DashDash: return "'--'";
        case Tok::Eq: return "'='";
        case Tok::Colon: return "':'";
        case Tok::Bang: return "'!'";
        case Tok::Lt: return "'<'";
        case Tok::Gt: return "'>'";
        case Tok::Dollar: return "'$'";
    }
    return "?";
}

namespace {

class Cursor {
public:
    Cursor(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

    bool atEnd() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char take() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    SourceSpan here() const { return SourceSpan{file_, pos_, pos_, line_, column_}; }

    std::size_t offset() const { return pos_; }

private:
    std::string_view text_;
    std::string file_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identCont(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
public:
    Lexer(std::string_view text, const std::string& file, std::vector<Diagnostic>& diags)
        : cur_(text, file), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            Token t = seqDepth_ > 0 ? nextSequenceToken() : nextToken();
            bool end = t.kind == Tok::End;
            out.push_back(std::move(t));
            if (end) break;
        }
        return out;
    }

private:
    void skipTrivia() {
        for (;;) {
            while (!cur_.atEnd() && std::isspace(static_cast<unsigned char>(cur_.peek()))) cur_.take();
            if (cur_.peek() == '/' && cur_.peek(1) == '/') {
                while (!cur_.atEnd() && cur_.peek() != '\n') cur_.take();
                continue;
            }
            if (cur_.peek() == '/' && cur_.peek(1) == '*') {
                SourceSpan start = cur_.here();
                cur_.take();
                cur_.take();
                while (!cur_.atEnd() && !(cur_.peek() == '*' && cur_.peek(1) == '/')) cur_.take();
                if (cur_.atEnd()) {
                    error(start, "unterminated block comment");
                } else {
                    cur_.take();
                    cur_.take();
                }
                continue;
            }
            break;
        }
    }

    void error(SourceSpan span, std::string message) {
        span.end = cur_.offset();
        diags_.push_back({Severity::Error, std::move(message), std::move(span), {}});
    }

    Token make(Tok kind, SourceSpan start, std::string text = {}) {
        Token t;
        t.kind = kind;
        t.text = std::move(text);
        t.span = std::move(start);
        t.span.end = cur_.offset();
        return t;
    }

    Token lexIdent(SourceSpan start) {
        std::string s;
        while (identCont(cur_.peek())) s.push_back(cur_.take());
        return make(Tok::Ident, std::move(start), std::move(s));
    }

    Token lexInt(SourceSpan start, bool negative) {
        std::string s;
        while (digit(cur_.peek())) s.push_back(cur_.take());
        Token t = make(Tok::Int, std::move(start), (negative ? "-" : "") + s);
        t.intValue = std::stoll(t.text);
        return t;
    }

    // Double-quoted string; \" \\ \n \t escapes, raw newlines permitted.
    Token lexString(SourceSpan start) {
        cur_.take();  // opening "
        std::string s;
        for (;;) {
            if (cur_.atEnd()) {
                error(start, "unterminated string literal");
                break;
            }
            char c = cur_.take();
            if (c == '"') break;
            if (c == '\\') {
                if (cur_.atEnd()) {
                    error(start, "unterminated string literal");
                    break;
                }
                char e = cur_.take();
                switch (e) {
                    case '"': s.push_back('"'); break;
                    case '\\': s.push_back('\\'); break;
                    case 'n': s.push_back('\n'); break;
                    case 't': s.push_back('\t'); break;
                    default:
                        error(cur_.here(), std::string("unknown escape '\\") + e + "' in string");
                        s.push_back(e);
                }
            } else {
                s.push_back(c);
            }
        }
        return make(Tok::String, std::move(start), std::move(s));
    }

    // Single-quoted lexical literal; \' and \\ escapes.
    Token lexLexLiteral(SourceSpan start) {
        cur_.take();  // opening '
        std::string s;
        for (;;) {
            if (cur_.atEnd()) {
                error(start, "unterminated lexical literal");
                break;
            }
            char c = cur_.take();
            if (c == '\'') break;
            if (c == '\\') {
                if (cur_.atEnd()) {
                    error(start, "unterminated lexical literal");
                    break;
                }
                char e = cur_.take();
                switch (e) {
                    case '\'': s.push_back('\''); break;
                    case '\\': s.push_back('\\'); break;
                    default:
                        error(cur_.here(), std::string("unknown escape '\\") + e + "' in literal");
                        s.push_back(e);
                }
            } else {
                s.push_back(c);
            }
        }
        if (s.empty()) error(start, "empty lexical literal");
        return make(Tok::LexLiteral, std::move(start), std::move(s));
    }

    Token nextToken() {
        skipTrivia();
        SourceSpan start = cur_.here();
        if (cur_.atEnd()) return make(Tok::End, std::move(start));
        char c = cur_.peek();
        if (identStart(c)) return lexIdent(std::move(start));
        if (digit(c)) return lexInt(std::move(start), false);
        if (c == '"') return lexString(std::move(start));
        if (c == '\'') return lexLexLiteral(std::move(start));

        cur_.take();
        switch (c) {
            case '-':
                if (cur_.peek() == '>') {
                    cur_.take();
                    return make(Tok::Arrow, std::move(start));
                }
                if (cur_.peek() == '-') {
                    cur_.take();
                    return make(Tok::DashDash, std::move(start));
                }
                if (digit(cur_.peek())) return lexInt(std::move(start), true);
                error(start, "stray '-'");
                return nextToken();
            case '|':
                if (cur_.peek() == '|') {
                    cur_.take();
                    return make(Tok::DblBar, std::move(start));
                }
                return make(Tok::Bar, std::move(start));
            case '{':
                if (cur_.peek() == '{') {
                    cur_.take();
                    seqDepth_ = 1;
                    return make(Tok::SeqOpen, std::move(start));
                }
                return make(Tok::LBrace, std::move(start));
            case '.':
                if (cur_.peek() == '.') {
                    cur_.take();
                    return make(Tok::DotDot, std::move(start));
                }
                return make(Tok::Dot, std::move(start));
            case '*': return make(Tok::Star, std::move(start));
            case '+': return make(Tok::Plus, std::move(start));
            case '?': return make(Tok::Question, std::move(start));
            case '(': return make(Tok::LParen, std::move(start));
            case ')': return make(Tok::RParen, std::move(start));
            case '[': return make(Tok::LBracket, std::move(start));
            case ']': return make(Tok::RBracket, std::move(start));
            case '}': return make(Tok::RBrace, std::move(start));
            case ';': return make(Tok::Semi, std::move(start));
            case ',': return make(Tok::Comma, std::move(start));
            case '=': return make(Tok::Eq, std::move(start));
            case ':': return make(Tok::Colon, std::move(start));
            case '!': return make(Tok::Bang, std::move(start));
            case '<': return make(Tok::Lt, std::move(start));
            case '>': return make(Tok::Gt, std::move(start));
            case '$': return make(Tok::Dollar, std::move(start));
            default:
                error(start, std::string("unexpected character '") + c + "'");
                return nextToken();
        }
    }

    // Inside {{ }}: flat stream of identifiers, integers, quoted literals and
    // single punctuation characters. Adjacent {{ / }} pairs nest for balance.
    Token nextSequenceToken() {
        if (pending_.kind != Tok::End) {
            Token t = std::move(pending_);
            pending_ = Token{};
            return t;
        }
        skipTrivia();
        SourceSpan start = cur_.here();
        if (cur_.atEnd()) {
            error(start, "unterminated '{{' sequence");
            seqDepth_ = 0;
            return make(Tok::End, std::move(start));
        }
        char c = cur_.peek();
        if (identStart(c)) return lexIdent(std::move(start));
        if (digit(c)) return lexInt(std::move(start), false);
        if (c == '-' && digit(cur_.peek(1))) {
            cur_.take();
            return lexInt(std::move(start), true);
        }
        if (c == '"') return lexString(std::move(start));
        if (c == '\'') return lexLexLiteral(std::move(start));
        if (c == '}' && cur_.peek(1) == '}') {
            cur_.take();
            cur_.take();
            if (--seqDepth_ == 0) return make(Tok::SeqClose, std::move(start));
            Token t = make(Tok::SeqPunct, start, "}");
            pending_ = t;
            return t;
        }
        if (c == '{' && cur_.peek(1) == '{') {
            cur_.take();
            cur_.take();
            ++seqDepth_;
            Token t = make(Tok::SeqPunct, start, "{");
            pending_ = t;
            return t;
        }
        cur_.take();
        return make(Tok::SeqPunct, std::move(start), std::string(1, c));
    }

    Cursor cur_;
    std::vector<Diagnostic>& diags_;
    int seqDepth_ = 0;
    Token pending_;
};

}  // namespace

std::vector<Token> lex(std::string_view text, const std::string& fileName,
                       std::vector<Diagnostic>& diagnostics) {
    return Lexer(text, fileName, diagnostics).run();
}

}  // namespace gramkit
