#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gramkit/source.hpp"

namespace gramkit {

enum class Tok {
    End,
    Ident,
    Int,
    String,      // double-quoted
    LexLiteral,  // single-quoted
    Arrow,       // ->
    DblBar,      // ||
    Bar,         // |
    Star,
    Plus,
    Question,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    SeqOpen,     // {{ ... switches into sequence mode
    SeqClose,    // }}
    SeqPunct,    // single punctuation character inside {{ }}
    Semi,
    Comma,
    Dot,
    DotDot,
    DashDash,    // -- (character class ranges)
    Eq,
    Colon,
    Bang,
    Lt,
    Gt,
    Dollar,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;  // identifier / decoded literal text / punctuation char
    std::int64_t intValue = 0;
    SourceSpan span;
};

const char* tokName(Tok t);

/// Tokenize a whole input. Inside balanced `{{ ... }}` pairs the lexer yields
/// a flat stream of identifiers, integers, quoted literals and single
/// punctuation characters (SeqPunct). Comments (`//`, `/* */`) are skipped in
/// both modes. Lexical errors are reported and the offending character
/// skipped.
std::vector<Token> lex(std::string_view text, const std::string& fileName,
                       std::vector<Diagnostic>& diagnostics);

}  // namespace gramkit
