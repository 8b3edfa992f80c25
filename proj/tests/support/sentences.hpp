#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gramkit/grammar.hpp"
#include "gramkit/yacc.hpp"

namespace oracle {

// A sentence is a sequence of terminal texts; sets are bounded by sentence
// length (token count).
using Sentence = std::vector<std::string>;
using SentenceSet = std::set<Sentence>;

// Bounded language of every symbol of an EBNF grammar, computed by fixpoint
// iteration directly over the expression trees (iterations are closed within
// the length bound). References to undeclared names contribute that name as
// a terminal. Intended for grammars whose declared symbols are all
// syntactic.
std::map<std::string, SentenceSet> ebnfLanguages(const gramkit::Grammar& g, std::size_t maxLen);

// Bounded language of every nonterminal of a lowered BNF grammar; token
// names are mapped back to their lexeme text (literals) or kept as names.
std::map<std::string, SentenceSet> bnfLanguages(const gramkit::BnfGrammar& bnf,
                                                std::size_t maxLen);

}  // namespace oracle
