#pragma once

#include <set>

#include "gramkit/grammar.hpp"

namespace oracle {

// Direct detector for immediate left recursion: a symbol is flagged iff some
// production's first term (the body itself when it is not a sequence) is a
// reference resolving back to that symbol.
std::set<gramkit::NodeId> directLeftRecursive(const gramkit::Grammar& g);

}  // namespace oracle
