#pragma once

#include <string>
#include <vector>

#include "gramkit/query.hpp"

namespace gramkit {

/// `error on V : "msg";` — fired once per match, or once per whole grammar
/// for `error on nomatch`.
struct ConstraintRule {
    Severity severity = Severity::Error;
    bool onNoMatch = false;
    std::string targetVar;  // empty when onNoMatch
    std::string message;
    SourceSpan span;
};

struct AttachmentRule {
    std::string var;
    std::vector<Attribute> attributes;
    SourceSpan span;
};

/// One aspect rule: a query plus the attachments and constraints applied to
/// its matches.
struct AspectRule {
    Query query;
    std::vector<AttachmentRule> attachments;
    std::vector<ConstraintRule> constraints;
    SourceSpan span;
};

struct Aspect {
    std::string name;  // derived from the file name
    std::vector<AspectRule> rules;
};

struct WeaveResult {
    Grammar grammar;
    std::vector<Diagnostic> diagnostics;
};

/// Apply an aspect: rules run in file order, each matching against the
/// grammar as annotated by the preceding rules. Attachments attach their
/// attributes to the bound nodes (every node of a captured run); replacing
/// an attribute with a different value emits a warning. Constraints of a
/// rule are evaluated on the same match list, after its attachments.
WeaveResult applyAspect(const Aspect& aspect, const Grammar& grammar);

/// Apply several aspects in order (command-line order).
WeaveResult applyAspects(const std::vector<Aspect>& aspects, const Grammar& grammar);

/// Evaluate only the constraint rules of an aspect against an already
/// annotated grammar; attachments are not applied.
std::vector<Diagnostic> checkConstraints(const Aspect& aspect, const Grammar& grammar);

}  // namespace gramkit
