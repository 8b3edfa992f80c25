#include "gramkit/aspect.hpp"

namespace gramkit {

namespace {

SourceSpan spanOf(const Grammar& g, NodeId id) {
    NodeRef ref;
    if (findNode(g, id, ref)) return ref.span;
    return {};
}

void runConstraints(const AspectRule& rule, const std::vector<Binding>& matches,
                    const Grammar& g, std::vector<Diagnostic>& diags) {
    for (const auto& c : rule.constraints) {
        if (c.onNoMatch) {
            if (matches.empty())
                diags.push_back({c.severity, c.message, rule.query.span, {}});
            continue;
        }
        for (const auto& binding : matches) {
            auto it = binding.find(c.targetVar);
            if (it == binding.end() || it->second.nodes.empty()) continue;
            NodeId node = it->second.nodes.front();
            diags.push_back({c.severity, c.message, spanOf(g, node), node});
        }
    }
}

void applyRule(const AspectRule& rule, Grammar& g, std::vector<Diagnostic>& diags) {
    std::vector<Binding> matches = matchQuery(rule.query, g);
    for (const auto& binding : matches) {
        for (const auto& att : rule.attachments) {
            auto it = binding.find(att.var);
            if (it == binding.end()) continue;
            for (NodeId node : it->second.nodes) {
                for (const auto& attr : att.attributes) {
                    if (attach(g, node, attr) == AttachOutcome::Replaced) {
                        diags.push_back({Severity::Warning,
                                         "attribute '" + attr.name + "' on " + nodePath(g, node) +
                                             " replaced with a different value",
                                         spanOf(g, node), node});
                    }
                }
            }
        }
    }
    runConstraints(rule, matches, g, diags);
}

}  // namespace

WeaveResult applyAspect(const Aspect& aspect, const Grammar& grammar) {
    WeaveResult result{grammar, {}};
    for (const auto& rule : aspect.rules) applyRule(rule, result.grammar, result.diagnostics);
    return result;
}

WeaveResult applyAspects(const std::vector<Aspect>& aspects, const Grammar& grammar) {
    WeaveResult result{grammar, {}};
    for (const auto& aspect : aspects) {
        WeaveResult step = applyAspect(aspect, result.grammar);
        result.grammar = std::move(step.grammar);
        result.diagnostics.insert(result.diagnostics.end(), step.diagnostics.begin(),
                                  step.diagnostics.end());
    }
    return result;
}

std::vector<Diagnostic> checkConstraints(const Aspect& aspect, const Grammar& grammar) {
    std::vector<Diagnostic> diags;
    for (const auto& rule : aspect.rules) {
        if (rule.constraints.empty()) continue;
        std::vector<Binding> matches = matchQuery(rule.query, grammar);
        runConstraints(rule, matches, grammar, diags);
    }
    return diags;
}

}  // namespace gramkit
