#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gramkit/node_id.hpp"

namespace gramkit {

/// Half-open byte range in one input file, with the line/column of its start.
struct SourceSpan {
    std::string file;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t line = 0;    // 1-based; 0 means "no location"
    std::size_t column = 0;  // 1-based

    bool valid() const { return line > 0; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
    // Set when the diagnostic points at a grammar node (constraint hits,
    // attribute overrides); 0 otherwise.
    NodeId node{};
};

inline bool hasErrors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

/// "file:line:col: severity: message"
std::string formatDiagnostic(const Diagnostic& d);

/// Result of an operation that can fail with diagnostics. A missing value
/// implies at least one error-severity diagnostic.
template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value() && !hasErrors(diagnostics); }
};

}  // namespace gramkit
