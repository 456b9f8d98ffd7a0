#pragma once

#include <string>
#include <vector>

namespace dicheck {

/// Location of a token inside a source document. Lines and columns are
/// 1-based; length counts characters of the offending token.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;

    auto operator<=>(const SourceSpan&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

inline bool has_errors(const Diagnostics& diags) {
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) return true;
    }
    return false;
}

inline Diagnostic error_at(std::string message, SourceSpan span) {
    return Diagnostic{Severity::Error, std::move(message), span};
}

inline Diagnostic warning_at(std::string message, SourceSpan span) {
    return Diagnostic{Severity::Warning, std::move(message), span};
}

/// "line:col: error: message" — the shape the CLI prints to stderr.
std::string format_diagnostic(const Diagnostic& d);

/// One formatted diagnostic per line.
std::string format_diagnostics(const Diagnostics& diags);

}  // namespace dicheck
