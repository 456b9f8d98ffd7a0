#include "dicheck/diagnostics.hpp"

#include <sstream>

namespace dicheck {

std::string format_diagnostic(const Diagnostic& diag) {
    std::ostringstream out;
    out << diag.span.line << ':' << diag.span.column << ": "
        << (diag.severity == Severity::Error ? "error" : "warning") << ": "
        << diag.message;
    return out.str();
}

std::string format_diagnostics(const Diagnostics& diags) {
    std::ostringstream out;
    for (const auto& diag : diags) {
        out << format_diagnostic(diag) << '\n';
    }
    return out.str();
}

}  // namespace dicheck
