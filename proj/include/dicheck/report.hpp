#pragma once

#include <string>
#include <vector>

#include "dicheck/catalog.hpp"
#include "dicheck/conformance.hpp"

namespace dicheck::report {

enum class Format { Human, Machine };

/// Per-FR verdict lines. Machine format, one line per FR in ascending key
/// order: `verdict <fr-key> <status> witnesses=<n> "<message>"` followed by
/// indented witness lines. Human format renders an aligned table.
std::string render_verdicts(const std::vector<conformance::Verdict>& verdicts,
                            Format format);

/// Lint findings. Machine: `lint <target> <criterion> <pass|fail> "<detail>"`.
std::string render_findings(const std::vector<conformance::LintFinding>& findings,
                            Format format);

/// Coverage matrix. Machine: `cover <nfr-key> <fr-key> <linked|constraint>`
/// plus `summary <nfr-key> linked=<n>` lines. Human: a grid.
std::string render_coverage(const conformance::CoverageMatrix& matrix, Format format);

/// The combined report: coverage matrix, per-NFR verdict summary, lint
/// summary. Deterministic; no timestamps unless stamp is nonempty.
std::string render_report(const conformance::CoverageMatrix& matrix,
                          const std::vector<conformance::Verdict>& verdicts,
                          const std::vector<conformance::LintFinding>& findings,
                          const catalog::Catalog& cat, Format format,
                          const std::string& stamp = "");

}  // namespace dicheck::report
