#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dicheck/catalog.hpp"
#include "dicheck/inference.hpp"
#include "dicheck/model.hpp"
#include "dicheck/specl.hpp"

namespace dicheck::conformance {

enum class Status { Satisfied, Violated, NotExercised, NotApplicable, Unchecked };

std::string to_string(Status status);

// A witness grounds a verdict: the trace event that satisfies/violates a
// condition, the proof tree behind an ability, a model declaration, or the
// description of a missing prerequisite.
struct EventWitness {
    long seq = 0;
    std::string detail;
};

struct ProofWitness {
    inference::ProofTree tree;
};

struct DeclarationWitness {
    std::string detail;  // e.g., "wallet w declared for owner o"
};

struct GapWitness {
    std::string detail;  // what was expected and absent
};

using Witness = std::variant<EventWitness, ProofWitness, DeclarationWitness, GapWitness>;

std::string describe(const Witness& witness);

struct Verdict {
    std::string fr_key;
    Status status = Status::Unchecked;
    std::vector<Witness> witnesses;
    std::string message;
};

/// Evaluates one FR. T2/T3 FRs check the derived ability or declared
/// interface in the saturated model; trace obligations (the consent suite)
/// run their compiled condition checks when a trace is supplied. FRs without
/// registered semantics come back Unchecked, never silently Satisfied.
Verdict check_fr(const catalog::FrEntry& fr, const model::SystemModel& model,
                 const inference::FactSet& saturated, const specl::Trace* trace);

/// Verdicts for the ten built-in consent FRs, in key order.
std::vector<Verdict> check_consent_suite(const model::SystemModel& model,
                                         const inference::FactSet& saturated,
                                         const specl::Trace* trace);

/// Worst-status-wins aggregation across traces:
/// violated > unchecked > satisfied > not-exercised > not-applicable.
Status worse(Status a, Status b);
std::vector<Verdict> aggregate(const std::vector<std::vector<Verdict>>& per_trace);

// ---------------------------------------------------------------------------
// Statement templates and lint

catalog::Template classify_template(const std::string& statement);
bool is_nonconforming(const std::string& statement);

/// classify_template wrapped with a nonconforming signal (nullopt).
std::optional<catalog::Template> template_of(const std::string& statement);

struct LintFinding {
    std::string target;     // FR key, or "set" for set-level criteria
    std::string criterion;  // atomic|unique|...|complete|consistent|...
    bool passed = false;
    std::string detail;
};

struct LintOptions {
    std::vector<std::string> vague_terms = {"appropriate", "user-friendly", "etc."};
    std::vector<std::string> implementation_terms = {"blockchain", "database",
                                                     "javascript",  "http",
                                                     "sql",         "x509"};
    size_t max_words = 40;
};

/// Findings for the eight per-statement criteria, in fixed order: atomic,
/// unique, feasible, legal, clear, precise, verifiable, abstract.
std::vector<LintFinding> lint_statement(const catalog::FrEntry& fr,
                                        const catalog::RequirementSet& reqs,
                                        const catalog::Catalog& cat,
                                        const LintOptions& options = {});

/// Findings for the seven set-level criteria, in fixed order: complete,
/// consistent, non-redundant, modular, structured, satisfied, qualified.
std::vector<LintFinding> lint_set(const catalog::RequirementSet& reqs,
                                  const catalog::Catalog& cat,
                                  const LintOptions& options = {});

// ---------------------------------------------------------------------------
// Coverage matrix

enum class Coverage { Blank, Linked, ConstraintApplies };

struct CoverageMatrix {
    std::vector<std::string> nfr_keys;  // all 24, catalog order
    std::vector<std::string> fr_keys;   // requirement-set order
    std::map<std::pair<std::string, std::string>, Coverage> cells;  // (nfr, fr)
    std::map<std::string, int> linked_counts;  // per NFR

    Coverage at(const std::string& nfr, const std::string& fr) const;
};

CoverageMatrix coverage_matrix(const catalog::RequirementSet& reqs,
                               const catalog::Catalog& cat);

}  // namespace dicheck::conformance
