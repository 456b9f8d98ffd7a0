#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicheck/diagnostics.hpp"
#include "dicheck/model.hpp"
#include "dicheck/specl.hpp"

namespace dicheck::simulator {

// Abstract step over roles; resolved against a concrete model when run.
struct Step {
    specl::EventKind kind = specl::EventKind::Request;
    model::ActorKind who = model::ActorKind::DataOwner;
    std::optional<model::ActorKind> counterparty;
    std::string object;                          // resource id in the canonical vocabulary
    std::map<std::string, std::string> attrs;    // literal attrs; values may hold
                                                 // placeholders filled per run
};

struct Scenario {
    std::string id;
    std::vector<Step> steps;
    std::map<std::string, std::string> parameters;  // consent text, purposes
};

enum class ViolationKind {
    SkipConsent,
    ProcessAfterWithdraw,
    SkipInform,
    ReuseConsentAcrossCredentials,
    VerifierInitiatedPresentation,
    DropMetadata,
    SkipProofGenerate,
};

std::string to_string(ViolationKind kind);
std::optional<ViolationKind> violation_kind_from(const std::string& token);
std::vector<ViolationKind> all_violation_kinds();

/// The built-in scenarios: issuance, presentation, proof-presentation,
/// revocation, export-import, retrieval, recovery.
std::vector<Scenario> builtin_scenarios();
const Scenario* find_scenario(const std::string& id);

struct RunResult {
    std::optional<specl::Trace> trace;
    Diagnostics diagnostics;
};

/// Emits the scenario's trace against `model`. Deterministic for fixed
/// (model, scenario, seed); the seed only varies non-semantic attr content.
/// Fails when the model lacks a role the scenario needs.
RunResult run_scenario(const model::SystemModel& model, const Scenario& scenario,
                       unsigned seed);

struct InjectResult {
    std::optional<specl::Trace> trace;
    Diagnostics diagnostics;
};

/// Applies the violation's minimal edit (delete / reorder / strip-attr) and
/// renumbers seq contiguously. Fails when the edit target is absent.
InjectResult inject_violation(const specl::Trace& trace, ViolationKind kind);

}  // namespace dicheck::simulator
