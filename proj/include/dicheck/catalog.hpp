#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dicheck/diagnostics.hpp"

namespace dicheck::catalog {

enum class NfrKind { Capability, Constraint };

enum class ActorClass { DataOwner, Verifier, Issuer, System, Wallet };

std::string to_string(NfrKind kind);
std::string to_string(ActorClass actor);
std::optional<ActorClass> actor_class_from(const std::string& token);

struct NfrEntry {
    std::string key;          // "NFR1".."NFR24" in the built-in catalog
    std::string name;         // short quality name, e.g. "Consent"
    std::string description;  // one sentence
    NfrKind kind = NfrKind::Capability;
};

struct CapabilityEntry {
    int number = 0;  // 1..24
    ActorClass actor = ActorClass::DataOwner;
    std::string text;  // starts with the "shall be able to" boilerplate
    // Set when the verbatim text carries a known typo; holds the repaired
    // wording, e.g. "pr personal data" -> "or personal data".
    std::optional<std::string> normalized_text;
};

enum class Template { T1, T2, T3 };

std::string to_string(Template t);
std::optional<Template> template_from(const std::string& token);

struct ConditionEntry {
    std::string key;     // e.g. "C6.4.1"
    std::string fr_key;  // owning FR, e.g. "FR6.4"
    std::string text;
};

struct FrEntry {
    std::string key;  // "FR6.4", "FR33a", ...
    std::string statement;
    Template template_type = Template::T1;
    std::vector<std::string> nfr_links;  // NFR keys, document order
    std::vector<std::string> condition_keys;
    std::vector<std::string> legal_tags;
    std::vector<std::string> criteria;    // free-text validation-criteria notes
    std::optional<std::string> trace_of;  // original FR key for updated statements
};

/// Orders requirement keys numerically: FR6.1 < FR6.9 < FR18 < FR33a < FR33b.
/// Plain lexicographic ordering would interleave FR18 between FR1x and FR2x
/// families, which makes reports unreadable.
struct KeyLess {
    bool operator()(const std::string& a, const std::string& b) const;
};

class Catalog {
public:
    std::map<std::string, NfrEntry, KeyLess> nfrs;  // numeric key order
    std::map<int, CapabilityEntry> capabilities;
    std::map<std::string, FrEntry, KeyLess> frs;
    std::map<std::string, ConditionEntry, KeyLess> conditions;

    const NfrEntry* find_nfr(const std::string& key) const;
    const CapabilityEntry* find_capability(int number) const;
    const FrEntry* find_fr(const std::string& key) const;
    const ConditionEntry* find_condition(const std::string& key) const;

    /// All NFR keys whose kind is Constraint, in key order.
    std::set<std::string> constraint_keys() const;

    /// Conditions owned by one FR, in key order.
    std::vector<const ConditionEntry*> conditions_of(const std::string& fr_key) const;

    /// Conditions of the FR plus, for updated statements, of its trace_of
    /// original. Obligation checks read the original's conditions through
    /// the updated key.
    std::vector<const ConditionEntry*> effective_conditions(const std::string& fr_key) const;
};

/// A requirement set is the slice of a catalog-document that carries fr/cond/
/// legal records, resolved against a base catalog. Checking and linting
/// operate on requirement sets; the catalog stays the immutable reference.
struct RequirementSet {
    std::vector<FrEntry> frs;  // key order
    std::map<std::string, ConditionEntry, KeyLess> conditions;

    const FrEntry* find(const std::string& key) const;
};

struct CatalogLoadResult {
    std::optional<Catalog> catalog;
    Diagnostics diagnostics;
};

struct RequirementParseResult {
    std::optional<RequirementSet> requirements;
    Diagnostics diagnostics;
};

/// The built-in knowledge base: 24 NFR, 24 actor capabilities, the nine
/// original consent FR with their fourteen conditions, and the ten updated
/// consent FR. Built once, immutable afterwards.
const Catalog& builtin_catalog();

/// Source text of the built-in catalog in catalog-document form. The built-in
/// catalog is produced by parsing this text, so the document grammar and the
/// shipped data cannot drift apart.
const std::string& builtin_catalog_text();

/// Parses a self-contained catalog-document: every fr nfr= link must resolve
/// inside the document itself.
CatalogLoadResult load_catalog(const std::string& text);

/// Extracts the requirement records of a document and resolves their links
/// against `base` (document-local nfr records extend the base). Used by the
/// CLI where user requirement files reference the built-in NFR entries.
RequirementParseResult parse_requirements(const std::string& text, const Catalog& base);

/// The ten updated consent statements (FR18, FR32, FR33a/b, FR44, FR46, FR47,
/// FR52, FR53, FR54) — the active built-in requirement set.
RequirementSet builtin_requirements();

/// The nine original consent statements FR6.1..FR6.9 with their conditions.
RequirementSet builtin_original_requirements();

/// Canonical catalog-document rendering of a requirement set.
std::string render(const RequirementSet& reqs);

}  // namespace dicheck::catalog
