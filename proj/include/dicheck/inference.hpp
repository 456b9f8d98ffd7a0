#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dicheck/model.hpp"

namespace dicheck::inference {

using model::Fact;
using model::Relation;

enum class ObjectSort { Service, Data, Either };

// A pattern term is a constant (matches that id) or a variable (binds).
struct Term {
    std::string name;
    bool is_variable = false;

    static Term var(std::string name) { return {std::move(name), true}; }
    static Term constant(std::string name) { return {std::move(name), false}; }
};

struct Pattern {
    Relation relation = Relation::Owns;
    Term subject;
    Term object;
    ObjectSort object_sort = ObjectSort::Either;
};

// Extra-logical guards the axioms need beyond conjunctive matching.
struct RuleGuards {
    // pairs of variables that must bind to distinct actors (Ax6: a != b)
    std::vector<std::pair<std::string, std::string>> distinct;
    // variables restricted to global-system or wallet actors (Ax6: c)
    std::vector<std::string> system_or_wallet;
    // (data_var, service_var): data_var must be in requires(service_var) (Ax7)
    std::vector<std::pair<std::string, std::string>> requires_link;
    // head variables not bound by the body; enumerated over all actors (Ax6: a)
    std::vector<std::string> universe_actors;
};

struct Rule {
    std::string id;  // "Ax1".."Ax7" or user id; Ax7's two variants share "Ax7"
    Pattern head;
    std::vector<Pattern> body;  // conjunctive; disjunction pre-compiled away
    RuleGuards guards;
};

using RuleSet = std::vector<Rule>;

class FactSet {
  public:
    FactSet() = default;
    explicit FactSet(std::set<Fact> facts) : facts_(std::move(facts)) {}

    bool contains(const Fact& fact) const;
    bool insert(const Fact& fact);  // true if newly added
    size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }
    const std::set<Fact>& facts() const { return facts_; }

    auto begin() const { return facts_.begin(); }
    auto end() const { return facts_.end(); }

    friend bool operator==(const FactSet&, const FactSet&) = default;

  private:
    std::set<Fact> facts_;
};

struct ProofTree {
    Fact root;
    std::string rule;  // rule id or "base"
    std::vector<ProofTree> children;

    int depth() const;  // base leaf = 0
};

/// Renders a proof tree as an indented derivation listing.
std::string render(const ProofTree& tree);

// Sort/actor-kind context the guarded axioms evaluate against.
struct Universe {
    std::map<std::string, model::ActorKind> actor_kinds;
    std::map<std::string, ObjectSort> resource_sorts;     // Service or Data only
    std::map<std::string, std::set<std::string>> requires_map;  // service -> data

    static Universe from_model(const model::SystemModel& model);

    bool is_actor(const std::string& id) const;
    std::optional<ObjectSort> sort_of(const std::string& id) const;
};

/// The seven axioms of the functional model, pre-compiled (Ax7 expands to two
/// conjunctive rules sharing the id "Ax7").
RuleSet default_axioms();

struct SaturateResult {
    FactSet facts;
    Diagnostics diagnostics;  // rule rejections (unbound head variables)
};

/// Least fixpoint of `rules` over `base`, semi-naive evaluation. Deterministic:
/// the result is a canonical ordered set independent of iteration order.
SaturateResult saturate(const FactSet& base, const RuleSet& rules, const Universe& universe);

/// Minimal-depth proof for `goal` if derivable; ties broken by rule id order
/// then lexicographic order of the child facts. Absent when not derivable.
std::optional<ProofTree> derive(const Fact& goal, const FactSet& base, const RuleSet& rules,
                                const Universe& universe);

/// All facts unifying with `pattern`, sorted by (relation, subject, object,
/// counterparty). Counterparty is ignored for matching.
std::vector<Fact> query(const FactSet& facts, const Pattern& pattern);

/// Validates rule well-formedness: every head variable bound by the body or a
/// guard. Returns one diagnostic per bad rule.
Diagnostics validate_rules(const RuleSet& rules);

}  // namespace dicheck::inference
