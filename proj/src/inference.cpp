#include "dicheck/inference.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dicheck::inference {

using model::ActorKind;

bool FactSet::contains(const Fact& fact) const { return facts_.count(fact) > 0; }

bool FactSet::insert(const Fact& fact) { return facts_.insert(fact).second; }

int ProofTree::depth() const {
    int deepest = -1;
    for (const auto& child : children) deepest = std::max(deepest, child.depth());
    return deepest + 1;  // leaf (no children) = 0
}

namespace {

void render_into(const ProofTree& tree, int indent, std::ostringstream& out) {
    for (int i = 0; i < indent; ++i) out << "  ";
    out << to_string(tree.root) << "  [" << tree.rule << "]\n";
    for (const auto& child : tree.children) render_into(child, indent + 1, out);
}

}  // namespace

std::string render(const ProofTree& tree) {
    std::ostringstream out;
    render_into(tree, 0, out);
    return out.str();
}

Universe Universe::from_model(const model::SystemModel& m) {
    Universe u;
    for (const auto& [id, actor] : m.actors) u.actor_kinds[id] = actor.kind;
    for (const auto& [id, res] : m.resources) {
        u.resource_sorts[id] = res.sort == model::ResourceSort::Service
                                   ? ObjectSort::Service
                                   : ObjectSort::Data;
        if (res.sort == model::ResourceSort::Service) {
            u.requires_map[id] = res.requires_data;
        }
    }
    return u;
}

bool Universe::is_actor(const std::string& id) const { return actor_kinds.count(id) > 0; }

std::optional<ObjectSort> Universe::sort_of(const std::string& id) const {
    auto it = resource_sorts.find(id);
    if (it == resource_sorts.end()) return std::nullopt;
    return it->second;
}

RuleSet default_axioms() {
    RuleSet rules;

    // Ax1: If an actor owns a service or data, they have it.
    rules.push_back(Rule{
        "Ax1",
        Pattern{Relation::Has, Term::var("A"), Term::var("X"), ObjectSort::Either},
        {Pattern{Relation::Owns, Term::var("A"), Term::var("X"), ObjectSort::Either}},
        {}});

    // Ax2: If an actor has data, they present it.
    rules.push_back(Rule{
        "Ax2",
        Pattern{Relation::Presents, Term::var("A"), Term::var("D"), ObjectSort::Data},
        {Pattern{Relation::Has, Term::var("A"), Term::var("D"), ObjectSort::Data}},
        {}});

    // Ax3: If an actor has and offers a service, they fulfill it.
    rules.push_back(Rule{
        "Ax3",
        Pattern{Relation::Fulfills, Term::var("A"), Term::var("S"), ObjectSort::Service},
        {Pattern{Relation::Has, Term::var("A"), Term::var("S"), ObjectSort::Service},
         Pattern{Relation::Offers, Term::var("A"), Term::var("S"), ObjectSort::Service}},
        {}});

    // Ax4: If an actor has data, they store it.
    rules.push_back(Rule{
        "Ax4",
        Pattern{Relation::Stores, Term::var("A"), Term::var("D"), ObjectSort::Data},
        {Pattern{Relation::Has, Term::var("A"), Term::var("D"), ObjectSort::Data}},
        {}});

    // Ax5: If an actor stores data, they retrieve it.
    rules.push_back(Rule{
        "Ax5",
        Pattern{Relation::Retrieves, Term::var("A"), Term::var("D"), ObjectSort::Data},
        {Pattern{Relation::Stores, Term::var("A"), Term::var("D"), ObjectSort::Data}},
        {}});

    // Ax6: If an actor stores data, another actor retrieves it, provided an
    // actor c of global-system or wallet kind has and offers the data. The
    // retriever a ranges over the whole actor universe, a != b.
    {
        Rule ax6{
            "Ax6",
            Pattern{Relation::Retrieves, Term::var("A"), Term::var("D"), ObjectSort::Data},
            {Pattern{Relation::Stores, Term::var("B"), Term::var("D"), ObjectSort::Data},
             Pattern{Relation::Has, Term::var("C"), Term::var("D"), ObjectSort::Data},
             Pattern{Relation::Offers, Term::var("C"), Term::var("D"), ObjectSort::Data}},
            {}};
        ax6.guards.distinct.push_back({"A", "B"});
        ax6.guards.system_or_wallet.push_back("C");
        ax6.guards.universe_actors.push_back("A");
        rules.push_back(std::move(ax6));
    }

    // Ax7: If an actor presents data or retrieves it, and requests a service,
    // the service is fulfilled by the actor that has and offers it. The
    // disjunction compiles into two conjunctive variants sharing one id; the
    // datum must be one the service requires.
    {
        Rule ax7a{
            "Ax7",
            Pattern{Relation::Fulfills, Term::var("A"), Term::var("S"), ObjectSort::Service},
            {Pattern{Relation::Presents, Term::var("B"), Term::var("D"), ObjectSort::Data},
             Pattern{Relation::Requests, Term::var("B"), Term::var("S"), ObjectSort::Service},
             Pattern{Relation::Has, Term::var("A"), Term::var("S"), ObjectSort::Service},
             Pattern{Relation::Offers, Term::var("A"), Term::var("S"), ObjectSort::Service}},
            {}};
        ax7a.guards.requires_link.push_back({"D", "S"});
        rules.push_back(std::move(ax7a));

        Rule ax7b{
            "Ax7",
            Pattern{Relation::Fulfills, Term::var("A"), Term::var("S"), ObjectSort::Service},
            {Pattern{Relation::Retrieves, Term::var("A"), Term::var("D"), ObjectSort::Data},
             Pattern{Relation::Requests, Term::var("B"), Term::var("S"), ObjectSort::Service},
             Pattern{Relation::Has, Term::var("A"), Term::var("S"), ObjectSort::Service},
             Pattern{Relation::Offers, Term::var("A"), Term::var("S"), ObjectSort::Service}},
            {}};
        ax7b.guards.requires_link.push_back({"D", "S"});
        rules.push_back(std::move(ax7b));
    }

    return rules;
}

namespace {

using Binding = std::map<std::string, std::string>;

bool match_term(const Term& term, const std::string& value, Binding& binding) {
    if (!term.is_variable) return term.name == value;
    auto [it, inserted] = binding.emplace(term.name, value);
    return inserted || it->second == value;
}

bool sort_ok(const Universe& universe, const std::string& id, ObjectSort want) {
    if (want == ObjectSort::Either) return true;
    auto sort = universe.sort_of(id);
    return sort && *sort == want;
}

bool matches(const Pattern& pattern, const Fact& fact, const Universe& universe,
             Binding& binding) {
    if (pattern.relation != fact.relation) return false;
    if (!sort_ok(universe, fact.object, pattern.object_sort)) return false;
    Binding trial = binding;
    if (!match_term(pattern.subject, fact.subject, trial)) return false;
    if (!match_term(pattern.object, fact.object, trial)) return false;
    binding = std::move(trial);
    return true;
}

bool guards_pass(const RuleGuards& guards, const Binding& binding,
                 const Universe& universe) {
    for (const auto& [left, right] : guards.distinct) {
        auto l = binding.find(left);
        auto r = binding.find(right);
        if (l == binding.end() || r == binding.end()) return false;
        if (l->second == r->second) return false;
    }
    for (const auto& var : guards.system_or_wallet) {
        auto it = binding.find(var);
        if (it == binding.end()) return false;
        auto kind = universe.actor_kinds.find(it->second);
        if (kind == universe.actor_kinds.end()) return false;
        if (kind->second != ActorKind::GlobalSystem && kind->second != ActorKind::Wallet)
            return false;
    }
    for (const auto& [data_var, service_var] : guards.requires_link) {
        auto d = binding.find(data_var);
        auto s = binding.find(service_var);
        if (d == binding.end() || s == binding.end()) return false;
        auto reqs = universe.requires_map.find(s->second);
        if (reqs == universe.requires_map.end()) return false;
        if (!reqs->second.count(d->second)) return false;
    }
    return true;
}

std::optional<Fact> instantiate_head(const Pattern& head, const Binding& binding) {
    Fact fact;
    fact.relation = head.relation;
    if (head.subject.is_variable) {
        auto it = binding.find(head.subject.name);
        if (it == binding.end()) return std::nullopt;
        fact.subject = it->second;
    } else {
        fact.subject = head.subject.name;
    }
    if (head.object.is_variable) {
        auto it = binding.find(head.object.name);
        if (it == binding.end()) return std::nullopt;
        fact.object = it->second;
    } else {
        fact.object = head.object.name;
    }
    return fact;
}

// Invokes `emit(binding, children)` for every complete body match (plus
// guard filtering and universe enumeration of unbound-head actors). When
// `delta` is nonnull, only matches touching at least one delta fact fire.
void enumerate_matches(
    const Rule& rule, const FactSet& facts, const std::set<Fact>* delta,
    const Universe& universe,
    const std::function<void(const Binding&, const std::vector<Fact>&)>& emit) {
    std::vector<Fact> children;
    std::function<void(size_t, Binding, bool)> step = [&](size_t index, Binding binding,
                                                          bool used_delta) {
        if (index == rule.body.size()) {
            if (delta && !used_delta) return;
            // enumerate unbound head-side actors (Ax6's retriever)
            std::vector<std::string> to_enumerate;
            for (const auto& var : rule.guards.universe_actors) {
                if (!binding.count(var)) to_enumerate.push_back(var);
            }
            std::function<void(size_t, Binding&)> expand = [&](size_t vi, Binding& b) {
                if (vi == to_enumerate.size()) {
                    if (guards_pass(rule.guards, b, universe)) emit(b, children);
                    return;
                }
                for (const auto& [actor, kind] : universe.actor_kinds) {
                    b[to_enumerate[vi]] = actor;
                    expand(vi + 1, b);
                }
                b.erase(to_enumerate[vi]);
            };
            expand(0, binding);
            return;
        }
        const Pattern& pattern = rule.body[index];
        for (const Fact& fact : facts) {
            Binding trial = binding;
            if (!matches(pattern, fact, universe, trial)) continue;
            children.push_back(fact);
            step(index + 1, std::move(trial), used_delta || (delta && delta->count(fact)));
            children.pop_back();
        }
    };
    step(0, Binding{}, false);
}

}  // namespace

Diagnostics validate_rules(const RuleSet& rules) {
    Diagnostics diags;
    for (const Rule& rule : rules) {
        std::set<std::string> bound;
        for (const Pattern& pattern : rule.body) {
            if (pattern.subject.is_variable) bound.insert(pattern.subject.name);
            if (pattern.object.is_variable) bound.insert(pattern.object.name);
        }
        for (const auto& var : rule.guards.universe_actors) bound.insert(var);
        auto check = [&](const Term& term) {
            if (term.is_variable && !bound.count(term.name)) {
                diags.push_back(error_at("rule " + rule.id + ": head variable `" +
                                             term.name + "` unbound by body",
                                         {1, 1, 0}));
            }
        };
        check(rule.head.subject);
        check(rule.head.object);
        if (rule.body.empty()) {
            diags.push_back(error_at("rule " + rule.id + ": empty body", {1, 1, 0}));
        }
    }
    return diags;
}

SaturateResult saturate(const FactSet& base, const RuleSet& rules,
                        const Universe& universe) {
    SaturateResult result;
    result.diagnostics = validate_rules(rules);
    if (has_errors(result.diagnostics)) return result;

    FactSet all = base;
    std::set<Fact> delta = base.facts();
    bool first_round = true;
    while (!delta.empty()) {
        std::set<Fact> next;
        for (const Rule& rule : rules) {
            enumerate_matches(
                rule, all, first_round ? nullptr : &delta, universe,
                [&](const Binding& binding, const std::vector<Fact>&) {
                    auto head = instantiate_head(rule.head, binding);
                    if (!head) return;
                    if (!all.contains(*head) && !next.count(*head)) next.insert(*head);
                });
        }
        for (const Fact& fact : next) all.insert(fact);
        delta = std::move(next);
        first_round = false;
    }
    result.facts = std::move(all);
    return result;
}

std::optional<ProofTree> derive(const Fact& goal, const FactSet& base,
                                const RuleSet& rules, const Universe& universe) {
    if (has_errors(validate_rules(rules))) return std::nullopt;

    SaturateResult saturated = saturate(base, rules, universe);
    const FactSet& all = saturated.facts;

    // Resolve the goal: exact fact preferred, otherwise the first fact with
    // the same (relation, subject, object) triple. Lets callers ask for a
    // directed base fact without naming its counterparty.
    Fact target = goal;
    if (!all.contains(target)) {
        bool found = false;
        for (const Fact& fact : all) {
            if (fact.relation == goal.relation && fact.subject == goal.subject &&
                fact.object == goal.object) {
                target = fact;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }

    // Minimal depth per fact: base = 0; derived = 1 + max(child depths),
    // minimized over all derivations. Fixpoint by repeated relaxation.
    std::map<Fact, int> depth;
    for (const Fact& fact : base) depth[fact] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& rule : rules) {
            enumerate_matches(
                rule, all, nullptr, universe,
                [&](const Binding& binding, const std::vector<Fact>& children) {
                    auto head = instantiate_head(rule.head, binding);
                    if (!head) return;
                    int worst = 0;
                    for (const Fact& child : children) {
                        auto it = depth.find(child);
                        if (it == depth.end()) {
                            worst = -1;  // child not yet reachable
                            break;
                        }
                        worst = std::max(worst, it->second);
                    }
                    if (worst < 0) return;
                    auto it = depth.find(*head);
                    if (it == depth.end() || it->second > worst + 1) {
                        depth[*head] = worst + 1;
                        changed = true;
                    }
                });
        }
    }

    // Reconstruct the minimal tree; ties by rule id then child-fact order.
    std::function<ProofTree(const Fact&)> build = [&](const Fact& fact) -> ProofTree {
        int want = depth.at(fact);
        if (want == 0) return ProofTree{fact, "base", {}};

        struct Candidate {
            std::string rule_id;
            std::vector<Fact> children;
        };
        std::optional<Candidate> best;
        for (const Rule& rule : rules) {
            enumerate_matches(
                rule, all, nullptr, universe,
                [&](const Binding& binding, const std::vector<Fact>& children) {
                    auto head = instantiate_head(rule.head, binding);
                    if (!head || !(*head == fact)) return;
                    int worst = 0;
                    for (const Fact& child : children) {
                        auto it = depth.find(child);
                        if (it == depth.end()) {
                            worst = -1;
                            break;
                        }
                        worst = std::max(worst, it->second);
                    }
                    if (worst < 0 || worst + 1 != want) return;
                    Candidate candidate{rule.id, children};
                    if (!best || std::tie(candidate.rule_id, candidate.children) <
                                     std::tie(best->rule_id, best->children)) {
                        best = std::move(candidate);
                    }
                });
        }
        ProofTree tree{fact, best->rule_id, {}};
        for (const Fact& child : best->children) tree.children.push_back(build(child));
        return tree;
    };

    return build(target);
}

std::vector<Fact> query(const FactSet& facts, const Pattern& pattern) {
    std::vector<Fact> out;
    // Universe-free matching: sort constraints need a universe, so query
    // matches purely on relation and terms.
    Universe empty;
    for (const Fact& fact : facts) {
        Binding binding;
        Pattern loose = pattern;
        loose.object_sort = ObjectSort::Either;
        if (matches(loose, fact, empty, binding)) out.push_back(fact);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dicheck::inference
