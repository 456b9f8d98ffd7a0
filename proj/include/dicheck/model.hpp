#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dicheck/diagnostics.hpp"
#include "dicheck/specl.hpp"

namespace dicheck::model {

enum class ActorKind { DataOwner, Verifier, Issuer, GlobalSystem, Wallet, Generic };

std::string to_string(ActorKind kind);
std::optional<ActorKind> actor_kind_from(const std::string& token);

struct ActorRef {
    std::string id;
    ActorKind kind = ActorKind::Generic;
    std::optional<std::string> wallet_of;  // set when kind == Wallet and paired
};

enum class ResourceSort { Service, Data };

std::string to_string(ResourceSort sort);

enum class DataClass { Credential, Personal };

std::string to_string(DataClass data_class);
std::optional<DataClass> data_class_from(const std::string& token);

struct Resource {
    std::string id;
    ResourceSort sort = ResourceSort::Data;
    std::set<std::string> requires_data;        // services only
    std::optional<DataClass> data_class;        // data only
};

// Alphabetical so that Fact's default ordering is the canonical
// (relation-name, subject, object, counterparty) lexicographic order.
enum class Relation { Fulfills, Has, Offers, Owns, Presents, Requests, Retrieves, Stores };

std::string to_string(Relation relation);
std::optional<Relation> relation_from(const std::string& token);

struct Fact {
    Relation relation = Relation::Has;
    std::string subject;
    std::string object;
    std::optional<std::string> counterparty;

    friend auto operator<=>(const Fact&, const Fact&) = default;
};

std::string to_string(const Fact& fact);

struct SystemModel {
    std::string id;
    std::map<std::string, ActorRef> actors;
    std::map<std::string, Resource> resources;
    std::set<Fact> declared_facts;

    const ActorRef* find_actor(const std::string& id) const;
    const Resource* find_resource(const std::string& id) const;
};

struct BuildResult {
    std::optional<SystemModel> model;
    Diagnostics diagnostics;
};

/// Resolves parsed declarations into a SystemModel. Fails (with one
/// diagnostic per problem) on duplicate ids, dangling references, relation
/// sort mismatches and double wallet pairings.
BuildResult build_model(const specl::ModelDecls& decls);

/// Re-checks invariants on an already-built model; returns diagnostics only.
/// Adds the owned-but-never-offered warning for issuance-style dead ends.
Diagnostics validate_model(const SystemModel& model);

/// The declared fact set. Refuses (empty set + error diagnostics) when
/// validate_model reports errors.
struct FactsResult {
    std::set<Fact> facts;
    Diagnostics diagnostics;
};
FactsResult base_facts(const SystemModel& model);

/// Canonical .dimodel rendering of a model (round-trips through parse_model
/// + build_model).
std::string render(const SystemModel& model);

/// The canonical five-actor model used in documentation and tests: o, v, i,
/// s, w with issuance/verification/revocation/registry-keeping/storage
/// services and personal_data/credential data.
SystemModel canonical_model();

/// Source text that canonical_model() is built from.
std::string canonical_model_text();

}  // namespace dicheck::model
