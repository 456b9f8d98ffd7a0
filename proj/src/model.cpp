#include "dicheck/model.hpp"

#include <algorithm>
#include <sstream>

namespace dicheck::model {

std::string to_string(ActorKind kind) {
    switch (kind) {
        case ActorKind::DataOwner: return "owner";
        case ActorKind::Verifier: return "verifier";
        case ActorKind::Issuer: return "issuer";
        case ActorKind::GlobalSystem: return "system";
        case ActorKind::Wallet: return "wallet";
        case ActorKind::Generic: return "generic";
    }
    return "?";
}

std::optional<ActorKind> actor_kind_from(const std::string& token) {
    if (token == "owner" || token == "data-owner" || token == "o")
        return ActorKind::DataOwner;
    if (token == "verifier" || token == "v") return ActorKind::Verifier;
    if (token == "issuer" || token == "i") return ActorKind::Issuer;
    if (token == "system" || token == "global-system" || token == "s")
        return ActorKind::GlobalSystem;
    if (token == "wallet" || token == "w") return ActorKind::Wallet;
    if (token == "generic" || token == "g") return ActorKind::Generic;
    return std::nullopt;
}

std::string to_string(ResourceSort sort) {
    return sort == ResourceSort::Service ? "service" : "data";
}

std::string to_string(DataClass data_class) {
    return data_class == DataClass::Credential ? "credential" : "personal";
}

std::optional<DataClass> data_class_from(const std::string& token) {
    if (token == "credential") return DataClass::Credential;
    if (token == "personal") return DataClass::Personal;
    return std::nullopt;
}

std::string to_string(Relation relation) {
    switch (relation) {
        case Relation::Owns: return "owns";
        case Relation::Has: return "has";
        case Relation::Offers: return "offers";
        case Relation::Fulfills: return "fulfills";
        case Relation::Requests: return "requests";
        case Relation::Presents: return "presents";
        case Relation::Retrieves: return "retrieves";
        case Relation::Stores: return "stores";
    }
    return "?";
}

std::optional<Relation> relation_from(const std::string& token) {
    if (token == "owns") return Relation::Owns;
    if (token == "has") return Relation::Has;
    if (token == "offers") return Relation::Offers;
    if (token == "fulfills") return Relation::Fulfills;
    if (token == "requests") return Relation::Requests;
    if (token == "presents") return Relation::Presents;
    if (token == "retrieves") return Relation::Retrieves;
    if (token == "stores") return Relation::Stores;
    return std::nullopt;
}

std::string to_string(const Fact& fact) {
    std::ostringstream out;
    out << to_string(fact.relation) << ' ' << fact.subject << ' ' << fact.object;
    if (fact.counterparty) out << " to=" << *fact.counterparty;
    return out.str();
}

const ActorRef* SystemModel::find_actor(const std::string& id) const {
    auto it = actors.find(id);
    return it == actors.end() ? nullptr : &it->second;
}

const Resource* SystemModel::find_resource(const std::string& id) const {
    auto it = resources.find(id);
    return it == resources.end() ? nullptr : &it->second;
}

namespace {

// Sort constraints per relation: presents/stores/retrieves take data,
// fulfills/requests take services, owns/has take either, and offers takes
// either too (a service when feeding fulfills, data when feeding third-party
// retrieval).
bool relation_wants_data(Relation relation) {
    return relation == Relation::Presents || relation == Relation::Stores ||
           relation == Relation::Retrieves;
}

bool relation_wants_service(Relation relation) {
    return relation == Relation::Fulfills || relation == Relation::Requests;
}

}  // namespace

BuildResult build_model(const specl::ModelDecls& decls) {
    BuildResult result;
    Diagnostics& diags = result.diagnostics;
    SystemModel model;
    model.id = decls.model_id;

    for (const auto& decl : decls.actors) {
        auto kind = actor_kind_from(decl.kind);
        if (!kind) {
            diags.push_back(error_at("unknown actor kind `" + decl.kind + "`", decl.span));
            continue;
        }
        if (model.actors.count(decl.id) || model.resources.count(decl.id)) {
            diags.push_back(error_at("duplicate id `" + decl.id + "`", decl.span));
            continue;
        }
        if (decl.wallet_of && *kind != ActorKind::Wallet) {
            diags.push_back(
                error_at("of= pairing is only valid on wallet actors", decl.span));
            continue;
        }
        ActorRef actor{decl.id, *kind, decl.wallet_of};
        model.actors.emplace(decl.id, std::move(actor));
    }

    for (const auto& decl : decls.resources) {
        if (model.actors.count(decl.id) || model.resources.count(decl.id)) {
            diags.push_back(error_at("duplicate id `" + decl.id + "`", decl.span));
            continue;
        }
        Resource res;
        res.id = decl.id;
        res.sort = decl.is_service ? ResourceSort::Service : ResourceSort::Data;
        if (decl.data_class) {
            auto data_class = data_class_from(*decl.data_class);
            if (!data_class) {
                diags.push_back(error_at(
                    "unknown data class `" + *decl.data_class + "`", decl.span));
                continue;
            }
            res.data_class = *data_class;
        }
        for (const auto& req : decl.requires_data) res.requires_data.insert(req);
        model.resources.emplace(decl.id, std::move(res));
    }

    // second pass: referential checks that need the full symbol table
    for (const auto& decl : decls.actors) {
        if (!decl.wallet_of) continue;
        auto it = model.actors.find(decl.id);
        if (it == model.actors.end()) continue;
        const ActorRef* owner = model.find_actor(*decl.wallet_of);
        if (!owner) {
            diags.push_back(error_at("undeclared actor `" + *decl.wallet_of +
                                         "` in wallet pairing",
                                     decl.span));
        } else if (owner->kind != ActorKind::DataOwner) {
            diags.push_back(error_at("wallet pairing must reference a data owner",
                                     decl.span));
        }
    }
    std::map<std::string, std::string> wallet_by_owner;
    for (const auto& [id, actor] : model.actors) {
        if (actor.kind != ActorKind::Wallet || !actor.wallet_of) continue;
        auto [it, inserted] = wallet_by_owner.emplace(*actor.wallet_of, id);
        if (!inserted) {
            diags.push_back(error_at("owner `" + *actor.wallet_of +
                                         "` already paired with wallet `" +
                                         it->second + "`",
                                     {1, 1, 0}));
        }
    }
    for (const auto& decl : decls.resources) {
        if (!decl.is_service) continue;
        for (size_t i = 0; i < decl.requires_data.size(); ++i) {
            const std::string& req = decl.requires_data[i];
            const Resource* res = model.find_resource(req);
            SourceSpan span =
                i < decl.requires_spans.size() ? decl.requires_spans[i] : decl.span;
            if (!res) {
                diags.push_back(
                    error_at("undeclared data `" + req + "` in requires=", span));
            } else if (res->sort != ResourceSort::Data) {
                diags.push_back(
                    error_at("requires= must reference data, `" + req +
                                 "` is a service",
                             span));
            }
        }
    }

    for (const auto& decl : decls.facts) {
        auto relation = relation_from(decl.relation);
        if (!relation) {
            diags.push_back(
                error_at("unknown relation `" + decl.relation + "`", decl.span));
            continue;
        }
        if (!model.find_actor(decl.subject)) {
            diags.push_back(
                error_at("undeclared actor `" + decl.subject + "`", decl.span));
            continue;
        }
        const Resource* object = model.find_resource(decl.object);
        if (!object) {
            diags.push_back(
                error_at("undeclared resource `" + decl.object + "`", decl.span));
            continue;
        }
        if (relation_wants_data(*relation) && object->sort != ResourceSort::Data) {
            diags.push_back(error_at("`" + decl.relation + "` takes a data object, `" +
                                         decl.object + "` is a service",
                                     decl.span));
            continue;
        }
        if (relation_wants_service(*relation) && object->sort != ResourceSort::Service) {
            diags.push_back(error_at("`" + decl.relation +
                                         "` takes a service object, `" + decl.object +
                                         "` is data",
                                     decl.span));
            continue;
        }
        if (decl.counterparty && !model.find_actor(*decl.counterparty)) {
            diags.push_back(
                error_at("undeclared actor `" + *decl.counterparty + "` in to=",
                         decl.span));
            continue;
        }
        model.declared_facts.insert(
            Fact{*relation, decl.subject, decl.object, decl.counterparty});
    }

    if (!has_errors(diags)) result.model = std::move(model);
    return result;
}

Diagnostics validate_model(const SystemModel& model) {
    Diagnostics diags;
    for (const Fact& fact : model.declared_facts) {
        if (!model.find_actor(fact.subject)) {
            diags.push_back(
                error_at("fact references undeclared actor `" + fact.subject + "`",
                         {1, 1, 0}));
        }
        if (!model.find_resource(fact.object)) {
            diags.push_back(
                error_at("fact references undeclared resource `" + fact.object + "`",
                         {1, 1, 0}));
        }
        if (fact.counterparty && !model.find_actor(*fact.counterparty)) {
            diags.push_back(
                error_at("fact references undeclared actor `" + *fact.counterparty + "`",
                         {1, 1, 0}));
        }
    }
    std::map<std::string, int> wallets_per_owner;
    for (const auto& [id, actor] : model.actors) {
        if (actor.kind == ActorKind::Wallet && actor.wallet_of) {
            if (++wallets_per_owner[*actor.wallet_of] > 1) {
                diags.push_back(error_at(
                    "owner `" + *actor.wallet_of + "` paired with multiple wallets",
                    {1, 1, 0}));
            }
        }
    }
    // Owned service that is never offered can never be fulfilled: warn.
    for (const Fact& fact : model.declared_facts) {
        if (fact.relation != Relation::Owns) continue;
        const Resource* res = model.find_resource(fact.object);
        if (!res || res->sort != ResourceSort::Service) continue;
        bool offered = false;
        for (const Fact& other : model.declared_facts) {
            if (other.relation == Relation::Offers && other.subject == fact.subject &&
                other.object == fact.object) {
                offered = true;
                break;
            }
        }
        if (!offered) {
            diags.push_back(warning_at("service `" + fact.object + "` owned by `" +
                                           fact.subject + "` but never offered",
                                       {1, 1, 0}));
        }
    }
    return diags;
}

FactsResult base_facts(const SystemModel& model) {
    FactsResult result;
    Diagnostics diags = validate_model(model);
    if (has_errors(diags)) {
        result.diagnostics = std::move(diags);
        return result;
    }
    result.facts = model.declared_facts;
    return result;
}

std::string render(const SystemModel& model) {
    specl::ModelDecls decls;
    decls.model_id = model.id;
    for (const auto& [id, actor] : model.actors) {
        specl::ActorDecl decl;
        decl.kind = to_string(actor.kind);
        decl.id = id;
        decl.wallet_of = actor.wallet_of;
        decls.actors.push_back(std::move(decl));
    }
    for (const auto& [id, res] : model.resources) {
        specl::ResourceDecl decl;
        decl.id = id;
        decl.is_service = res.sort == ResourceSort::Service;
        decl.requires_data.assign(res.requires_data.begin(), res.requires_data.end());
        if (res.data_class) decl.data_class = to_string(*res.data_class);
        decls.resources.push_back(std::move(decl));
    }
    for (const Fact& fact : model.declared_facts) {
        specl::FactDecl decl;
        decl.relation = to_string(fact.relation);
        decl.subject = fact.subject;
        decl.object = fact.object;
        decl.counterparty = fact.counterparty;
        decls.facts.push_back(std::move(decl));
    }
    return specl::render(decls);
}

std::string canonical_model_text() {
    return
        "version 1\n"
        "model canonical\n"
        "actor owner o\n"
        "actor verifier v\n"
        "actor issuer i\n"
        "actor system s\n"
        "actor wallet w of=o\n"
        "service issuance requires=personal_data\n"
        "service verification requires=credential\n"
        "service revocation requires=credential\n"
        "service registry-keeping\n"
        "service storage\n"
        "data personal_data class=personal\n"
        "data credential class=credential\n"
        "fact owns o personal_data\n"
        "fact owns i issuance\n"
        "fact offers i issuance\n"
        "fact owns v verification\n"
        "fact offers v verification\n"
        "fact owns i revocation\n"
        "fact offers i revocation\n"
        "fact owns s registry-keeping\n"
        "fact offers s registry-keeping\n"
        "fact owns w storage\n"
        "fact offers w storage\n"
        "fact owns o credential\n"
        "fact stores w credential\n"
        "fact has s credential\n"
        "fact offers s credential\n"
        "fact requests o issuance\n"
        "fact requests v verification\n"
        "fact requests o revocation\n";
}

SystemModel canonical_model() {
    auto parsed = specl::parse_model(canonical_model_text());
    auto built = build_model(*parsed.decls);
    return *built.model;
}

}  // namespace dicheck::model
