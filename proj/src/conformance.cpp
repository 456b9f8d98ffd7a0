#include <algorithm>
#include <sstream>

#include "dicheck/conformance.hpp"
#include "dicheck/readability.hpp"

namespace dicheck::conformance {

std::string to_string(Status status) {
    switch (status) {
        case Status::Satisfied: return "satisfied";
        case Status::Violated: return "violated";
        case Status::NotExercised: return "not-exercised";
        case Status::NotApplicable: return "not-applicable";
        case Status::Unchecked: return "unchecked";
    }
    return "unchecked";
}

std::string describe(const Witness& witness) {
    if (const auto* e = std::get_if<EventWitness>(&witness)) {
        std::ostringstream out;
        out << "event " << e->seq << ": " << e->detail;
        return out.str();
    }
    if (const auto* p = std::get_if<ProofWitness>(&witness)) {
        return "proof: " + model::to_string(p->tree.root) + " (" +
               std::to_string(p->tree.depth()) + " steps)";
    }
    if (const auto* d = std::get_if<DeclarationWitness>(&witness)) {
        return "declaration: " + d->detail;
    }
    return "gap: " + std::get<GapWitness>(witness).detail;
}

Status worse(Status a, Status b) {
    auto rank = [](Status s) {
        switch (s) {
            case Status::Violated: return 4;
            case Status::Unchecked: return 3;
            case Status::Satisfied: return 2;
            case Status::NotExercised: return 1;
            case Status::NotApplicable: return 0;
        }
        return 3;
    };
    return rank(a) >= rank(b) ? a : b;
}

std::vector<Verdict> aggregate(const std::vector<std::vector<Verdict>>& per_trace) {
    std::vector<Verdict> out;
    for (const auto& verdicts : per_trace) {
        for (const auto& verdict : verdicts) {
            auto it = std::find_if(out.begin(), out.end(), [&](const Verdict& v) {
                return v.fr_key == verdict.fr_key;
            });
            if (it == out.end()) {
                out.push_back(verdict);
                continue;
            }
            if (worse(verdict.status, it->status) != it->status) {
                *it = verdict;
            }
        }
    }
    return out;
}

namespace {

using specl::Event;
using specl::EventKind;

// The event kinds that count as processing a datum, and the actor doing the
// processing: a presentation is processed by its receiver, issue and verify
// by their initiating subject.
bool is_processing(EventKind kind) {
    return kind == EventKind::Present || kind == EventKind::Issue ||
           kind == EventKind::Verify;
}

std::string processor_of(const Event& event) {
    if (event.kind == EventKind::Present) {
        return event.counterparty.value_or("");
    }
    return event.subject;
}

std::string instance_of(const Event& event) {
    const std::string* id = event.attr("id");
    return id ? *id : "";
}

std::string object_label(const Event& event) {
    std::string label = event.object;
    std::string inst = instance_of(event);
    if (!inst.empty()) label += "[" + inst + "]";
    return label;
}

struct Context {
    const model::SystemModel& model;
    const inference::FactSet& saturated;
    const specl::Trace* trace;

    std::optional<model::DataClass> class_of(const std::string& object) const {
        const auto* res = model.find_resource(object);
        if (!res || res->sort != model::ResourceSort::Data) return std::nullopt;
        return res->data_class;
    }

    std::optional<model::ActorKind> kind_of(const std::string& id) const {
        const auto* actor = model.find_actor(id);
        if (!actor) return std::nullopt;
        return actor->kind;
    }

    bool service_needs_personal(const std::string& object) const {
        const auto* res = model.find_resource(object);
        if (!res || res->sort != model::ResourceSort::Service) return false;
        for (const auto& datum : res->requires_data) {
            if (class_of(datum) == model::DataClass::Personal) return true;
        }
        return false;
    }

    const std::vector<Event>& events() const { return trace->events; }
};

Verdict make(const std::string& key, Status status, std::vector<Witness> witnesses,
             std::string message) {
    return Verdict{key, status, std::move(witnesses), std::move(message)};
}

Verdict not_exercised(const std::string& key, const std::string& what) {
    return make(key, Status::NotExercised, {}, "trace contains no " + what);
}

// --- ability goals ---------------------------------------------------------

const model::ActorRef* first_data_owner(const model::SystemModel& model) {
    for (const auto& [id, actor] : model.actors) {
        if (actor.kind == model::ActorKind::DataOwner) return &actor;
    }
    return nullptr;
}

const model::ActorRef* wallet_of_owner(const model::SystemModel& model) {
    for (const auto& [id, actor] : model.actors) {
        if (actor.kind != model::ActorKind::Wallet || !actor.wallet_of) continue;
        const auto* owner = model.find_actor(*actor.wallet_of);
        if (owner && owner->kind == model::ActorKind::DataOwner) return &actor;
    }
    return nullptr;
}

// Ability: a data owner can present some datum of the wanted class. Returns
// the minimal proof when derivable.
std::optional<inference::ProofTree> derive_presents(const Context& ctx,
                                                    model::DataClass wanted) {
    const auto* owner = first_data_owner(ctx.model);
    if (!owner) return std::nullopt;
    inference::FactSet base{ctx.model.declared_facts};
    auto universe = inference::Universe::from_model(ctx.model);
    auto rules = inference::default_axioms();
    for (const auto& [id, res] : ctx.model.resources) {
        if (res.sort != model::ResourceSort::Data || res.data_class != wanted) continue;
        model::Fact goal{model::Relation::Presents, owner->id, id, std::nullopt};
        if (!ctx.saturated.contains(goal)) continue;
        if (auto proof = inference::derive(goal, base, rules, universe)) return proof;
    }
    return std::nullopt;
}

struct Ability {
    bool holds = false;
    Witness witness;
};

Ability ability_request_issuance(const Context& ctx) {
    for (const auto& fact : ctx.saturated) {
        if (fact.relation != model::Relation::Requests) continue;
        if (ctx.kind_of(fact.subject) != model::ActorKind::DataOwner) continue;
        if (!ctx.service_needs_personal(fact.object)) continue;
        return {true, DeclarationWitness{"requests " + fact.subject + " " + fact.object}};
    }
    return {false, GapWitness{"no data owner requests a service that takes personal data"}};
}

Ability ability_wallet_interface(const Context& ctx) {
    if (const auto* wallet = wallet_of_owner(ctx.model)) {
        return {true, DeclarationWitness{"wallet " + wallet->id + " declared for owner " +
                                         *wallet->wallet_of}};
    }
    return {false, GapWitness{"no wallet is paired with a data owner"}};
}

Ability ability_present(const Context& ctx, model::DataClass wanted) {
    if (auto proof = derive_presents(ctx, wanted)) {
        return {true, ProofWitness{*proof}};
    }
    std::string cls = wanted == model::DataClass::Credential ? "credential" : "personal";
    return {false, GapWitness{"no data owner can derive presents over " + cls + " data"}};
}

// --- trace obligations ------------------------------------------------------

Verdict check_fr18(const Context& ctx) {
    const std::string key = "FR18";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::ConsentGrant) continue;
        any = true;
        const std::string* text = event.attr("text");
        if (!text) {
            return make(key, Status::Violated,
                        {GapWitness{"consent event " + std::to_string(event.seq) +
                                    " carries no text"}},
                        "a consent request has no text to grade");
        }
        auto grade = readability::grade(*text);
        std::ostringstream detail;
        if (!grade) {
            detail << "consent text has no gradable words";
            return make(key, Status::Violated, {EventWitness{event.seq, detail.str()}},
                        "a consent request text cannot be graded");
        }
        detail.setf(std::ios::fixed);
        detail.precision(2);
        detail << "consent text grades " << *grade;
        if (!readability::passes_grade8(*grade)) {
            return make(key, Status::Violated, {EventWitness{event.seq, detail.str()}},
                        "a consent request text exceeds grade 8.0");
        }
        witnesses.push_back(EventWitness{event.seq, detail.str()});
    }
    if (!any) return not_exercised(key, "consent requests");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every consent request reads at or below grade 8.0");
}

Verdict check_fr32(const Context& ctx) {
    const std::string key = "FR32";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::Present) continue;
        any = true;
        const Event* inform = nullptr;
        for (const auto& prior : ctx.events()) {
            if (prior.seq >= event.seq) break;
            if (prior.kind != EventKind::Inform) continue;
            if (!event.counterparty || prior.subject != *event.counterparty) continue;
            if (!prior.counterparty || *prior.counterparty != event.subject) continue;
            if (prior.object != event.object) continue;
            if (!prior.attr("purpose")) continue;
            inform = &prior;
            break;
        }
        if (!inform) {
            return make(key, Status::Violated,
                        {GapWitness{"presentation at event " + std::to_string(event.seq) +
                                    " of " + event.object + " has no prior inform from " +
                                    event.counterparty.value_or("?")}},
                        "data was collected without informing its owner");
        }
        witnesses.push_back(EventWitness{
            inform->seq, "informs " + event.subject + " about " + event.object +
                             " (purpose: " + *inform->attr("purpose") + ")"});
    }
    if (!any) return not_exercised(key, "presentations");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every collection was preceded by an inform with a purpose");
}

Verdict check_fr33(const Context& ctx, const std::string& key, model::DataClass cls) {
    std::vector<Witness> witnesses;
    std::set<std::tuple<std::string, std::string, std::string>> seen;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (!is_processing(event.kind)) continue;
        if (ctx.class_of(event.object) != cls) continue;
        std::string processor = processor_of(event);
        auto group = std::make_tuple(event.object, instance_of(event), processor);
        if (!seen.insert(group).second) continue;  // only the first processing counts
        any = true;
        const Event* grant = nullptr;
        for (const auto& prior : ctx.events()) {
            if (prior.seq >= event.seq) break;
            if (prior.kind != EventKind::ConsentGrant) continue;
            if (prior.object != event.object) continue;
            if (instance_of(prior) != instance_of(event)) continue;
            if (!prior.counterparty || *prior.counterparty != processor) continue;
            grant = &prior;
            break;
        }
        if (!grant) {
            return make(key, Status::Violated,
                        {GapWitness{"processing of " + object_label(event) + " by " +
                                    processor + " at event " + std::to_string(event.seq) +
                                    " has no prior consent"}},
                        "data was processed without a prior consent grant");
        }
        witnesses.push_back(EventWitness{grant->seq, "consent to process " +
                                                         object_label(event) + " granted to " +
                                                         processor});
    }
    if (!any) {
        std::string cls_name = cls == model::DataClass::Credential ? "credential" : "personal";
        return not_exercised(key, cls_name + " data processing");
    }
    return make(key, Status::Satisfied, std::move(witnesses),
                "every processed datum had consent granted first");
}

Verdict check_fr44_trace(const Context& ctx) {
    const std::string key = "FR44";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::Request) continue;
        if (ctx.kind_of(event.subject) != model::ActorKind::DataOwner) continue;
        if (!ctx.service_needs_personal(event.object)) continue;
        any = true;
        auto target = event.counterparty ? ctx.kind_of(*event.counterparty) : std::nullopt;
        if (target != model::ActorKind::Issuer) {
            return make(key, Status::Violated,
                        {EventWitness{event.seq,
                                      "issuance request addressed to " +
                                          event.counterparty.value_or("nobody") +
                                          ", which is not an issuer"}},
                        "an issuance request was not addressed to an issuer");
        }
        witnesses.push_back(EventWitness{event.seq, "requests " + event.object + " from " +
                                                        *event.counterparty});
    }
    if (!any) return not_exercised(key, "issuance requests");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every issuance request was addressed to an issuer");
}

Verdict check_fr46_trace(const Context& ctx) {
    const std::string key = "FR46";
    const Event* first = nullptr;
    for (const auto& event : ctx.events()) {
        if (is_processing(event.kind)) {
            first = &event;
            break;
        }
    }
    if (!first) return not_exercised(key, "data processing");
    for (const auto& prior : ctx.events()) {
        if (prior.seq >= first->seq) break;
        if (prior.kind != EventKind::ConsentGrant) continue;
        return make(key, Status::Satisfied,
                    {EventWitness{prior.seq, "consent granted before processing begins"}},
                    "consent was given before any processing");
    }
    return make(key, Status::Violated,
                {GapWitness{"first processing at event " + std::to_string(first->seq) +
                            " happens before any consent grant"}},
                "processing began before any consent was given");
}

Verdict check_fr47_trace(const Context& ctx) {
    const std::string key = "FR47";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::ConsentWithdraw) continue;
        any = true;
        for (const auto& later : ctx.events()) {
            if (later.seq <= event.seq) continue;
            if (!is_processing(later.kind)) continue;
            if (later.object != event.object) continue;
            if (instance_of(later) != instance_of(event)) continue;
            if (!event.counterparty || processor_of(later) != *event.counterparty) continue;
            return make(key, Status::Violated,
                        {EventWitness{later.seq, processor_of(later) + " processed " +
                                                     object_label(later) +
                                                     " after consent was withdrawn at event " +
                                                     std::to_string(event.seq)}},
                        "data was processed after its consent was withdrawn");
        }
        witnesses.push_back(EventWitness{
            event.seq, "withdrawal of consent for " + object_label(event) + " respected"});
    }
    if (!any) return not_exercised(key, "consent withdrawals");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every consent withdrawal was respected");
}

Verdict check_fr52_trace(const Context& ctx) {
    const std::string key = "FR52";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::Present) continue;
        if (ctx.class_of(event.object) != model::DataClass::Personal) continue;
        if (!event.counterparty ||
            ctx.kind_of(*event.counterparty) != model::ActorKind::Issuer) {
            continue;
        }
        any = true;
        const Event* request = nullptr;
        for (const auto& prior : ctx.events()) {
            if (prior.seq >= event.seq) break;
            if (prior.kind != EventKind::Request) continue;
            if (prior.subject != *event.counterparty) continue;
            if (!prior.counterparty || *prior.counterparty != event.subject) continue;
            if (prior.object != event.object) continue;
            request = &prior;
            break;
        }
        if (!request) {
            return make(key, Status::Violated,
                        {GapWitness{"presentation at event " + std::to_string(event.seq) +
                                    " answers no request from " + *event.counterparty}},
                        "personal data was sent to an issuer that never asked for it");
        }
        if (!event.attr("attributes")) {
            return make(key, Status::Violated,
                        {EventWitness{event.seq, "presentation names no attributes"}},
                        "a presentation to an issuer does not name the shared attributes");
        }
        witnesses.push_back(EventWitness{event.seq, "shares attributes " +
                                                        *event.attr("attributes") +
                                                        " answering the request at event " +
                                                        std::to_string(request->seq)});
    }
    if (!any) return not_exercised(key, "personal data presentations to an issuer");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every share with an issuer was requested and attribute-scoped");
}

Verdict check_fr53_trace(const Context& ctx) {
    const std::string key = "FR53";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::Present) continue;
        if (ctx.class_of(event.object) != model::DataClass::Credential) continue;
        if (!event.counterparty ||
            ctx.kind_of(*event.counterparty) != model::ActorKind::Verifier) {
            continue;
        }
        any = true;
        const std::string& verifier = *event.counterparty;
        const Event* asked = nullptr;    // verifier asked for this credential
        const Event* trigger = nullptr;  // owner approached the verifier first
        for (const auto& prior : ctx.events()) {
            if (prior.seq >= event.seq) break;
            if (prior.kind != EventKind::Request) continue;
            if (!asked && prior.subject == verifier && prior.counterparty &&
                *prior.counterparty == event.subject && prior.object == event.object) {
                asked = &prior;
            }
            if (!trigger && prior.subject == event.subject && prior.counterparty &&
                *prior.counterparty == verifier) {
                trigger = &prior;
            }
        }
        if (!trigger) {
            return make(key, Status::Violated,
                        {GapWitness{"presentation at event " + std::to_string(event.seq) +
                                    " was not triggered by " + event.subject +
                                    " approaching " + verifier}},
                        "a verification ran without the data owner initiating it");
        }
        if (!asked) {
            return make(key, Status::Violated,
                        {GapWitness{"presentation at event " + std::to_string(event.seq) +
                                    " answers no credential request from " + verifier}},
                        "a credential was presented that the verifier never requested");
        }
        if (!event.attr("metadata")) {
            return make(key, Status::Violated,
                        {EventWitness{event.seq, "presentation carries no metadata"}},
                        "a presented credential carries no metadata to verify against");
        }
        witnesses.push_back(EventWitness{event.seq, "presents " + object_label(event) +
                                                        " with metadata " +
                                                        *event.attr("metadata")});
    }
    if (!any) return not_exercised(key, "credential presentations to a verifier");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every verification was owner-triggered, requested and metadata-backed");
}

Verdict check_fr54_trace(const Context& ctx) {
    const std::string key = "FR54";
    std::vector<Witness> witnesses;
    bool any = false;
    for (const auto& event : ctx.events()) {
        if (event.kind != EventKind::ProofPresent) continue;
        any = true;
        const Event* generated = nullptr;
        for (const auto& prior : ctx.events()) {
            if (prior.seq >= event.seq) break;
            if (prior.kind != EventKind::ProofGenerate) continue;
            if (prior.subject != event.subject) continue;
            if (prior.object != event.object) continue;
            if (instance_of(prior) != instance_of(event)) continue;
            generated = &prior;
            break;
        }
        if (!generated) {
            return make(key, Status::Violated,
                        {GapWitness{"proof presented at event " + std::to_string(event.seq) +
                                    " was never generated"}},
                        "a proof was presented without a prior generation step");
        }
        witnesses.push_back(EventWitness{generated->seq, "proof over " + object_label(event) +
                                                             " generated before presentation"});
    }
    if (!any) return not_exercised(key, "proof presentations");
    return make(key, Status::Satisfied, std::move(witnesses),
                "every presented proof was generated first");
}

// --- combination -------------------------------------------------------------

Verdict combine(const std::string& key, const Ability& ability, const Context& ctx,
                Verdict (*obligation)(const Context&)) {
    if (!ability.holds) {
        return make(key, Status::Violated, {ability.witness},
                    "the model does not grant the required ability");
    }
    if (!ctx.trace) {
        return make(key, Status::Satisfied, {ability.witness},
                    "the model grants the ability; no trace to exercise it");
    }
    Verdict verdict = obligation(ctx);
    verdict.witnesses.insert(verdict.witnesses.begin(), ability.witness);
    return verdict;
}

}  // namespace

Verdict check_fr(const catalog::FrEntry& fr, const model::SystemModel& model,
                 const inference::FactSet& saturated, const specl::Trace* trace) {
    Context ctx{model, saturated, trace};
    const std::string& key = fr.key;

    bool known = key == "FR18" || key == "FR32" || key == "FR33a" || key == "FR33b" ||
                 key == "FR44" || key == "FR46" || key == "FR47" || key == "FR52" ||
                 key == "FR53" || key == "FR54";
    if (!known) {
        return make(key, Status::Unchecked, {},
                    "no compiled semantics for " + key + "; statement not evaluated");
    }
    if (!first_data_owner(model)) {
        return make(key, Status::NotApplicable, {},
                    "the model declares no data owner, so consent duties do not arise");
    }

    // Pure trace obligations: nothing to decide without a trace.
    if (key == "FR18" || key == "FR32" || key == "FR33a" || key == "FR33b") {
        if (!trace) {
            return make(key, Status::NotExercised, {}, "no trace supplied");
        }
        if (key == "FR18") return check_fr18(ctx);
        if (key == "FR32") return check_fr32(ctx);
        if (key == "FR33a") return check_fr33(ctx, key, model::DataClass::Credential);
        return check_fr33(ctx, key, model::DataClass::Personal);
    }

    // Ability statements: model check first, then the trace obligation.
    if (key == "FR44") {
        return combine(key, ability_request_issuance(ctx), ctx, check_fr44_trace);
    }
    if (key == "FR46") {
        return combine(key, ability_wallet_interface(ctx), ctx, check_fr46_trace);
    }
    if (key == "FR47") {
        return combine(key, ability_wallet_interface(ctx), ctx, check_fr47_trace);
    }
    if (key == "FR52") {
        return combine(key, ability_present(ctx, model::DataClass::Personal), ctx,
                       check_fr52_trace);
    }
    if (key == "FR53") {
        return combine(key, ability_present(ctx, model::DataClass::Credential), ctx,
                       check_fr53_trace);
    }
    return combine(key, ability_present(ctx, model::DataClass::Credential), ctx,
                   check_fr54_trace);
}

std::vector<Verdict> check_consent_suite(const model::SystemModel& model,
                                         const inference::FactSet& saturated,
                                         const specl::Trace* trace) {
    std::vector<Verdict> verdicts;
    auto reqs = catalog::builtin_requirements();
    for (const auto& fr : reqs.frs) {
        verdicts.push_back(check_fr(fr, model, saturated, trace));
    }
    return verdicts;
}

}  // namespace dicheck::conformance
