#include <algorithm>
#include <sstream>

#include "dicheck/simulator.hpp"

namespace dicheck::simulator {

namespace {

using model::ActorKind;
using specl::Event;
using specl::EventKind;

constexpr const char* kConsentText = "I agree that my name may be stored.";

Step step(EventKind kind, ActorKind who, std::optional<ActorKind> counterparty,
          std::string object, std::map<std::string, std::string> attrs = {}) {
    return Step{kind, who, counterparty, std::move(object), std::move(attrs)};
}

Scenario issuance_scenario() {
    Scenario s;
    s.id = "issuance";
    s.parameters = {{"consent-text", kConsentText}, {"purpose", "credential issuance"}};
    s.steps = {
        step(EventKind::Inform, ActorKind::Issuer, ActorKind::DataOwner, "personal_data",
             {{"purpose", "{purpose}"}}),
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Issuer,
             "personal_data", {{"text", "{consent-text}"}}),
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Issuer, "credential",
             {{"text", "{consent-text}"}}),
        step(EventKind::Request, ActorKind::DataOwner, ActorKind::Issuer, "issuance"),
        step(EventKind::Request, ActorKind::Issuer, ActorKind::DataOwner, "personal_data"),
        step(EventKind::Present, ActorKind::DataOwner, ActorKind::Issuer, "personal_data",
             {{"attributes", "name"}}),
        step(EventKind::Issue, ActorKind::Issuer, ActorKind::DataOwner, "credential"),
        step(EventKind::Store, ActorKind::DataOwner, std::nullopt, "credential"),
        step(EventKind::ConsentWithdraw, ActorKind::DataOwner, ActorKind::Issuer,
             "personal_data"),
    };
    return s;
}

Scenario presentation_scenario() {
    Scenario s;
    s.id = "presentation";
    s.parameters = {{"consent-text", kConsentText},
                    {"purpose", "age verification"},
                    {"id-a", "cred{seed}a"},
                    {"id-b", "cred{seed}b"}};
    s.steps = {
        step(EventKind::Request, ActorKind::DataOwner, ActorKind::Verifier, "verification"),
        step(EventKind::Request, ActorKind::Verifier, ActorKind::DataOwner, "credential"),
        step(EventKind::Inform, ActorKind::Verifier, ActorKind::DataOwner, "credential",
             {{"purpose", "{purpose}"}}),
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-a}"}, {"text", "{consent-text}"}}),
        step(EventKind::Present, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-a}"}, {"metadata", "issuer,signature,schema"}}),
        step(EventKind::Verify, ActorKind::Verifier, ActorKind::DataOwner, "credential",
             {{"id", "{id-a}"}}),
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-b}"}, {"text", "{consent-text}"}}),
        step(EventKind::Present, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-b}"}, {"metadata", "issuer,signature,schema"}}),
        step(EventKind::Verify, ActorKind::Verifier, ActorKind::DataOwner, "credential",
             {{"id", "{id-b}"}}),
    };
    return s;
}

Scenario proof_presentation_scenario() {
    Scenario s;
    s.id = "proof-presentation";
    s.parameters = {{"consent-text", kConsentText}, {"id-a", "cred{seed}a"}};
    s.steps = {
        step(EventKind::Request, ActorKind::DataOwner, ActorKind::Verifier, "verification"),
        step(EventKind::Request, ActorKind::Verifier, ActorKind::DataOwner, "credential"),
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-a}"}, {"text", "{consent-text}"}}),
        step(EventKind::ProofGenerate, ActorKind::DataOwner, std::nullopt, "credential",
             {{"id", "{id-a}"}}),
        step(EventKind::ProofPresent, ActorKind::DataOwner, ActorKind::Verifier, "credential",
             {{"id", "{id-a}"}, {"metadata", "proof,schema"}}),
        step(EventKind::Verify, ActorKind::Verifier, ActorKind::DataOwner, "credential",
             {{"id", "{id-a}"}}),
    };
    return s;
}

Scenario revocation_scenario() {
    Scenario s;
    s.id = "revocation";
    s.parameters = {{"consent-text", kConsentText}};
    s.steps = {
        step(EventKind::ConsentGrant, ActorKind::DataOwner, ActorKind::Issuer, "credential",
             {{"text", "{consent-text}"}}),
        step(EventKind::Issue, ActorKind::Issuer, ActorKind::DataOwner, "credential"),
        step(EventKind::Revoke, ActorKind::Issuer, std::nullopt, "credential"),
    };
    return s;
}

Scenario export_import_scenario() {
    Scenario s;
    s.id = "export-import";
    s.steps = {
        step(EventKind::Export, ActorKind::DataOwner, std::nullopt, "credential"),
        step(EventKind::Import, ActorKind::DataOwner, std::nullopt, "credential"),
    };
    return s;
}

Scenario retrieval_scenario() {
    Scenario s;
    s.id = "retrieval";
    s.steps = {
        step(EventKind::Store, ActorKind::DataOwner, std::nullopt, "credential"),
        step(EventKind::Retrieve, ActorKind::DataOwner, std::nullopt, "credential"),
    };
    return s;
}

Scenario recovery_scenario() {
    Scenario s;
    s.id = "recovery";
    s.steps = {
        step(EventKind::Store, ActorKind::Wallet, std::nullopt, "credential"),
        step(EventKind::Export, ActorKind::Wallet, std::nullopt, "credential"),
        step(EventKind::Import, ActorKind::Wallet, std::nullopt, "credential"),
    };
    return s;
}

std::string expand_seed(const std::string& value, unsigned seed) {
    std::string out = value;
    const std::string token = "{seed}";
    size_t at = 0;
    while ((at = out.find(token, at)) != std::string::npos) {
        std::string number = std::to_string(seed);
        out.replace(at, token.size(), number);
        at += number.size();
    }
    return out;
}

}  // namespace

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::SkipConsent: return "skip-consent";
        case ViolationKind::ProcessAfterWithdraw: return "process-after-withdraw";
        case ViolationKind::SkipInform: return "skip-inform";
        case ViolationKind::ReuseConsentAcrossCredentials:
            return "reuse-consent-across-credentials";
        case ViolationKind::VerifierInitiatedPresentation:
            return "verifier-initiated-presentation";
        case ViolationKind::DropMetadata: return "drop-metadata";
        case ViolationKind::SkipProofGenerate: return "skip-proof-generate";
    }
    return "skip-consent";
}

std::optional<ViolationKind> violation_kind_from(const std::string& token) {
    for (ViolationKind kind : all_violation_kinds()) {
        if (to_string(kind) == token) return kind;
    }
    return std::nullopt;
}

std::vector<ViolationKind> all_violation_kinds() {
    return {ViolationKind::SkipConsent,
            ViolationKind::ProcessAfterWithdraw,
            ViolationKind::SkipInform,
            ViolationKind::ReuseConsentAcrossCredentials,
            ViolationKind::VerifierInitiatedPresentation,
            ViolationKind::DropMetadata,
            ViolationKind::SkipProofGenerate};
}

std::vector<Scenario> builtin_scenarios() {
    return {issuance_scenario(),     presentation_scenario(), proof_presentation_scenario(),
            revocation_scenario(),   export_import_scenario(), retrieval_scenario(),
            recovery_scenario()};
}

const Scenario* find_scenario(const std::string& id) {
    static const std::vector<Scenario> scenarios = builtin_scenarios();
    for (const auto& scenario : scenarios) {
        if (scenario.id == id) return &scenario;
    }
    return nullptr;
}

RunResult run_scenario(const model::SystemModel& model, const Scenario& scenario,
                       unsigned seed) {
    RunResult result;
    const SourceSpan nowhere{0, 0, 0};

    std::map<std::string, std::string> params;
    for (const auto& [key, value] : scenario.parameters) {
        params[key] = expand_seed(value, seed);
    }

    std::map<ActorKind, std::string> cast;
    auto resolve = [&](ActorKind kind) -> const std::string* {
        auto it = cast.find(kind);
        if (it != cast.end()) return &it->second;
        for (const auto& [id, actor] : model.actors) {
            if (actor.kind == kind) {
                return &cast.emplace(kind, id).first->second;
            }
        }
        return nullptr;
    };

    auto expand = [&](const std::string& value, size_t step_index) -> std::string {
        std::string out;
        size_t at = 0;
        while (at < value.size()) {
            size_t open = value.find('{', at);
            if (open == std::string::npos) {
                out.append(value, at, std::string::npos);
                break;
            }
            size_t close = value.find('}', open);
            if (close == std::string::npos) {
                out.append(value, at, std::string::npos);
                break;
            }
            out.append(value, at, open - at);
            std::string name = value.substr(open + 1, close - open - 1);
            auto found = params.find(name);
            if (found == params.end()) {
                std::ostringstream msg;
                msg << "scenario " << scenario.id << " step " << (step_index + 1)
                    << " references unknown parameter \"" << name << "\"";
                result.diagnostics.push_back(error_at(msg.str(), nowhere));
            } else {
                out += found->second;
            }
            at = close + 1;
        }
        return out;
    };

    specl::Trace trace;
    trace.declared_model = model.id;
    long seq = 1;
    for (size_t i = 0; i < scenario.steps.size(); ++i) {
        const Step& s = scenario.steps[i];
        const std::string* subject = resolve(s.who);
        if (!subject) {
            std::ostringstream msg;
            msg << "scenario " << scenario.id << " step " << (i + 1) << " needs a "
                << model::to_string(s.who) << " actor, but the model declares none";
            result.diagnostics.push_back(error_at(msg.str(), nowhere));
            continue;
        }
        std::optional<std::string> counterparty;
        if (s.counterparty) {
            const std::string* other = resolve(*s.counterparty);
            if (!other) {
                std::ostringstream msg;
                msg << "scenario " << scenario.id << " step " << (i + 1) << " needs a "
                    << model::to_string(*s.counterparty)
                    << " actor, but the model declares none";
                result.diagnostics.push_back(error_at(msg.str(), nowhere));
                continue;
            }
            counterparty = *other;
        }
        if (!model.find_resource(s.object)) {
            std::ostringstream msg;
            msg << "scenario " << scenario.id << " step " << (i + 1)
                << " references resource " << s.object
                << ", but the model declares none";
            result.diagnostics.push_back(error_at(msg.str(), nowhere));
            continue;
        }
        Event event;
        event.seq = seq++;
        event.kind = s.kind;
        event.subject = *subject;
        event.counterparty = counterparty;
        event.object = s.object;
        for (const auto& [key, value] : s.attrs) {
            event.attrs[key] = expand(value, i);
        }
        trace.events.push_back(std::move(event));
    }

    if (has_errors(result.diagnostics)) return result;
    result.trace = std::move(trace);
    return result;
}

namespace {

void renumber(std::vector<Event>& events) {
    long seq = 1;
    for (auto& event : events) event.seq = seq++;
}

bool is_processing_kind(EventKind kind) {
    return kind == EventKind::Present || kind == EventKind::Issue ||
           kind == EventKind::Verify;
}

}  // namespace

InjectResult inject_violation(const specl::Trace& trace, ViolationKind kind) {
    InjectResult result;
    const SourceSpan nowhere{0, 0, 0};
    auto fail = [&](const std::string& message) {
        result.diagnostics.push_back(error_at(message, nowhere));
    };
    std::vector<Event> events = trace.events;

    auto erase_first = [&](auto predicate, const std::string& what) {
        auto it = std::find_if(events.begin(), events.end(), predicate);
        if (it == events.end()) {
            fail("cannot inject " + to_string(kind) + ": trace has no " + what);
            return false;
        }
        events.erase(it);
        return true;
    };

    switch (kind) {
        case ViolationKind::SkipConsent: {
            if (!erase_first([](const Event& e) { return e.kind == EventKind::ConsentGrant; },
                             "consent grant")) {
                return result;
            }
            break;
        }
        case ViolationKind::ProcessAfterWithdraw: {
            auto withdraw = std::find_if(events.begin(), events.end(), [](const Event& e) {
                return e.kind == EventKind::ConsentWithdraw;
            });
            if (withdraw == events.end()) {
                fail("cannot inject process-after-withdraw: trace has no consent withdrawal");
                return result;
            }
            auto processing = std::find_if(events.begin(), events.end(), [](const Event& e) {
                return is_processing_kind(e.kind);
            });
            if (processing == events.end()) {
                fail("cannot inject process-after-withdraw: trace processes no data");
                return result;
            }
            Event moved = *withdraw;
            events.erase(withdraw);
            processing = std::find_if(events.begin(), events.end(), [](const Event& e) {
                return is_processing_kind(e.kind);
            });
            events.insert(processing, std::move(moved));
            break;
        }
        case ViolationKind::SkipInform: {
            if (!erase_first([](const Event& e) { return e.kind == EventKind::Inform; },
                             "inform event")) {
                return result;
            }
            break;
        }
        case ViolationKind::ReuseConsentAcrossCredentials: {
            int grants_with_id = 0;
            auto it = events.end();
            for (auto cursor = events.begin(); cursor != events.end(); ++cursor) {
                if (cursor->kind != EventKind::ConsentGrant || !cursor->attr("id")) continue;
                if (++grants_with_id == 2) {
                    it = cursor;
                    break;
                }
            }
            if (it == events.end()) {
                fail("cannot inject reuse-consent-across-credentials: trace has no second "
                     "instance-scoped consent grant");
                return result;
            }
            events.erase(it);
            break;
        }
        case ViolationKind::VerifierInitiatedPresentation: {
            auto present = std::find_if(events.begin(), events.end(), [](const Event& e) {
                return e.kind == EventKind::Present || e.kind == EventKind::ProofPresent;
            });
            if (present == events.end()) {
                fail("cannot inject verifier-initiated-presentation: trace presents nothing");
                return result;
            }
            std::string presenter = present->subject;
            if (!erase_first(
                    [&](const Event& e) {
                        return e.kind == EventKind::Request && e.subject == presenter;
                    },
                    "request issued by the presenter")) {
                return result;
            }
            break;
        }
        case ViolationKind::DropMetadata: {
            auto it = std::find_if(events.begin(), events.end(), [](const Event& e) {
                return (e.kind == EventKind::Present || e.kind == EventKind::ProofPresent) &&
                       e.attr("metadata");
            });
            if (it == events.end()) {
                fail("cannot inject drop-metadata: no presentation carries metadata");
                return result;
            }
            it->attrs.erase("metadata");
            break;
        }
        case ViolationKind::SkipProofGenerate: {
            if (!erase_first(
                    [](const Event& e) { return e.kind == EventKind::ProofGenerate; },
                    "proof generation")) {
                return result;
            }
            break;
        }
    }

    renumber(events);
    specl::Trace out;
    out.declared_model = trace.declared_model;
    out.events = std::move(events);
    result.trace = std::move(out);
    return result;
}

}  // namespace dicheck::simulator
