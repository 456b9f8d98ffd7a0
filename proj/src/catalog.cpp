#include "dicheck/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "dicheck/specl.hpp"

namespace dicheck::catalog {

std::string to_string(NfrKind kind) {
    return kind == NfrKind::Capability ? "capability" : "constraint";
}

std::string to_string(ActorClass actor) {
    switch (actor) {
        case ActorClass::DataOwner: return "data-owner";
        case ActorClass::Verifier: return "verifier";
        case ActorClass::Issuer: return "issuer";
        case ActorClass::System: return "system";
        case ActorClass::Wallet: return "wallet";
    }
    return "?";
}

std::optional<ActorClass> actor_class_from(const std::string& token) {
    if (token == "data-owner") return ActorClass::DataOwner;
    if (token == "verifier") return ActorClass::Verifier;
    if (token == "issuer") return ActorClass::Issuer;
    if (token == "system") return ActorClass::System;
    if (token == "wallet") return ActorClass::Wallet;
    return std::nullopt;
}

std::string to_string(Template t) {
    switch (t) {
        case Template::T1: return "T1";
        case Template::T2: return "T2";
        case Template::T3: return "T3";
    }
    return "?";
}

std::optional<Template> template_from(const std::string& token) {
    if (token == "T1") return Template::T1;
    if (token == "T2") return Template::T2;
    if (token == "T3") return Template::T3;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Requirement-key ordering: compare mixed alpha/numeric segments so FR6.9
// precedes FR18 and FR33a precedes FR33b.

bool KeyLess::operator()(const std::string& a, const std::string& b) const {
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            size_t ia = i, jb = j;
            while (ia < a.size() && std::isdigit(static_cast<unsigned char>(a[ia]))) ++ia;
            while (jb < b.size() && std::isdigit(static_cast<unsigned char>(b[jb]))) ++jb;
            long na = std::stol(a.substr(i, ia - i));
            long nb = std::stol(b.substr(j, jb - j));
            if (na != nb) return na < nb;
            i = ia;
            j = jb;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    return a.size() - i < b.size() - j;
}

// ---------------------------------------------------------------------------

const NfrEntry* Catalog::find_nfr(const std::string& key) const {
    auto it = nfrs.find(key);
    return it == nfrs.end() ? nullptr : &it->second;
}

const CapabilityEntry* Catalog::find_capability(int number) const {
    auto it = capabilities.find(number);
    return it == capabilities.end() ? nullptr : &it->second;
}

const FrEntry* Catalog::find_fr(const std::string& key) const {
    auto it = frs.find(key);
    return it == frs.end() ? nullptr : &it->second;
}

const ConditionEntry* Catalog::find_condition(const std::string& key) const {
    auto it = conditions.find(key);
    return it == conditions.end() ? nullptr : &it->second;
}

std::set<std::string> Catalog::constraint_keys() const {
    std::set<std::string> keys;
    for (const auto& [key, nfr] : nfrs) {
        if (nfr.kind == NfrKind::Constraint) keys.insert(key);
    }
    return keys;
}

std::vector<const ConditionEntry*> Catalog::conditions_of(const std::string& fr_key) const {
    std::vector<const ConditionEntry*> out;
    for (const auto& [key, cond] : conditions) {
        if (cond.fr_key == fr_key) out.push_back(&cond);
    }
    return out;
}

std::vector<const ConditionEntry*> Catalog::effective_conditions(
    const std::string& fr_key) const {
    std::vector<const ConditionEntry*> out = conditions_of(fr_key);
    const FrEntry* fr = find_fr(fr_key);
    if (fr && fr->trace_of) {
        for (const auto* cond : conditions_of(*fr->trace_of)) out.push_back(cond);
    }
    return out;
}

const FrEntry* RequirementSet::find(const std::string& key) const {
    for (const auto& fr : frs) {
        if (fr.key == key) return &fr;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// Document parsing

namespace {

struct ParsedDoc {
    Catalog catalog;  // carries everything, including doc-local nfr/cap records
    std::vector<std::string> fr_order;
};

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string part = (comma == std::string::npos)
                               ? text.substr(start)
                               : text.substr(start, comma - start);
        if (!part.empty()) parts.push_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

// Parses records into a ParsedDoc without resolving links.
ParsedDoc parse_records(const std::string& text, Diagnostics& diags) {
    ParsedDoc doc;
    auto lines = specl::tokenize(text, diags);
    size_t start = specl::expect_version_header(lines, diags);
    if (has_errors(diags)) return doc;

    for (size_t li = start; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const auto& head = line.tokens[0];
        const std::string& kw = head.text;

        if (kw == "nfr") {
            // nfr <key> <kind> "<name>" "<description>"
            if (line.tokens.size() != 5 || !line.tokens[3].quoted ||
                !line.tokens[4].quoted) {
                diags.push_back(error_at(
                    "`nfr` expects <key> <kind> \"<name>\" \"<description>\"",
                    head.span));
                continue;
            }
            NfrEntry entry;
            entry.key = line.tokens[1].text;
            const std::string& kind = line.tokens[2].text;
            if (kind == "capability") {
                entry.kind = NfrKind::Capability;
            } else if (kind == "constraint") {
                entry.kind = NfrKind::Constraint;
            } else {
                diags.push_back(error_at("unknown nfr kind `" + kind + "`",
                                         line.tokens[2].span));
                continue;
            }
            entry.name = line.tokens[3].text;
            entry.description = line.tokens[4].text;
            if (!doc.catalog.nfrs.emplace(entry.key, entry).second) {
                diags.push_back(
                    error_at("duplicate key `" + entry.key + "`", line.tokens[1].span));
            }
        } else if (kw == "cap") {
            // cap <number> <actor> "<text>"
            if (line.tokens.size() != 4 || !line.tokens[3].quoted) {
                diags.push_back(
                    error_at("`cap` expects <number> <actor> \"<text>\"", head.span));
                continue;
            }
            CapabilityEntry entry;
            char* endp = nullptr;
            entry.number = static_cast<int>(
                std::strtol(line.tokens[1].text.c_str(), &endp, 10));
            if (endp == line.tokens[1].text.c_str() || *endp != '\0' ||
                entry.number <= 0) {
                diags.push_back(error_at("bad capability number `" +
                                             line.tokens[1].text + "`",
                                         line.tokens[1].span));
                continue;
            }
            auto actor = actor_class_from(line.tokens[2].text);
            if (!actor) {
                diags.push_back(error_at(
                    "unknown actor `" + line.tokens[2].text + "`", line.tokens[2].span));
                continue;
            }
            entry.actor = *actor;
            entry.text = line.tokens[3].text;
            // known Table 3 typo, kept verbatim with a normalized alias
            static const std::string typo_text = "credential pr personal data";
            size_t typo = entry.text.find(typo_text);
            if (typo != std::string::npos) {
                std::string fixed = entry.text;
                fixed.replace(typo, typo_text.size(), "credential or personal data");
                entry.normalized_text = fixed;
            }
            if (!doc.catalog.capabilities.emplace(entry.number, entry).second) {
                diags.push_back(error_at("duplicate capability number",
                                         line.tokens[1].span));
            }
        } else if (kw == "fr") {
            // fr <key> <template> [trace=<key>] [criteria=<a>[,..]] nfr=<key>[,..] "<statement>"
            if (line.tokens.size() < 4 || !line.tokens.back().quoted) {
                diags.push_back(error_at(
                    "`fr` expects <key> <template> [options] \"<statement>\"",
                    head.span));
                continue;
            }
            FrEntry entry;
            entry.key = line.tokens[1].text;
            auto tmpl = template_from(line.tokens[2].text);
            if (!tmpl) {
                diags.push_back(error_at("unknown template `" + line.tokens[2].text +
                                             "`",
                                         line.tokens[2].span));
                continue;
            }
            entry.template_type = *tmpl;
            bool bad = false;
            for (size_t ti = 3; ti + 1 < line.tokens.size(); ++ti) {
                const auto& tok = line.tokens[ti];
                size_t eq = tok.text.find('=');
                if (tok.quoted || eq == std::string::npos) {
                    diags.push_back(
                        error_at("unexpected token `" + tok.text + "` in fr record",
                                 tok.span));
                    bad = true;
                    break;
                }
                std::string key = tok.text.substr(0, eq);
                std::string value = tok.text.substr(eq + 1);
                if (key == "trace") {
                    entry.trace_of = value;
                } else if (key == "nfr") {
                    entry.nfr_links = split_commas(value);
                } else if (key == "criteria") {
                    entry.criteria = split_commas(value);
                } else {
                    diags.push_back(
                        error_at("unknown fr option `" + key + "`", tok.span));
                    bad = true;
                    break;
                }
            }
            if (bad) continue;
            if (entry.nfr_links.empty()) {
                diags.push_back(
                    error_at("fr `" + entry.key + "` missing nfr= link", head.span));
                continue;
            }
            entry.statement = line.tokens.back().text;
            if (doc.catalog.frs.count(entry.key)) {
                diags.push_back(
                    error_at("duplicate key `" + entry.key + "`", line.tokens[1].span));
                continue;
            }
            doc.catalog.frs.emplace(entry.key, entry);
            doc.fr_order.push_back(entry.key);
        } else if (kw == "cond") {
            // cond <key> fr=<key> "<text>"
            if (line.tokens.size() != 4 || !line.tokens[3].quoted) {
                diags.push_back(
                    error_at("`cond` expects <key> fr=<key> \"<text>\"", head.span));
                continue;
            }
            ConditionEntry entry;
            entry.key = line.tokens[1].text;
            const std::string& opt = line.tokens[2].text;
            if (opt.rfind("fr=", 0) != 0) {
                diags.push_back(error_at("expected fr=<key>", line.tokens[2].span));
                continue;
            }
            entry.fr_key = opt.substr(3);
            entry.text = line.tokens[3].text;
            if (!doc.catalog.conditions.emplace(entry.key, entry).second) {
                diags.push_back(
                    error_at("duplicate key `" + entry.key + "`", line.tokens[1].span));
            }
        } else if (kw == "legal") {
            // legal <fr-key> "<citation>"
            if (line.tokens.size() != 3 || !line.tokens[2].quoted) {
                diags.push_back(
                    error_at("`legal` expects <fr-key> \"<citation>\"", head.span));
                continue;
            }
            auto it = doc.catalog.frs.find(line.tokens[1].text);
            if (it == doc.catalog.frs.end()) {
                diags.push_back(error_at("legal tag references unknown FR `" +
                                             line.tokens[1].text + "`",
                                         line.tokens[1].span));
                continue;
            }
            it->second.legal_tags.push_back(line.tokens[2].text);
        } else {
            diags.push_back(error_at("unknown record `" + kw + "`", head.span));
        }
    }
    return doc;
}

// Fills condition_keys on every FR from the parsed conditions and checks
// referential integrity against `link_base` (the document itself, optionally
// extended with an external base catalog).
void resolve_links(ParsedDoc& doc, const Catalog* base, Diagnostics& diags) {
    auto nfr_known = [&](const std::string& key) {
        return doc.catalog.nfrs.count(key) || (base && base->nfrs.count(key));
    };
    auto fr_known = [&](const std::string& key) {
        return doc.catalog.frs.count(key) || (base && base->frs.count(key));
    };
    for (auto& [key, fr] : doc.catalog.frs) {
        for (const auto& link : fr.nfr_links) {
            if (!nfr_known(link)) {
                diags.push_back(error_at("unknown " + link, {1, 1, 0}));
            }
        }
        if (fr.trace_of && !fr_known(*fr.trace_of)) {
            diags.push_back(error_at(
                "trace= references unknown FR `" + *fr.trace_of + "`", {1, 1, 0}));
        }
    }
    for (auto& [key, cond] : doc.catalog.conditions) {
        if (!fr_known(cond.fr_key)) {
            diags.push_back(error_at(
                "condition `" + key + "` references unknown FR `" + cond.fr_key + "`",
                {1, 1, 0}));
            continue;
        }
        auto it = doc.catalog.frs.find(cond.fr_key);
        if (it != doc.catalog.frs.end()) {
            it->second.condition_keys.push_back(cond.key);
        }
    }
}

}  // namespace

CatalogLoadResult load_catalog(const std::string& text) {
    CatalogLoadResult result;
    ParsedDoc doc = parse_records(text, result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    resolve_links(doc, nullptr, result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    result.catalog = std::move(doc.catalog);
    return result;
}

RequirementParseResult parse_requirements(const std::string& text, const Catalog& base) {
    RequirementParseResult result;
    ParsedDoc doc = parse_records(text, result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    resolve_links(doc, &base, result.diagnostics);
    if (has_errors(result.diagnostics)) return result;
    RequirementSet reqs;
    for (const auto& [key, fr] : doc.catalog.frs) reqs.frs.push_back(fr);
    reqs.conditions = doc.catalog.conditions;
    result.requirements = std::move(reqs);
    return result;
}

// ---------------------------------------------------------------------------
// Built-in data

const std::string& builtin_catalog_text() {
    static const std::string text = R"(version 1
# Non-functional requirements
nfr NFR1 capability "Accessibility" "User must be able to access and retrieve data"
nfr NFR2 capability "Authenticity" "Source of identity data must be trustworthy and provable"
nfr NFR3 capability "Autonomy" "User must be able to manage their identity independently"
nfr NFR4 capability "Availability" "Identity data must be available at any time"
nfr NFR5 constraint "Compatibility" "Identity data must be compatible with legacy systems"
nfr NFR6 capability "Consent" "User must explicitly consent to the use of their data"
nfr NFR7 capability "Control" "User must be able to control access to their identity data"
nfr NFR8 constraint "Cost" "All components must have minimal costs"
nfr NFR9 constraint "Decentralization" "All components should not rely on centralized elements"
nfr NFR10 capability "Existence" "User identity must have an independent existence without relying on other services"
nfr NFR11 capability "Interoperability" "Identity data must be usable across different platforms and services"
nfr NFR12 capability "Persistence" "Identity data must remain valid and accessible for as long as necessary"
nfr NFR13 capability "Portability" "User must be able to move their identity data"
nfr NFR14 capability "Privacy" "User must be able to minimize information required to share"
nfr NFR15 capability "Protection" "Identity data must be protected against misuse"
nfr NFR16 capability "Recoverability" "User must be able to recover identity data in case of loss and compromise"
nfr NFR17 capability "Representation" "Users must be able to create multiple identities"
nfr NFR18 constraint "Security" "All components must ensure the data is secure"
nfr NFR19 capability "Single Source" "User must be the single authoritative source of their identity"
nfr NFR20 constraint "Standard" "Credentials must adhere to open standards"
nfr NFR21 capability "Transparency" "Information about data use must be readily available"
nfr NFR22 constraint "Usability" "User must be able to use their data efficiently and intuitively"
nfr NFR23 constraint "User Experience" "Identity management process must be simple, consistent, and user-friendly"
nfr NFR24 capability "Verifiability" "Identity data must be verifiable"

# Actor capabilities
cap 1 data-owner "Shall be able to hold personal data"
cap 2 data-owner "Shall be able to present personal data to the issuer"
cap 3 data-owner "Shall be able to request a credential from the issuer"
cap 4 data-owner "Shall be able to generate a new DID"
cap 5 data-owner "Shall be able to generate keys"
cap 6 data-owner "Shall be able to store a credential pr personal data"
cap 7 data-owner "Shall be able to export a credential or personal data"
cap 8 data-owner "Shall be able to import a credential or personal data"
cap 9 data-owner "Shall be able to retrieve a credential or personal data"
cap 10 data-owner "Shall be able to present a credential for verification"
cap 11 data-owner "Shall be able to request a service from the verifier"
cap 12 verifier "Shall be able to offer a service"
cap 13 verifier "Shall be able to verify a credential of the data owner"
cap 14 verifier "Shall be able to verify a signature of the issuer"
cap 15 issuer "Shall be able to issue a credential"
cap 16 issuer "Shall be able to revoke a credential"
cap 17 issuer "Shall be able to register with the registry"
cap 18 system "Shall be able to keep the issuer registry"
cap 19 system "Shall be able to keep the revocation registry"
cap 20 system "Shall be able to keep the schema registry"
cap 21 wallet "Shall be able to store data"
cap 22 wallet "Shall be able to support data export and import"
cap 23 wallet "Shall be able to recover access to data"
cap 24 wallet "Shall be able to provide an interface for interactions"

# Original consent functional statements
fr FR6.1 T1 nfr=NFR6,NFR8 "THE SYSTEM shall inform the o about the intended use of the credential."
fr FR6.2 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO consent to credential or personal data processing."
fr FR6.3 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO withdraw consent to credential or personal data processing."
fr FR6.4 T1 nfr=NFR6,NFR8 "THE SYSTEM shall collect the o agreement to credential or personal data processing."
fr FR6.5 T1 nfr=NFR6,NFR8 "THE SYSTEM shall use unambiguous language to obtain consent."
fr FR6.6 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO present personal data to the issuer."
fr FR6.7 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO request a credential from the issuer."
fr FR6.8 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO present a credential for verification."
fr FR6.9 T2 nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO share only a proof of a credential."

# Consent functional conditions
cond C6.1.1 fr=FR6.1 "The s collected information from the v on how the credential or personal data will be used."
cond C6.2.1 fr=FR6.2 "The credential has not yet been shared."
cond C6.3.1 fr=FR6.3 "The consent has been previously given."
cond C6.4.1 fr=FR6.4 "The o agrees to data processing before sharing credentials."
cond C6.5.1 fr=FR6.5 "The o can be in a different age category and have different technical knowledge."
cond C6.6.1 fr=FR6.6 "The o is aware of how credentials or personal data are used by the v."
cond C6.6.2 fr=FR6.6 "The i informed the o what personal data is required."
cond C6.7.1 fr=FR6.7 "The o is aware of what personal data will be used for credential issuance."
cond C6.8.1 fr=FR6.8 "The o provided consent to credential verification."
cond C6.8.2 fr=FR6.8 "Each presented credential is treated separately and requires its own consent."
cond C6.8.3 fr=FR6.8 "Verification requests are triggered by the o."
cond C6.8.4 fr=FR6.8 "The o selects which attributes to share before presentation."
cond C6.8.5 fr=FR6.8 "The presented credential includes necessary metadata."
cond C6.9.1 fr=FR6.9 "The o can generate a proof."

# Updated consent functional statements
fr FR18 T1 trace=FR6.5 criteria=Verifiable nfr=NFR6,NFR8 "THE SYSTEM shall obtain consent of o using language that meets a predefined readability standard (e.g., Flesch-Kincaid Grade 8 or lower)."
fr FR32 T1 trace=FR6.1 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall inform the o about the purpose, scope, and recipients of the data usage through an accessible notification or consent screen."
fr FR33a T1 trace=FR6.4 criteria=Clear,Atomic nfr=NFR6,NFR8 "THE SYSTEM shall obtain explicit consent from the o for credential processing via a user interface prompt before any processing occurs."
fr FR33b T1 trace=FR6.4 criteria=Clear,Atomic nfr=NFR6,NFR8 "THE SYSTEM shall obtain explicit consent from the o for personal data processing via a user interface prompt before any processing occurs."
fr FR44 T2 trace=FR6.7 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO request a credential from a selected i."
fr FR46 T2 trace=FR6.2 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO give informed consent before any processing of credentials or personal data, including issuance, sharing, or verification."
fr FR47 T2 trace=FR6.3 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO withdraw previously given consent for the processing of credential or personal data."
fr FR52 T2 trace=FR6.6 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO present selected personal data to an i upon request."
fr FR53 T2 trace=FR6.8 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO present a cryptographically verifiable credential to a v upon request."
fr FR54 T2 trace=FR6.9 criteria=Clear nfr=NFR6,NFR8 "THE SYSTEM shall PROVIDE the o WITH THE ABILITY TO present a cryptographically verifiable proof of a credential to a v upon request."

# Legal citation tags
legal FR6.2 "GDPR Article 6(1)(a): Lawfulness of Processing"
legal FR6.2 "GDPR Article 7: Conditions for Consent"
legal FR6.3 "GDPR Article 7: Conditions for Consent"
legal FR6.4 "GDPR Article 6(1)(a): Lawfulness of Processing"
legal FR6.5 "GDPR Recital 23"
legal FR18 "GDPR Recital 23"
legal FR33a "GDPR Article 6(1)(a): Lawfulness of Processing"
legal FR33b "GDPR Article 6(1)(a): Lawfulness of Processing"
legal FR46 "GDPR Article 7: Conditions for Consent"
legal FR47 "GDPR Article 7: Conditions for Consent"
)";
    return text;
}

const Catalog& builtin_catalog() {
    static const Catalog cat = [] {
        CatalogLoadResult loaded = load_catalog(builtin_catalog_text());
        if (!loaded.catalog) {
            throw std::logic_error("built-in catalog failed to load: " +
                                   format_diagnostics(loaded.diagnostics));
        }
        return *loaded.catalog;
    }();
    return cat;
}

namespace {

RequirementSet slice_builtin(bool updated) {
    const Catalog& cat = builtin_catalog();
    RequirementSet reqs;
    for (const auto& [key, fr] : cat.frs) {
        if (fr.trace_of.has_value() != updated) continue;
        reqs.frs.push_back(fr);
    }
    // conditions reachable from the slice (directly or via trace_of)
    for (const auto& fr : reqs.frs) {
        for (const auto* cond : cat.effective_conditions(fr.key)) {
            reqs.conditions.emplace(cond->key, *cond);
        }
    }
    return reqs;
}

}  // namespace

RequirementSet builtin_requirements() { return slice_builtin(true); }

RequirementSet builtin_original_requirements() { return slice_builtin(false); }

std::string render(const RequirementSet& reqs) {
    std::ostringstream out;
    out << "version 1\n";
    for (const auto& fr : reqs.frs) {
        out << "fr " << fr.key << ' ' << to_string(fr.template_type);
        if (fr.trace_of) out << " trace=" << *fr.trace_of;
        if (!fr.criteria.empty()) {
            out << " criteria=";
            for (size_t i = 0; i < fr.criteria.size(); ++i) {
                if (i) out << ',';
                out << fr.criteria[i];
            }
        }
        out << " nfr=";
        for (size_t i = 0; i < fr.nfr_links.size(); ++i) {
            if (i) out << ',';
            out << fr.nfr_links[i];
        }
        out << ' ' << specl::quote(fr.statement) << '\n';
    }
    for (const auto& [key, cond] : reqs.conditions) {
        out << "cond " << key << " fr=" << cond.fr_key << ' ' << specl::quote(cond.text)
            << '\n';
    }
    for (const auto& fr : reqs.frs) {
        for (const auto& tag : fr.legal_tags) {
            out << "legal " << fr.key << ' ' << specl::quote(tag) << '\n';
        }
    }
    return out.str();
}

}  // namespace dicheck::catalog
