#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "dicheck/catalog.hpp"

using namespace dicheck;

TEST_CASE("the built-in catalog carries the full knowledge base") {
    const auto& cat = catalog::builtin_catalog();
    CHECK(cat.nfrs.size() == 24);
    CHECK(cat.capabilities.size() == 24);
    CHECK(cat.frs.size() == 19);  // nine originals plus ten updated
    CHECK(cat.conditions.size() == 14);

    CHECK(cat.constraint_keys() ==
          std::set<std::string>{"NFR5", "NFR8", "NFR9", "NFR18", "NFR20", "NFR22",
                                "NFR23"});

    const auto* consent = cat.find_nfr("NFR6");
    REQUIRE(consent != nullptr);
    CHECK(consent->name == "Consent");
    CHECK(consent->kind == catalog::NfrKind::Capability);
}

TEST_CASE("nfr keys iterate in numeric order") {
    const auto& cat = catalog::builtin_catalog();
    std::vector<std::string> keys;
    for (const auto& [key, nfr] : cat.nfrs) keys.push_back(key);
    REQUIRE(keys.size() == 24);
    CHECK(keys.front() == "NFR1");
    CHECK(keys[1] == "NFR2");   // not NFR10
    CHECK(keys[9] == "NFR10");
    CHECK(keys.back() == "NFR24");
}

TEST_CASE("capabilities assign contiguous number ranges per actor") {
    const auto& cat = catalog::builtin_catalog();
    auto actor_of = [&](int number) {
        auto it = cat.capabilities.find(number);
        REQUIRE(it != cat.capabilities.end());
        return it->second.actor;
    };
    for (int n = 1; n <= 11; ++n) CHECK(actor_of(n) == catalog::ActorClass::DataOwner);
    for (int n = 12; n <= 14; ++n) CHECK(actor_of(n) == catalog::ActorClass::Verifier);
    for (int n = 15; n <= 17; ++n) CHECK(actor_of(n) == catalog::ActorClass::Issuer);
    for (int n = 18; n <= 20; ++n) CHECK(actor_of(n) == catalog::ActorClass::System);
    for (int n = 21; n <= 24; ++n) CHECK(actor_of(n) == catalog::ActorClass::Wallet);
    for (const auto& [number, cap] : cat.capabilities) {
        CAPTURE(number);
        CHECK(cap.text.rfind("Shall be able to", 0) == 0);
    }
}

TEST_CASE("capability six normalizes its source typo") {
    const auto& cat = catalog::builtin_catalog();
    auto it = cat.capabilities.find(6);
    REQUIRE(it != cat.capabilities.end());
    CHECK(it->second.text.find("credential pr personal data") != std::string::npos);
    REQUIRE(it->second.normalized_text.has_value());
    CHECK(it->second.normalized_text->find("credential or personal data") !=
          std::string::npos);
}

TEST_CASE("updated statements trace to originals and inherit their conditions") {
    const auto& cat = catalog::builtin_catalog();
    const auto* fr47 = cat.find_fr("FR47");
    REQUIRE(fr47 != nullptr);
    CHECK(fr47->trace_of == "FR6.3");
    CHECK(fr47->template_type == catalog::Template::T2);

    auto conditions = cat.effective_conditions("FR47");
    bool inherited = false;
    for (const auto* cond : conditions) {
        if (cond->key.rfind("C6.3", 0) == 0) inherited = true;
    }
    CHECK(inherited);

    const auto* fr18 = cat.find_fr("FR18");
    REQUIRE(fr18 != nullptr);
    CHECK(fr18->trace_of == "FR6.5");
    CHECK(std::find(fr18->criteria.begin(), fr18->criteria.end(), "Verifiable") !=
          fr18->criteria.end());
}

TEST_CASE("legal tags attach where the regulation grounds the statement") {
    const auto& cat = catalog::builtin_catalog();
    const auto* fr62 = cat.find_fr("FR6.2");
    REQUIRE(fr62 != nullptr);
    REQUIRE(fr62->legal_tags.size() == 2);
    CHECK(fr62->legal_tags[0].find("Article 6(1)(a)") != std::string::npos);
    CHECK(fr62->legal_tags[1].find("Article 7") != std::string::npos);

    const auto* fr53 = cat.find_fr("FR53");
    REQUIRE(fr53 != nullptr);
    CHECK(fr53->legal_tags.empty());
}

TEST_CASE("the requirement sets slice the catalog by generation") {
    auto updated = catalog::builtin_requirements();
    REQUIRE(updated.frs.size() == 10);
    CHECK(updated.frs.front().key == "FR18");
    CHECK(updated.frs.back().key == "FR54");
    for (const auto& fr : updated.frs) {
        CHECK(fr.trace_of.has_value());
        CHECK(std::find(fr.nfr_links.begin(), fr.nfr_links.end(), "NFR6") !=
              fr.nfr_links.end());
        CHECK(std::find(fr.nfr_links.begin(), fr.nfr_links.end(), "NFR8") !=
              fr.nfr_links.end());
    }

    auto original = catalog::builtin_original_requirements();
    REQUIRE(original.frs.size() == 9);
    CHECK(original.frs.front().key == "FR6.1");
    for (const auto& fr : original.frs) CHECK(!fr.trace_of.has_value());
}

TEST_CASE("requirement documents parse against the catalog and reject bad links") {
    const auto& cat = catalog::builtin_catalog();
    auto good = catalog::parse_requirements(
        "version 1\n"
        "fr FR90 T1 nfr=NFR6 \"The system shall inform the data owner about collected "
        "data through a notice.\"\n"
        "cond C90.1 fr=FR90 \"A notice exists.\"\n",
        cat);
    CAPTURE(format_diagnostics(good.diagnostics));
    REQUIRE(good.requirements.has_value());
    CHECK(good.requirements->frs.size() == 1);
    CHECK(good.requirements->conditions.size() == 1);

    auto bad_nfr = catalog::parse_requirements(
        "version 1\n"
        "fr FR91 T1 nfr=NFR99 \"The system shall store data.\"\n",
        cat);
    CHECK(!bad_nfr.requirements.has_value());

    auto bad_cond = catalog::parse_requirements(
        "version 1\n"
        "cond C1.1 fr=FR404 \"Dangling.\"\n",
        cat);
    CHECK(!bad_cond.requirements.has_value());

    auto empty = catalog::parse_requirements("", cat);
    CHECK(!empty.requirements.has_value());
    CHECK(has_errors(empty.diagnostics));
}

TEST_CASE("the built-in catalog text reloads to the same catalog") {
    auto reloaded = catalog::load_catalog(catalog::builtin_catalog_text());
    CAPTURE(format_diagnostics(reloaded.diagnostics));
    REQUIRE(reloaded.catalog.has_value());
    CHECK(!has_errors(reloaded.diagnostics));
    const auto& cat = catalog::builtin_catalog();
    CHECK(reloaded.catalog->nfrs.size() == cat.nfrs.size());
    CHECK(reloaded.catalog->frs.size() == cat.frs.size());
    CHECK(reloaded.catalog->conditions.size() == cat.conditions.size());
}

TEST_CASE("render emits a reparseable requirement document") {
    const auto& cat = catalog::builtin_catalog();
    auto reqs = catalog::builtin_requirements();
    std::string rendered = catalog::render(reqs);
    auto back = catalog::parse_requirements(rendered, cat);
    CAPTURE(format_diagnostics(back.diagnostics));
    REQUIRE(back.requirements.has_value());
    CHECK(back.requirements->frs.size() == reqs.frs.size());
    CHECK(catalog::render(*back.requirements) == rendered);
}

TEST_CASE("numeric key comparison orders mixed keys naturally") {
    catalog::KeyLess less;
    CHECK(less("FR6.2", "FR6.10"));
    CHECK(less("FR18", "FR33a"));
    CHECK(less("FR33a", "FR33b"));
    CHECK(less("NFR2", "NFR10"));
    CHECK(!less("NFR10", "NFR2"));
    CHECK(!less("FR18", "FR18"));
}
