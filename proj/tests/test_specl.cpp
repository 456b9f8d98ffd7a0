#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dicheck/model.hpp"
#include "dicheck/specl.hpp"

using namespace dicheck;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

specl::Trace parse_trace_ok(const std::string& text) {
    auto parsed = specl::parse_trace(text);
    CAPTURE(format_diagnostics(parsed.diagnostics));
    REQUIRE(parsed.trace.has_value());
    REQUIRE(!has_errors(parsed.diagnostics));
    return *parsed.trace;
}

}  // namespace

TEST_CASE("model documents parse declarations, attributes, and comments") {
    auto parsed = specl::parse_model(
        "version 1\n"
        "# actors first\n"
        "model demo\n"
        "actor owner o\n"
        "actor wallet w of=o\n"
        "service issuance requires=personal_data\n"
        "data personal_data class=personal\n"
        "fact owns o personal_data\n"
        "fact offers w issuance to=o  # trailing comment\n");
    REQUIRE(parsed.decls.has_value());
    CHECK(!has_errors(parsed.diagnostics));
    CHECK(parsed.decls->model_id == "demo");
    CHECK(parsed.decls->actors.size() == 2);
    CHECK(parsed.decls->actors[1].wallet_of == "o");
    CHECK(parsed.decls->resources.size() == 2);
    CHECK(parsed.decls->facts.size() == 2);
    CHECK(parsed.decls->facts[1].counterparty == "o");
}

TEST_CASE("model parse errors carry line and column positions") {
    auto missing_header = specl::parse_model("model demo\n");
    CHECK(!missing_header.decls.has_value());
    REQUIRE(has_errors(missing_header.diagnostics));
    CHECK(missing_header.diagnostics[0].span.line == 1);

    // Kind vocabulary is the builder's concern; the parser stays syntactic.
    auto bad_kind = specl::parse_model(
        "version 1\n"
        "model demo\n"
        "actor ghost g\n");
    REQUIRE(bad_kind.decls.has_value());
    CHECK(!has_errors(bad_kind.diagnostics));
    auto built = model::build_model(*bad_kind.decls);
    CHECK(!built.model.has_value());
    CHECK(has_errors(built.diagnostics));

    auto unterminated = specl::parse_model(
        "version 1\n"
        "model demo\n"
        "actor owner \"o\n");
    CHECK(has_errors(unterminated.diagnostics));

    auto bad_escape = specl::parse_model(
        "version 1\n"
        "model demo\n"
        "actor owner \"o\\q\"\n");
    CHECK(has_errors(bad_escape.diagnostics));
}

TEST_CASE("trace documents parse events with attrs and counterparties") {
    auto trace = parse_trace_ok(
        "version 1\n"
        "trace canonical\n"
        "1 inform i o personal_data purpose=\"credential issuance\"\n"
        "2 consent.grant o i personal_data text=\"I agree.\"\n"
        "3 store o credential\n"
        "4 proof.generate o credential id=c1\n");
    CHECK(trace.declared_model == "canonical");
    REQUIRE(trace.events.size() == 4);
    CHECK(trace.events[0].counterparty == "o");
    REQUIRE(trace.events[0].attr("purpose") != nullptr);
    CHECK(*trace.events[0].attr("purpose") == "credential issuance");
    CHECK(!trace.events[2].counterparty.has_value());
    CHECK(*trace.events[3].attr("id") == "c1");
}

TEST_CASE("directed events demand a counterparty column and undirected refuse one") {
    auto missing = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "1 present o credential\n");
    CHECK(has_errors(missing.diagnostics));

    auto extra = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "1 store o w credential\n");
    CHECK(has_errors(extra.diagnostics));
}

TEST_CASE("sequence numbers must increase strictly") {
    auto out_of_order = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "2 store o credential\n"
        "1 store o credential\n");
    CHECK(has_errors(out_of_order.diagnostics));

    auto repeated = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "1 store o credential\n"
        "1 retrieve o credential\n");
    CHECK(has_errors(repeated.diagnostics));
}

TEST_CASE("inform events require a purpose attribute") {
    auto bare = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "1 inform i o personal_data\n");
    CHECK(has_errors(bare.diagnostics));
}

TEST_CASE("unknown event kinds are rejected with the offending token") {
    auto parsed = specl::parse_trace(
        "version 1\n"
        "trace t\n"
        "1 teleport o credential\n");
    REQUIRE(has_errors(parsed.diagnostics));
    bool mentions = false;
    for (const auto& diagnostic : parsed.diagnostics) {
        if (diagnostic.message.find("teleport") != std::string::npos) mentions = true;
    }
    CHECK(mentions);
}

TEST_CASE("trace render round-trips: parse then render is a fixpoint") {
    const char* fixtures[] = {
        "tests/fixtures/traces/issuance.ditrace",
        "tests/fixtures/traces/presentation.ditrace",
        "tests/fixtures/traces/proof-presentation.ditrace",
        "tests/fixtures/traces/revocation.ditrace",
        "tests/fixtures/traces/export-import.ditrace",
        "tests/fixtures/traces/retrieval.ditrace",
        "tests/fixtures/traces/recovery.ditrace",
        "tests/fixtures/traces/issuance-skip-consent.ditrace",
        "tests/fixtures/traces/presentation-drop-metadata.ditrace",
    };
    for (const char* path : fixtures) {
        CAPTURE(path);
        std::string text = read_file(path);
        auto first = parse_trace_ok(text);
        std::string rendered = specl::render(first);
        auto second = parse_trace_ok(rendered);
        CHECK(specl::render(second) == rendered);
        CHECK(second.events.size() == first.events.size());
    }
}

TEST_CASE("model render round-trips on the canonical fixture") {
    std::string text = read_file("tests/fixtures/canonical.dimodel");
    auto first = specl::parse_model(text);
    REQUIRE(first.decls.has_value());
    std::string rendered = specl::render(*first.decls);
    auto second = specl::parse_model(rendered);
    REQUIRE(second.decls.has_value());
    CHECK(specl::render(*second.decls) == rendered);
}

TEST_CASE("attribute values quote only when they must") {
    specl::Trace trace;
    trace.declared_model = "t";
    specl::Event event;
    event.seq = 1;
    event.kind = specl::EventKind::Store;
    event.subject = "o";
    event.object = "credential";
    event.attrs["plain"] = "simple";
    event.attrs["spaced"] = "two words";
    event.attrs["empty"] = "";
    event.attrs["quoted"] = "say \"hi\"";
    trace.events.push_back(event);

    std::string rendered = specl::render(trace);
    CHECK(rendered.find("plain=simple") != std::string::npos);
    CHECK(rendered.find("spaced=\"two words\"") != std::string::npos);
    CHECK(rendered.find("empty=\"\"") != std::string::npos);
    CHECK(rendered.find("quoted=\"say \\\"hi\\\"\"") != std::string::npos);

    auto back = parse_trace_ok(rendered);
    CHECK(*back.events[0].attr("quoted") == "say \"hi\"");
    CHECK(*back.events[0].attr("empty") == "");
}
