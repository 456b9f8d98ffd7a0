#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dicheck/cli.hpp"

using namespace dicheck;

namespace {

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kModel = "tests/fixtures/canonical.dimodel";

std::string scratch_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

}  // namespace

TEST_CASE("validate accepts the canonical model and its traces") {
    auto result = invoke({"validate", kModel, "tests/fixtures/traces/issuance.ditrace"});
    CHECK(result.code == cli::kExitOk);
    CHECK(result.out.find("model canonical") != std::string::npos);
    CHECK(result.out.find("5 actors") != std::string::npos);
    CHECK(result.out.find("9 events") != std::string::npos);
    CHECK(result.err.empty());
}

TEST_CASE("validate reports parse errors with positions and exits 2") {
    write_file(scratch_path("bad.dimodel"), "version 1\nmodel broken\nactor ghost g\n");
    auto result = invoke({"validate", scratch_path("bad.dimodel")});
    CHECK(result.code == cli::kExitUsage);
    CHECK(result.err.find(scratch_path("bad.dimodel") + ":3:") != std::string::npos);
    CHECK(result.err.find("ghost") != std::string::npos);
}

TEST_CASE("validate rejects traces declared against another model") {
    write_file(scratch_path("foreign.ditrace"),
               "version 1\ntrace other-model\n1 store o credential\n");
    auto result = invoke({"validate", kModel, scratch_path("foreign.ditrace")});
    CHECK(result.code == cli::kExitUsage);
    CHECK(result.err.find("other-model") != std::string::npos);
}

TEST_CASE("infer lists only the derived facts") {
    auto result = invoke({"infer", "--model", kModel});
    CHECK(result.code == cli::kExitOk);
    CHECK(result.out.find("fulfills i issuance") != std::string::npos);
    CHECK(result.out.find("retrieves o credential") != std::string::npos);
    // Declared base facts stay out of the listing.
    CHECK(result.out.find("owns o credential") == std::string::npos);
}

TEST_CASE("infer proves a goal or reports non-derivability") {
    auto proved = invoke({"infer", "--goal", "presents o credential"});
    CHECK(proved.code == cli::kExitOk);
    CHECK(proved.out.find("presents o credential  [Ax2]") != std::string::npos);
    CHECK(proved.out.find("owns o credential  [base]") != std::string::npos);

    auto unproved = invoke({"infer", "--goal", "fulfills o issuance"});
    CHECK(unproved.code == cli::kExitFindings);
    CHECK(unproved.out.find("not derivable: fulfills o issuance") != std::string::npos);

    auto unknown = invoke({"infer", "--goal", "presents zz credential"});
    CHECK(unknown.code == cli::kExitUsage);
    CHECK(unknown.err.find("zz") != std::string::npos);

    auto malformed = invoke({"infer", "--goal", "presents o"});
    CHECK(malformed.code == cli::kExitUsage);
}

TEST_CASE("simulate reproduces fixtures and validates its arguments") {
    std::ifstream golden("tests/fixtures/traces/issuance.ditrace", std::ios::binary);
    REQUIRE(golden.good());
    std::ostringstream expected;
    expected << golden.rdbuf();

    auto result = invoke({"simulate", "issuance", "--seed", "7"});
    CHECK(result.code == cli::kExitOk);
    CHECK(result.out == expected.str());

    auto unknown = invoke({"simulate", "fantasy"});
    CHECK(unknown.code == cli::kExitUsage);
    CHECK(unknown.err.find("issuance") != std::string::npos);  // lists known ids

    auto bad_inject = invoke({"simulate", "issuance", "--inject", "skip-lunch"});
    CHECK(bad_inject.code == cli::kExitUsage);

    auto impossible = invoke({"simulate", "issuance", "--inject", "skip-proof-generate"});
    CHECK(impossible.code == cli::kExitUsage);
    CHECK(impossible.err.find("cannot inject") != std::string::npos);
}

TEST_CASE("check passes clean traces and flags injected ones") {
    auto clean = invoke({"check", "tests/fixtures/traces/issuance.ditrace",
                         "tests/fixtures/traces/presentation.ditrace"});
    CHECK(clean.code == cli::kExitOk);
    CHECK(clean.out.find("violated") == std::string::npos);

    auto broken =
        invoke({"check", "tests/fixtures/traces/issuance-skip-consent.ditrace",
                "--format", "machine"});
    CHECK(broken.code == cli::kExitFindings);
    CHECK(broken.out.find("verdict FR33b violated") != std::string::npos);
    CHECK(broken.out.find("verdict FR32 satisfied") != std::string::npos);
}

TEST_CASE("check and report emit identical bytes across runs") {
    const std::vector<std::string> check_args = {
        "check", "tests/fixtures/traces/presentation.ditrace", "--format", "machine"};
    CHECK(invoke(check_args).out == invoke(check_args).out);

    const std::vector<std::string> report_args = {
        "report", "tests/fixtures/traces/issuance.ditrace", "--format", "machine"};
    auto first = invoke(report_args);
    auto second = invoke(report_args);
    CHECK(first.out == second.out);
    CHECK(first.out.find("report v1\n") == 0);
    CHECK(first.out.find("section coverage") != std::string::npos);
    CHECK(first.out.find("summary NFR6 linked=10") != std::string::npos);
    CHECK(first.out.find("nfr NFR6 satisfied frs=10 violated=0") != std::string::npos);
    CHECK(first.out.find("stamp") == std::string::npos);
}

TEST_CASE("report timestamps are opt-in so output stays reproducible") {
    auto stamped = invoke({"report", "--timestamps", "--format", "machine"});
    CHECK(stamped.code == cli::kExitOk);
    CHECK(stamped.out.find("stamp \"") != std::string::npos);

    auto human = invoke({"report", "tests/fixtures/traces/issuance.ditrace"});
    CHECK(human.code == cli::kExitOk);
    CHECK(human.out.find("NFR6 (Consent): 10 FR, 0 violated, satisfied") !=
          std::string::npos);
}

TEST_CASE("lint grades the built-in sets as recorded") {
    auto original = invoke({"lint", "--builtin", "original", "--format", "machine"});
    CHECK(original.code == cli::kExitFindings);
    CHECK(original.out.find("lint FR6.4 atomic fail") != std::string::npos);
    CHECK(original.out.find("lint FR6.5 verifiable fail") != std::string::npos);

    auto updated = invoke({"lint", "--builtin", "updated", "--format", "machine"});
    CHECK(updated.code == cli::kExitOk);
    size_t failures = 0;
    for (size_t at = updated.out.find(" fail "); at != std::string::npos;
         at = updated.out.find(" fail ", at + 1)) {
        ++failures;
    }
    CHECK(failures == 1);  // only the advisory set-completeness gap
    CHECK(updated.out.find("lint set complete fail") != std::string::npos);

    auto strict = invoke({"lint", "--builtin", "updated", "--strict"});
    CHECK(strict.code == cli::kExitFindings);

    auto nonsense = invoke({"lint", "--builtin", "imaginary"});
    CHECK(nonsense.code == cli::kExitUsage);
}

TEST_CASE("lint reads requirement documents from files") {
    write_file(scratch_path("reqs.dicat"),
               "version 1\n"
               "fr FR90 T1 nfr=NFR6 \"THE SYSTEM shall store the records.\"\n");
    auto result = invoke({"lint", scratch_path("reqs.dicat"), "--format", "machine"});
    CHECK(result.code == cli::kExitOk);
    CHECK(result.out.find("lint FR90 atomic pass") != std::string::npos);

    write_file(scratch_path("empty.dicat"), "");
    auto empty = invoke({"lint", scratch_path("empty.dicat")});
    CHECK(empty.code == cli::kExitUsage);
}

TEST_CASE("usage errors exit 2 and help exits 0") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
    CHECK(invoke({"check", "--format", "yaml"}).code == cli::kExitUsage);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    auto sub = invoke({"simulate", "--help"});
    CHECK(sub.code == cli::kExitOk);
    CHECK(sub.out.find("--inject") != std::string::npos);
}

TEST_CASE("output lands in --out files when requested") {
    auto result = invoke({"check", "tests/fixtures/traces/issuance.ditrace", "--out",
                          scratch_path("verdicts.txt"), "--format", "machine"});
    CHECK(result.code == cli::kExitOk);
    std::ifstream in(scratch_path("verdicts.txt"), std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream written;
    written << in.rdbuf();
    CHECK(written.str().find("verdict FR18 satisfied") != std::string::npos);
}
