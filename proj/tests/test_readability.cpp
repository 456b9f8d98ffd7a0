#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dicheck/readability.hpp"

using namespace dicheck;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

double grade_of(const std::string& path) {
    auto grade = readability::grade(read_file(path));
    REQUIRE(grade.has_value());
    return *grade;
}

}  // namespace

TEST_CASE("fixture grades match hand-computed values") {
    CHECK(grade_of("tests/fixtures/readability/f1.txt") == doctest::Approx(-1.84).epsilon(0.0001));
    CHECK(grade_of("tests/fixtures/readability/f2.txt") == doctest::Approx(-3.40).epsilon(0.0001));
    CHECK(grade_of("tests/fixtures/readability/f3.txt") == doctest::Approx(2.365).epsilon(0.0001));
    CHECK(grade_of("tests/fixtures/readability/f4.txt") == doctest::Approx(49.683333).epsilon(0.0001));
    CHECK(grade_of("tests/fixtures/readability/f5.txt") == doctest::Approx(7.156481).epsilon(0.0001));
}

TEST_CASE("fixture token counts match hand counts") {
    auto f3 = readability::analyze(read_file("tests/fixtures/readability/f3.txt"));
    CHECK(f3.words == 24);
    CHECK(f3.sentences == 2);
    CHECK(f3.syllables == 27);

    auto f4 = readability::analyze(read_file("tests/fixtures/readability/f4.txt"));
    CHECK(f4.words == 6);
    CHECK(f4.sentences == 1);
    CHECK(f4.syllables == 32);

    auto f5 = readability::analyze(read_file("tests/fixtures/readability/f5.txt"));
    CHECK(f5.words == 27);
    CHECK(f5.sentences == 2);
    CHECK(f5.syllables == 40);
}

TEST_CASE("syllable counting applies vowel groups, silent e, and the floor") {
    CHECK(readability::syllables_in_word("cat") == 1);
    CHECK(readability::syllables_in_word("stored") == 2);  // ends in d, no subtraction
    CHECK(readability::syllables_in_word("store") == 1);
    CHECK(readability::syllables_in_word("agree") == 2);
    CHECK(readability::syllables_in_word("consent") == 2);
    CHECK(readability::syllables_in_word("identity") == 4);
    CHECK(readability::syllables_in_word("the") == 1);  // floor, not zero
    CHECK(readability::syllables_in_word("rhythm") == 1);
}

TEST_CASE("sentences need a word and close on terminators or end of text") {
    auto stats = readability::analyze("One. Two! Three? And a trailing clause");
    CHECK(stats.sentences == 4);
    CHECK(readability::analyze("...").sentences == 0);
    CHECK(readability::analyze("...").words == 0);
    CHECK(!readability::grade("   ").has_value());
}

TEST_CASE("the grade eight gate is inclusive at the boundary") {
    CHECK(readability::passes_grade8(8.0));
    CHECK(readability::passes_grade8(7.99));
    CHECK(!readability::passes_grade8(8.0 + 1e-9));
    CHECK(!readability::passes_grade8(8.01));

    // The consent text every built-in scenario uses stays under the gate.
    auto grade = readability::grade("I agree that my name may be stored.");
    REQUIRE(grade.has_value());
    CHECK(*grade == doctest::Approx(2.28).epsilon(0.0001));
    CHECK(readability::passes_grade8(*grade));
}
