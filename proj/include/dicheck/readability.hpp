#pragma once

#include <optional>
#include <string>
#include <vector>

namespace dicheck::readability {

struct TextStats {
    long words = 0;
    long sentences = 0;
    long syllables = 0;
};

/// Tokenizes per the fixed rules: a sentence is a maximal segment ending in
/// . ! ? or end-of-text (empty segments ignored); a word is a maximal run of
/// letters/apostrophes; syllables count vowel groups (aeiouy) per word with a
/// silent trailing `e` subtracted, minimum 1 per word.
TextStats analyze(const std::string& text);

/// Syllable count for a single lowercase-folded word.
long syllables_in_word(const std::string& word);

/// Flesch-Kincaid grade: 0.39*(W/S) + 11.8*(Y/W) - 15.59.
/// Empty text (no words) is an error, reported via nullopt.
std::optional<double> grade(const std::string& text);

/// Grade-8 threshold, inclusive: passes iff grade <= 8.0.
bool passes_grade8(double grade);

}  // namespace dicheck::readability
