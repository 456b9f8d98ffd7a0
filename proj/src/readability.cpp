#include "dicheck/readability.hpp"

#include <cctype>

namespace dicheck::readability {

namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool is_word_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '\'';
}

bool has_letter(const std::string& word) {
    for (char c : word) {
        if (std::isalpha(static_cast<unsigned char>(c))) return true;
    }
    return false;
}

}  // namespace

long syllables_in_word(const std::string& word) {
    std::string w;
    for (char c : word) {
        if (c == '\'') continue;
        w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    long groups = 0;
    bool in_group = false;
    for (char c : w) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    // silent trailing e: its own group, not the only one
    if (groups > 1 && w.size() >= 2 && w.back() == 'e' && !is_vowel(w[w.size() - 2])) {
        --groups;
    }
    return groups < 1 ? 1 : groups;
}

TextStats analyze(const std::string& text) {
    TextStats stats;
    size_t pos = 0;
    long segment_words = 0;
    auto close_segment = [&] {
        if (segment_words > 0) ++stats.sentences;
        segment_words = 0;
    };
    while (pos < text.size()) {
        char c = text[pos];
        if (c == '.' || c == '!' || c == '?') {
            close_segment();
            ++pos;
            continue;
        }
        if (is_word_char(c)) {
            size_t end = pos;
            while (end < text.size() && is_word_char(text[end])) ++end;
            std::string word = text.substr(pos, end - pos);
            if (has_letter(word)) {
                ++stats.words;
                ++segment_words;
                stats.syllables += syllables_in_word(word);
            }
            pos = end;
            continue;
        }
        ++pos;
    }
    close_segment();  // end-of-text terminates the final sentence
    return stats;
}

std::optional<double> grade(const std::string& text) {
    TextStats stats = analyze(text);
    if (stats.words == 0) return std::nullopt;
    double w = static_cast<double>(stats.words);
    double s = static_cast<double>(stats.sentences);
    double y = static_cast<double>(stats.syllables);
    return 0.39 * (w / s) + 11.8 * (y / w) - 15.59;
}

bool passes_grade8(double g) { return g <= 8.0; }

}  // namespace dicheck::readability
