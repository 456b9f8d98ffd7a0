#include <algorithm>
#include <cctype>
#include <sstream>

#include "dicheck/conformance.hpp"

namespace dicheck::conformance {

namespace {

std::string lower(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

std::string strip_punct(const std::string& word) {
    size_t begin = 0, end = word.size();
    auto is_punct = [](char c) {
        return !std::isalnum(static_cast<unsigned char>(c)) && c != '-';
    };
    while (begin < end && is_punct(word[begin])) ++begin;
    while (end > begin && is_punct(word[end - 1])) --end;
    return word.substr(begin, end - begin);
}

std::vector<std::string> words_of(const std::string& text) {
    std::vector<std::string> words;
    std::istringstream in(text);
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

// lowercased, punctuation-stripped word list
std::vector<std::string> clean_words(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& word : words_of(text)) {
        std::string w = lower(strip_punct(word));
        if (!w.empty()) out.push_back(w);
    }
    return out;
}

bool is_modal(const std::string& word) {
    return word == "shall" || word == "should" || word == "will" || word == "may";
}

}  // namespace

catalog::Template classify_template(const std::string& statement) {
    auto t = template_of(statement);
    return t ? *t : catalog::Template::T1;
}

bool is_nonconforming(const std::string& statement) {
    return !template_of(statement).has_value();
}

std::optional<catalog::Template> template_of(const std::string& statement) {
    std::vector<std::string> w = clean_words(statement);
    if (w.size() < 4) return std::nullopt;
    if (w[0] != "the" || w[1] != "system" || !is_modal(w[2])) return std::nullopt;

    // T2: THE SYSTEM <modal> PROVIDE <whom> WITH THE ABILITY TO <verb...>
    if (w[3] == "provide") {
        for (size_t i = 4; i + 3 < w.size(); ++i) {
            if (w[i] == "with" && w[i + 1] == "the" && w[i + 2] == "ability" &&
                w[i + 3] == "to") {
                if (i > 4 && i + 4 < w.size()) return catalog::Template::T2;
            }
        }
    }
    // T3: THE SYSTEM <modal> BE ABLE TO <verb...>
    if (w.size() > 6 && w[3] == "be" && w[4] == "able" && w[5] == "to") {
        return catalog::Template::T3;
    }
    // T1: THE SYSTEM <modal> <verb...>
    return catalog::Template::T1;
}

namespace {

// Words after the template boilerplate: the process verb and its objects.
std::vector<std::string> action_clause(const std::string& statement) {
    std::vector<std::string> w = clean_words(statement);
    auto rest = [&](size_t from) {
        return std::vector<std::string>(w.begin() + static_cast<long>(from), w.end());
    };
    auto t = template_of(statement);
    if (!t) return {};
    if (*t == catalog::Template::T2) {
        for (size_t i = 4; i + 3 < w.size(); ++i) {
            if (w[i] == "with" && w[i + 1] == "the" && w[i + 2] == "ability" &&
                w[i + 3] == "to") {
                return rest(i + 4);
            }
        }
    }
    if (*t == catalog::Template::T3) return rest(6);
    return rest(3);  // T1: after the modal
}

// Maps a statement's process verb to the observable event vocabulary.
bool verb_is_observable(const std::string& verb) {
    static const std::set<std::string> verbs = {
        "inform",  "consent", "withdraw", "collect",  "obtain", "give",
        "present", "request", "share",    "verify",   "issue",  "revoke",
        "store",   "retrieve", "export",  "import",   "generate"};
    return verbs.count(verb) > 0;
}

bool has_digit(const std::string& text) {
    return std::any_of(text.begin(), text.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

// Prepositions that end the direct-object region of a T1 action clause;
// what follows ("via a user interface prompt", "through a notification or
// consent screen") modifies how, not what, and is exempt from the or-join
// atomicity test.
bool is_object_cutoff(const std::string& word) {
    static const std::set<std::string> cutoffs = {"through", "via",    "using",
                                                  "upon",    "before", "after",
                                                  "within",  "during", "by"};
    return cutoffs.count(word) > 0;
}

std::string join(const std::vector<std::string>& words) {
    std::ostringstream out;
    for (size_t i = 0; i < words.size(); ++i) {
        if (i) out << ' ';
        out << words[i];
    }
    return out.str();
}

}  // namespace

std::vector<LintFinding> lint_statement(const catalog::FrEntry& fr,
                                        const catalog::RequirementSet& reqs,
                                        const catalog::Catalog& cat,
                                        const LintOptions& options) {
    std::vector<LintFinding> findings;
    auto add = [&](const std::string& criterion, bool passed, const std::string& detail) {
        findings.push_back(LintFinding{fr.key, criterion, passed, detail});
    };
    const std::vector<std::string> clause = action_clause(fr.statement);
    auto conforming_template = template_of(fr.statement);

    // atomic: one mandate, and for autonomous (T1) statements no "or"-joined
    // objects before the first modifier preposition
    {
        bool passed = true;
        std::string detail = "single traceable element";
        std::string clause_text = " " + join(clause) + " ";
        if (clause_text.find(" and shall ") != std::string::npos) {
            passed = false;
            detail = "statement coordinates two mandates";
        }
        if (passed && conforming_template && *conforming_template == catalog::Template::T1) {
            std::vector<std::string> object_region;
            for (const auto& word : clause) {
                if (is_object_cutoff(word)) break;
                object_region.push_back(word);
            }
            if (std::find(object_region.begin(), object_region.end(), "or") !=
                object_region.end()) {
                passed = false;
                detail = "action clause joins alternative objects with \"or\": \"" +
                         join(object_region) + "\"";
            }
        }
        add("atomic", passed, detail);
    }

    // unique: the key appears once in the set
    {
        int count = 0;
        for (const auto& other : reqs.frs) {
            if (other.key == fr.key) ++count;
        }
        add("unique", count == 1,
            count == 1 ? "key is unique in the set" : "key is declared more than once");
    }

    // feasible / legal: metadata assertions, not computed
    add("feasible", true, "asserted by metadata");
    {
        std::string detail = "asserted by metadata";
        if (!fr.legal_tags.empty()) {
            detail += ": ";
            for (size_t i = 0; i < fr.legal_tags.size(); ++i) {
                if (i) detail += "; ";
                detail += fr.legal_tags[i];
            }
        }
        add("legal", true, detail);
    }

    // clear: the statement follows a known boilerplate
    add("clear", conforming_template.has_value(),
        conforming_template ? "statement follows template " +
                                  catalog::to_string(*conforming_template)
                            : "statement matches no template");

    // precise: bounded length, no vague terms
    {
        bool passed = true;
        std::string detail = "concise and free of vague terms";
        size_t count = words_of(fr.statement).size();
        if (count > options.max_words) {
            passed = false;
            std::ostringstream msg;
            msg << "statement runs " << count << " words (limit " << options.max_words
                << ")";
            detail = msg.str();
        }
        if (passed) {
            std::string low = lower(fr.statement);
            for (const auto& term : options.vague_terms) {
                if (low.find(lower(term)) != std::string::npos) {
                    passed = false;
                    detail = "vague term \"" + term + "\"";
                    break;
                }
            }
        }
        add("precise", passed, detail);
    }

    // verifiable: the process verb maps to an observable event kind, or a
    // measurable threshold appears in the statement or its conditions
    {
        bool passed = false;
        std::string detail;
        if (!clause.empty() && verb_is_observable(clause.front())) {
            passed = true;
            detail = "process verb \"" + clause.front() + "\" is observable";
        } else if (has_digit(fr.statement)) {
            passed = true;
            detail = "statement carries a measurable threshold";
        } else {
            for (const auto* cond : cat.effective_conditions(fr.key)) {
                if (has_digit(cond->text)) {
                    passed = true;
                    detail = "condition " + cond->key + " carries a measurable threshold";
                    break;
                }
                for (const auto& word : clean_words(cond->text)) {
                    if (verb_is_observable(word)) {
                        passed = true;
                        detail = "condition " + cond->key + " references \"" + word + "\"";
                        break;
                    }
                }
                if (passed) break;
            }
        }
        if (!passed) {
            detail = clause.empty()
                         ? "no action clause to observe"
                         : "verb \"" + clause.front() +
                               "\" maps to no observable event and no threshold given";
        }
        add("verifiable", passed, detail);
    }

    // abstract: no implementation-layer terms
    {
        bool passed = true;
        std::string detail = "no implementation terms";
        std::string low = lower(fr.statement);
        for (const auto& term : options.implementation_terms) {
            if (low.find(lower(term)) != std::string::npos) {
                passed = false;
                detail = "implementation term \"" + term + "\"";
                break;
            }
        }
        add("abstract", passed, detail);
    }

    return findings;
}

std::vector<LintFinding> lint_set(const catalog::RequirementSet& reqs,
                                  const catalog::Catalog& cat,
                                  const LintOptions& options) {
    (void)options;
    std::vector<LintFinding> findings;
    auto add = [&](const std::string& criterion, bool passed, const std::string& detail) {
        findings.push_back(LintFinding{"set", criterion, passed, detail});
    };

    // complete: every capability-bearing NFR has at least one linked FR
    {
        std::set<std::string, catalog::KeyLess> uncovered;
        for (const auto& [key, nfr] : cat.nfrs) {
            if (nfr.kind == catalog::NfrKind::Capability) uncovered.insert(key);
        }
        for (const auto& fr : reqs.frs) {
            for (const auto& link : fr.nfr_links) uncovered.erase(link);
        }
        if (uncovered.empty()) {
            add("complete", true, "every capability-bearing NFR is covered");
        } else {
            std::ostringstream detail;
            detail << uncovered.size() << " capability-bearing NFR lack FR coverage: ";
            bool first = true;
            for (const auto& key : uncovered) {
                if (!first) detail << ", ";
                detail << key;
                first = false;
            }
            add("complete", false, detail.str());
        }
    }

    // consistent: no statement both mandates and forbids the same action
    {
        std::set<std::string> mandated, forbidden;
        for (const auto& fr : reqs.frs) {
            auto clause = action_clause(fr.statement);
            if (clause.empty()) continue;
            std::string low = lower(fr.statement);
            bool negative = low.find("shall not") != std::string::npos ||
                            low.find("must not") != std::string::npos;
            (negative ? forbidden : mandated).insert(join(clause));
        }
        std::vector<std::string> conflicts;
        for (const auto& action : mandated) {
            if (forbidden.count(action)) conflicts.push_back(action);
        }
        add("consistent", conflicts.empty(),
            conflicts.empty() ? "no mandate conflicts with a prohibition"
                              : "conflicting mandate: \"" + conflicts.front() + "\"");
    }

    // non-redundant: normalized statement texts are pairwise distinct
    {
        std::map<std::string, std::string> seen;  // normalized text -> key
        std::string duplicate;
        for (const auto& fr : reqs.frs) {
            std::string norm = join(clean_words(fr.statement));
            auto [it, inserted] = seen.emplace(norm, fr.key);
            if (!inserted) {
                duplicate = fr.key + " repeats " + it->second;
                break;
            }
        }
        add("non-redundant", duplicate.empty(),
            duplicate.empty() ? "statement texts are pairwise distinct" : duplicate);
    }

    // modular: statements sharing an NFR link sit contiguously in key order
    {
        std::map<std::string, std::vector<size_t>> positions;
        for (size_t i = 0; i < reqs.frs.size(); ++i) {
            for (const auto& link : reqs.frs[i].nfr_links) {
                positions[link].push_back(i);
            }
        }
        std::string gap;
        for (const auto& [link, where] : positions) {
            for (size_t k = 1; k < where.size(); ++k) {
                if (where[k] != where[k - 1] + 1) {
                    gap = "statements linking " + link + " are interleaved with others";
                    break;
                }
            }
            if (!gap.empty()) break;
        }
        add("modular", gap.empty(),
            gap.empty() ? "related statements are contiguous" : gap);
    }

    // structured: every statement classifies under a template
    {
        std::string stray;
        for (const auto& fr : reqs.frs) {
            if (is_nonconforming(fr.statement)) {
                stray = fr.key + " matches no template";
                break;
            }
        }
        add("structured", stray.empty(),
            stray.empty() ? "all statements follow the boilerplate" : stray);
    }

    // satisfied: traceability links resolve (FR -> NFR, conditions -> FR)
    {
        std::string broken;
        for (const auto& fr : reqs.frs) {
            for (const auto& link : fr.nfr_links) {
                if (!cat.find_nfr(link)) {
                    broken = fr.key + " links unknown " + link;
                    break;
                }
            }
            if (!broken.empty()) break;
        }
        if (broken.empty()) {
            for (const auto& [key, cond] : reqs.conditions) {
                if (!reqs.find(cond.fr_key) && !cat.find_fr(cond.fr_key)) {
                    broken = key + " conditions unknown " + cond.fr_key;
                    break;
                }
            }
        }
        add("satisfied", broken.empty(),
            broken.empty() ? "traceability links resolve" : broken);
    }

    // qualified: every statement carries an NFR link and every updated
    // statement traces to an original
    {
        std::string missing;
        for (const auto& fr : reqs.frs) {
            if (fr.nfr_links.empty()) {
                missing = fr.key + " carries no NFR link";
                break;
            }
            if (fr.trace_of && !cat.find_fr(*fr.trace_of) && !reqs.find(*fr.trace_of)) {
                missing = fr.key + " traces unknown " + *fr.trace_of;
                break;
            }
        }
        add("qualified", missing.empty(),
            missing.empty() ? "traceability coverage achieved" : missing);
    }

    return findings;
}

// ---------------------------------------------------------------------------
// Coverage matrix

Coverage CoverageMatrix::at(const std::string& nfr, const std::string& fr) const {
    auto it = cells.find({nfr, fr});
    return it == cells.end() ? Coverage::Blank : it->second;
}

CoverageMatrix coverage_matrix(const catalog::RequirementSet& reqs,
                               const catalog::Catalog& cat) {
    CoverageMatrix matrix;
    for (const auto& [key, nfr] : cat.nfrs) {
        matrix.nfr_keys.push_back(key);
        matrix.linked_counts[key] = 0;
    }
    for (const auto& fr : reqs.frs) matrix.fr_keys.push_back(fr.key);
    for (const auto& fr : reqs.frs) {
        for (const auto& link : fr.nfr_links) {
            const auto* nfr = cat.find_nfr(link);
            if (!nfr) continue;
            Coverage cell = nfr->kind == catalog::NfrKind::Constraint
                                ? Coverage::ConstraintApplies
                                : Coverage::Linked;
            matrix.cells[{link, fr.key}] = cell;
            if (cell == Coverage::Linked) ++matrix.linked_counts[link];
        }
    }
    return matrix;
}

}  // namespace dicheck::conformance
