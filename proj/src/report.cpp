#include <algorithm>
#include <iomanip>
#include <sstream>

#include "dicheck/report.hpp"

namespace dicheck::report {

namespace {

std::string quoted(const std::string& text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<conformance::Verdict> sorted_verdicts(
    const std::vector<conformance::Verdict>& verdicts) {
    std::vector<conformance::Verdict> out = verdicts;
    std::sort(out.begin(), out.end(),
              [](const conformance::Verdict& a, const conformance::Verdict& b) {
                  return catalog::KeyLess{}(a.fr_key, b.fr_key);
              });
    return out;
}

size_t width_of(const std::vector<std::string>& items, size_t floor_width) {
    size_t width = floor_width;
    for (const auto& item : items) width = std::max(width, item.size());
    return width;
}

std::string pad(const std::string& text, size_t width) {
    std::string out = text;
    out.resize(std::max(width, out.size()), ' ');
    return out;
}

std::string coverage_mark(conformance::Coverage cell) {
    switch (cell) {
        case conformance::Coverage::Linked: return "X";
        case conformance::Coverage::ConstraintApplies: return "c";
        case conformance::Coverage::Blank: return ".";
    }
    return ".";
}

}  // namespace

std::string render_verdicts(const std::vector<conformance::Verdict>& verdicts,
                            Format format) {
    std::ostringstream out;
    auto ordered = sorted_verdicts(verdicts);
    if (format == Format::Machine) {
        for (const auto& verdict : ordered) {
            out << "verdict " << verdict.fr_key << ' '
                << conformance::to_string(verdict.status)
                << " witnesses=" << verdict.witnesses.size() << ' '
                << quoted(verdict.message) << '\n';
            for (const auto& witness : verdict.witnesses) {
                out << "  witness " << conformance::describe(witness) << '\n';
            }
        }
        return out.str();
    }

    std::vector<std::string> keys, statuses;
    for (const auto& verdict : ordered) {
        keys.push_back(verdict.fr_key);
        statuses.push_back(conformance::to_string(verdict.status));
    }
    size_t key_width = width_of(keys, 2);
    size_t status_width = width_of(statuses, 6);
    out << pad("FR", key_width) << "  " << pad("STATUS", status_width) << "  MESSAGE\n";
    for (const auto& verdict : ordered) {
        out << pad(verdict.fr_key, key_width) << "  "
            << pad(conformance::to_string(verdict.status), status_width) << "  "
            << verdict.message << '\n';
        for (const auto& witness : verdict.witnesses) {
            out << pad("", key_width) << "  - " << conformance::describe(witness) << '\n';
        }
    }
    return out.str();
}

std::string render_findings(const std::vector<conformance::LintFinding>& findings,
                            Format format) {
    std::ostringstream out;
    if (format == Format::Machine) {
        for (const auto& finding : findings) {
            out << "lint " << finding.target << ' ' << finding.criterion << ' '
                << (finding.passed ? "pass" : "fail") << ' ' << quoted(finding.detail)
                << '\n';
        }
        return out.str();
    }

    std::vector<std::string> targets, criteria;
    for (const auto& finding : findings) {
        targets.push_back(finding.target);
        criteria.push_back(finding.criterion);
    }
    size_t target_width = width_of(targets, 6);
    size_t criterion_width = width_of(criteria, 9);
    out << pad("TARGET", target_width) << "  " << pad("CRITERION", criterion_width)
        << "  RESULT  DETAIL\n";
    for (const auto& finding : findings) {
        out << pad(finding.target, target_width) << "  "
            << pad(finding.criterion, criterion_width) << "  "
            << pad(finding.passed ? "pass" : "fail", 6) << "  " << finding.detail << '\n';
    }
    return out.str();
}

std::string render_coverage(const conformance::CoverageMatrix& matrix, Format format) {
    std::ostringstream out;
    if (format == Format::Machine) {
        for (const auto& nfr : matrix.nfr_keys) {
            for (const auto& fr : matrix.fr_keys) {
                conformance::Coverage cell = matrix.at(nfr, fr);
                if (cell == conformance::Coverage::Blank) continue;
                out << "cover " << nfr << ' ' << fr << ' '
                    << (cell == conformance::Coverage::Linked ? "linked" : "constraint")
                    << '\n';
            }
        }
        for (const auto& nfr : matrix.nfr_keys) {
            auto it = matrix.linked_counts.find(nfr);
            out << "summary " << nfr << " linked="
                << (it == matrix.linked_counts.end() ? 0 : it->second) << '\n';
        }
        return out.str();
    }

    size_t row_width = width_of(matrix.nfr_keys, 3);
    out << pad("NFR", row_width);
    for (const auto& fr : matrix.fr_keys) out << "  " << fr;
    out << '\n';
    for (const auto& nfr : matrix.nfr_keys) {
        out << pad(nfr, row_width);
        for (const auto& fr : matrix.fr_keys) {
            out << "  " << pad(coverage_mark(matrix.at(nfr, fr)), fr.size());
        }
        out << '\n';
    }
    return out.str();
}

std::string render_report(const conformance::CoverageMatrix& matrix,
                          const std::vector<conformance::Verdict>& verdicts,
                          const std::vector<conformance::LintFinding>& findings,
                          const catalog::Catalog& cat, Format format,
                          const std::string& stamp) {
    std::ostringstream out;

    // Per-NFR verdict summary across its linked FR statements; only NFRs with
    // at least one linked, evaluated FR appear.
    struct Rollup {
        std::string nfr;
        int frs = 0;
        int violated = 0;
        conformance::Status status = conformance::Status::NotApplicable;
    };
    std::vector<Rollup> rollup;
    for (const auto& nfr : matrix.nfr_keys) {
        Rollup row{nfr, 0, 0, conformance::Status::NotApplicable};
        for (const auto& verdict : verdicts) {
            if (matrix.at(nfr, verdict.fr_key) != conformance::Coverage::Linked) continue;
            row.status = row.frs ? conformance::worse(row.status, verdict.status)
                                 : verdict.status;
            ++row.frs;
            if (verdict.status == conformance::Status::Violated) ++row.violated;
        }
        if (row.frs) rollup.push_back(row);
    }

    if (format == Format::Machine) {
        out << "report v1\n";
        if (!stamp.empty()) out << "stamp " << quoted(stamp) << '\n';
        out << "section coverage\n" << render_coverage(matrix, format);
        out << "section verdicts\n" << render_verdicts(verdicts, format);
        for (const auto& row : rollup) {
            out << "nfr " << row.nfr << ' ' << conformance::to_string(row.status)
                << " frs=" << row.frs << " violated=" << row.violated << '\n';
        }
        out << "section lint\n" << render_findings(findings, format);
        out << "end\n";
        return out.str();
    }

    if (!stamp.empty()) out << "Generated: " << stamp << "\n\n";
    out << "Coverage\n--------\n" << render_coverage(matrix, format) << '\n';
    out << "Verdicts\n--------\n" << render_verdicts(verdicts, format) << '\n';
    if (!rollup.empty()) {
        out << "Rollup\n------\n";
        for (const auto& row : rollup) {
            const auto* entry = cat.find_nfr(row.nfr);
            out << row.nfr;
            if (entry) out << " (" << entry->name << ")";
            out << ": " << row.frs << " FR, " << row.violated << " violated, "
                << conformance::to_string(row.status) << '\n';
        }
        out << '\n';
    }
    out << "Lint\n----\n" << render_findings(findings, format);
    return out.str();
}

}  // namespace dicheck::report
