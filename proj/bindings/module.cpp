#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dicheck/catalog.hpp"
#include "dicheck/cli.hpp"
#include "dicheck/conformance.hpp"
#include "dicheck/inference.hpp"
#include "dicheck/model.hpp"
#include "dicheck/readability.hpp"
#include "dicheck/simulator.hpp"
#include "dicheck/specl.hpp"

namespace py = pybind11;
using namespace dicheck;

namespace {

model::SystemModel model_from_text(const std::string& text) {
    if (text.empty()) return model::canonical_model();
    auto parsed = specl::parse_model(text);
    if (!parsed.decls) {
        throw py::value_error(format_diagnostics(parsed.diagnostics));
    }
    auto built = model::build_model(*parsed.decls);
    if (!built.model) {
        throw py::value_error(format_diagnostics(built.diagnostics));
    }
    return *built.model;
}

specl::Trace trace_from_text(const std::string& text) {
    auto parsed = specl::parse_trace(text);
    if (!parsed.trace) {
        throw py::value_error(format_diagnostics(parsed.diagnostics));
    }
    return *parsed.trace;
}

inference::FactSet saturate_model(const model::SystemModel& m) {
    return inference::saturate(inference::FactSet{m.declared_facts},
                               inference::default_axioms(),
                               inference::Universe::from_model(m))
        .facts;
}

std::vector<std::string> validate_model_text(const std::string& text) {
    std::vector<std::string> out;
    auto parsed = specl::parse_model(text);
    for (const auto& diagnostic : parsed.diagnostics) {
        out.push_back(format_diagnostic(diagnostic));
    }
    if (!parsed.decls) return out;
    auto built = model::build_model(*parsed.decls);
    for (const auto& diagnostic : built.diagnostics) {
        out.push_back(format_diagnostic(diagnostic));
    }
    if (!built.model) return out;
    for (const auto& diagnostic : model::validate_model(*built.model)) {
        out.push_back(format_diagnostic(diagnostic));
    }
    return out;
}

std::vector<std::string> derived_facts(const std::string& model_text) {
    auto m = model_from_text(model_text);
    inference::FactSet base{m.declared_facts};
    std::vector<std::string> out;
    for (const auto& fact : saturate_model(m)) {
        if (base.contains(fact)) continue;
        out.push_back(model::to_string(fact));
    }
    return out;
}

py::object prove(const std::string& goal, const std::string& model_text) {
    auto m = model_from_text(model_text);
    std::istringstream in(goal);
    std::string relation_token, subject, object, extra;
    in >> relation_token >> subject >> object;
    auto relation = model::relation_from(relation_token);
    if (!relation || subject.empty() || object.empty() || (in >> extra)) {
        throw py::value_error("goal must be \"<relation> <subject> <object>\"");
    }
    if (!m.find_actor(subject)) {
        throw py::value_error("goal names undeclared actor " + subject);
    }
    if (!m.find_resource(object)) {
        throw py::value_error("goal names undeclared resource " + object);
    }
    auto proof = inference::derive(model::Fact{*relation, subject, object, std::nullopt},
                                   inference::FactSet{m.declared_facts},
                                   inference::default_axioms(),
                                   inference::Universe::from_model(m));
    if (!proof) return py::none();
    return py::str(inference::render(*proof));
}

std::vector<std::string> scenario_ids() {
    std::vector<std::string> out;
    for (const auto& scenario : simulator::builtin_scenarios()) out.push_back(scenario.id);
    return out;
}

std::vector<std::string> violation_ids() {
    std::vector<std::string> out;
    for (auto kind : simulator::all_violation_kinds()) {
        out.push_back(simulator::to_string(kind));
    }
    return out;
}

std::string simulate(const std::string& scenario_id, unsigned seed,
                     const std::string& inject, const std::string& model_text) {
    const auto* scenario = simulator::find_scenario(scenario_id);
    if (!scenario) throw py::value_error("unknown scenario " + scenario_id);
    auto m = model_from_text(model_text);
    auto run = simulator::run_scenario(m, *scenario, seed);
    if (!run.trace) throw py::value_error(format_diagnostics(run.diagnostics));
    specl::Trace trace = std::move(*run.trace);
    if (!inject.empty()) {
        auto kind = simulator::violation_kind_from(inject);
        if (!kind) throw py::value_error("unknown violation " + inject);
        auto injected = simulator::inject_violation(trace, *kind);
        if (!injected.trace) {
            throw py::value_error(format_diagnostics(injected.diagnostics));
        }
        trace = std::move(*injected.trace);
    }
    return specl::render(trace);
}

std::vector<py::dict> check(const std::vector<std::string>& trace_texts,
                            const std::string& model_text) {
    auto m = model_from_text(model_text);
    auto saturated = saturate_model(m);
    std::vector<std::vector<conformance::Verdict>> per_trace;
    for (const auto& text : trace_texts) {
        auto trace = trace_from_text(text);
        if (trace.declared_model != m.id) {
            throw py::value_error("trace declares model " + trace.declared_model +
                                  " but is checked against " + m.id);
        }
        per_trace.push_back(conformance::check_consent_suite(m, saturated, &trace));
    }
    if (per_trace.empty()) {
        per_trace.push_back(conformance::check_consent_suite(m, saturated, nullptr));
    }
    std::vector<py::dict> out;
    for (const auto& verdict : conformance::aggregate(per_trace)) {
        py::dict entry;
        entry["fr"] = verdict.fr_key;
        entry["status"] = conformance::to_string(verdict.status);
        entry["message"] = verdict.message;
        std::vector<std::string> witnesses;
        for (const auto& witness : verdict.witnesses) {
            witnesses.push_back(conformance::describe(witness));
        }
        entry["witnesses"] = witnesses;
        out.push_back(std::move(entry));
    }
    return out;
}

catalog::RequirementSet requirements_from(const std::string& text,
                                          const std::string& builtin) {
    if (!text.empty()) {
        auto parsed = catalog::parse_requirements(text, catalog::builtin_catalog());
        if (!parsed.requirements) {
            throw py::value_error(format_diagnostics(parsed.diagnostics));
        }
        return *parsed.requirements;
    }
    if (builtin == "original") return catalog::builtin_original_requirements();
    if (builtin == "updated") return catalog::builtin_requirements();
    throw py::value_error("builtin must be \"original\" or \"updated\"");
}

std::vector<py::dict> lint(const std::string& text, const std::string& builtin) {
    auto reqs = requirements_from(text, builtin);
    const auto& cat = catalog::builtin_catalog();
    std::vector<conformance::LintFinding> findings;
    for (const auto& fr : reqs.frs) {
        auto per = conformance::lint_statement(fr, reqs, cat, {});
        findings.insert(findings.end(), per.begin(), per.end());
    }
    auto set_level = conformance::lint_set(reqs, cat, {});
    findings.insert(findings.end(), set_level.begin(), set_level.end());

    std::vector<py::dict> out;
    for (const auto& finding : findings) {
        py::dict entry;
        entry["target"] = finding.target;
        entry["criterion"] = finding.criterion;
        entry["passed"] = finding.passed;
        entry["detail"] = finding.detail;
        out.push_back(std::move(entry));
    }
    return out;
}

py::dict coverage(const std::string& builtin) {
    auto matrix = conformance::coverage_matrix(requirements_from("", builtin),
                                               catalog::builtin_catalog());
    py::dict cells;
    for (const auto& nfr : matrix.nfr_keys) {
        py::dict row;
        for (const auto& fr : matrix.fr_keys) {
            switch (matrix.at(nfr, fr)) {
                case conformance::Coverage::Linked: row[py::str(fr)] = "linked"; break;
                case conformance::Coverage::ConstraintApplies:
                    row[py::str(fr)] = "constraint";
                    break;
                case conformance::Coverage::Blank: break;
            }
        }
        cells[py::str(nfr)] = std::move(row);
    }
    py::dict out;
    out["nfr_keys"] = matrix.nfr_keys;
    out["fr_keys"] = matrix.fr_keys;
    out["cells"] = std::move(cells);
    out["linked_counts"] = matrix.linked_counts;
    return out;
}

py::object grade(const std::string& text) {
    auto value = readability::grade(text);
    if (!value) return py::none();
    return py::float_(*value);
}

py::tuple run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_dicheck, m) {
    m.doc() = "Conformance engine for decentralized-identity functional requirements";

    m.def("canonical_model", &model::canonical_model_text,
          "Document text of the built-in five-actor model");
    m.def("validate_model", &validate_model_text, py::arg("text"),
          "Diagnostics for a model document; empty means clean");
    m.def("derived_facts", &derived_facts, py::arg("model") = "",
          "Facts the axioms add to the declared base, in canonical order");
    m.def("prove", &prove, py::arg("goal"), py::arg("model") = "",
          "Minimal-depth derivation of \"<relation> <subject> <object>\", or None");
    m.def("scenarios", &scenario_ids, "Identifiers of the built-in scenarios");
    m.def("violations", &violation_ids, "Identifiers of the violation injections");
    m.def("simulate", &simulate, py::arg("scenario"), py::arg("seed") = 1,
          py::arg("inject") = "", py::arg("model") = "",
          "Trace document for a scenario, optionally with an injected violation");
    m.def("check", &check, py::arg("traces"), py::arg("model") = "",
          "Consent-suite verdicts, aggregated worst-status-wins across traces");
    m.def("lint", &lint, py::arg("text") = "", py::arg("builtin") = "updated",
          "Statement and set lint findings for a requirement document");
    m.def("coverage", &coverage, py::arg("builtin") = "updated",
          "Requirement-to-quality coverage matrix");
    m.def("grade", &grade, py::arg("text"),
          "Flesch-Kincaid grade of a text, or None when it has no words");
    m.def("passes_grade8", &readability::passes_grade8, py::arg("grade"),
          "Inclusive grade-8 readability threshold");
    m.def("run_cli", &run_cli, py::arg("args"),
          "Run a command-line invocation; returns (exit_code, stdout, stderr)");
}
