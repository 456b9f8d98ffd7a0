#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dicheck/catalog.hpp"
#include "dicheck/cli.hpp"
#include "dicheck/conformance.hpp"
#include "dicheck/inference.hpp"
#include "dicheck/model.hpp"
#include "dicheck/report.hpp"
#include "dicheck/simulator.hpp"
#include "dicheck/specl.hpp"

namespace dicheck::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_diagnostics(std::ostream& err, const std::string& path,
                       const Diagnostics& diagnostics) {
    for (const auto& diagnostic : diagnostics) {
        err << path << ':' << format_diagnostic(diagnostic) << '\n';
    }
}

int emit(const std::string& content, const std::string& out_path, std::ostream& out,
         std::ostream& err) {
    if (out_path.empty()) {
        out << content;
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write " << out_path << '\n';
        return kExitUsage;
    }
    file << content;
    return kExitOk;
}

report::Format format_from(const std::string& name) {
    return name == "machine" ? report::Format::Machine : report::Format::Human;
}

std::string now_stamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

/// Loads and builds a model, or the built-in canonical model when `path` is
/// empty. Returns nullopt after printing diagnostics on failure.
std::optional<model::SystemModel> load_model(const std::string& path, std::ostream& err) {
    if (path.empty()) return model::canonical_model();
    auto text = read_file(path);
    if (!text) {
        err << "error: cannot read " << path << '\n';
        return std::nullopt;
    }
    auto parsed = specl::parse_model(*text);
    print_diagnostics(err, path, parsed.diagnostics);
    if (!parsed.decls) return std::nullopt;
    auto built = model::build_model(*parsed.decls);
    print_diagnostics(err, path, built.diagnostics);
    if (!built.model) return std::nullopt;
    return std::move(built.model);
}

std::optional<specl::Trace> load_trace(const std::string& path, std::ostream& err) {
    auto text = read_file(path);
    if (!text) {
        err << "error: cannot read " << path << '\n';
        return std::nullopt;
    }
    auto parsed = specl::parse_trace(*text);
    print_diagnostics(err, path, parsed.diagnostics);
    if (!parsed.trace) return std::nullopt;
    return std::move(parsed.trace);
}

/// Referential checks a trace can only get against its model: the declared
/// model id, and that every actor and resource the events mention exists.
Diagnostics cross_check(const specl::Trace& trace, const model::SystemModel& model) {
    Diagnostics diagnostics;
    if (trace.declared_model != model.id) {
        diagnostics.push_back(error_at("trace declares model " + trace.declared_model +
                                           " but is checked against " + model.id,
                                       SourceSpan{1, 1, 0}));
    }
    for (const auto& event : trace.events) {
        if (!model.find_actor(event.subject)) {
            diagnostics.push_back(
                error_at("unknown actor " + event.subject, event.span));
        }
        if (event.counterparty && !model.find_actor(*event.counterparty)) {
            diagnostics.push_back(
                error_at("unknown actor " + *event.counterparty, event.span));
        }
        if (!model.find_resource(event.object)) {
            diagnostics.push_back(
                error_at("unknown resource " + event.object, event.span));
        }
    }
    return diagnostics;
}

struct SuiteRun {
    std::vector<conformance::Verdict> verdicts;
    bool ok = false;
};

/// Saturates the model and runs the consent suite once per trace (or once
/// trace-free), aggregating worst-status-wins.
SuiteRun run_suite(const model::SystemModel& model,
                   const std::vector<std::string>& trace_paths, std::ostream& err) {
    SuiteRun run;
    inference::FactSet base{model.declared_facts};
    auto universe = inference::Universe::from_model(model);
    auto saturated = inference::saturate(base, inference::default_axioms(), universe);

    std::vector<std::vector<conformance::Verdict>> per_trace;
    for (const auto& path : trace_paths) {
        auto trace = load_trace(path, err);
        if (!trace) return run;
        auto referential = cross_check(*trace, model);
        print_diagnostics(err, path, referential);
        if (has_errors(referential)) return run;
        per_trace.push_back(
            conformance::check_consent_suite(model, saturated.facts, &*trace));
    }
    if (per_trace.empty()) {
        per_trace.push_back(conformance::check_consent_suite(model, saturated.facts, nullptr));
    }
    run.verdicts = conformance::aggregate(per_trace);
    run.ok = true;
    return run;
}

bool any_violated(const std::vector<conformance::Verdict>& verdicts) {
    for (const auto& verdict : verdicts) {
        if (verdict.status == conformance::Status::Violated) return true;
    }
    return false;
}

// --- command bodies ---------------------------------------------------------

int cmd_validate(const std::string& model_path, const std::vector<std::string>& trace_paths,
                 std::ostream& out, std::ostream& err) {
    bool errors = false;
    bool warnings = false;
    auto note = [&](const Diagnostics& diagnostics) {
        for (const auto& diagnostic : diagnostics) {
            (diagnostic.severity == Severity::Error ? errors : warnings) = true;
        }
    };

    std::ostringstream summary;
    std::optional<model::SystemModel> built;
    auto text = read_file(model_path);
    if (!text) {
        err << "error: cannot read " << model_path << '\n';
        return kExitUsage;
    }
    auto parsed = specl::parse_model(*text);
    print_diagnostics(err, model_path, parsed.diagnostics);
    note(parsed.diagnostics);
    if (parsed.decls) {
        auto result = model::build_model(*parsed.decls);
        print_diagnostics(err, model_path, result.diagnostics);
        note(result.diagnostics);
        if (result.model) {
            auto more = model::validate_model(*result.model);
            print_diagnostics(err, model_path, more);
            note(more);
            built = std::move(result.model);
            summary << "model " << built->id << ": " << built->actors.size() << " actors, "
                    << built->resources.size() << " resources, "
                    << built->declared_facts.size() << " facts\n";
        }
    }

    for (const auto& path : trace_paths) {
        auto trace_text = read_file(path);
        if (!trace_text) {
            err << "error: cannot read " << path << '\n';
            return kExitUsage;
        }
        auto trace = specl::parse_trace(*trace_text);
        print_diagnostics(err, path, trace.diagnostics);
        note(trace.diagnostics);
        if (trace.trace && built) {
            auto referential = cross_check(*trace.trace, *built);
            print_diagnostics(err, path, referential);
            note(referential);
        }
        if (trace.trace) {
            summary << "trace " << path << ": " << trace.trace->events.size()
                    << " events\n";
        }
    }

    if (errors) return kExitUsage;
    out << summary.str();
    return warnings ? kExitFindings : kExitOk;
}

int cmd_infer(const std::string& model_path, const std::string& goal,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    auto built = load_model(model_path, err);
    if (!built) return kExitUsage;
    inference::FactSet base{built->declared_facts};
    auto universe = inference::Universe::from_model(*built);
    auto rules = inference::default_axioms();

    if (!goal.empty()) {
        std::istringstream in(goal);
        std::string relation_token, subject, object, extra;
        in >> relation_token >> subject >> object;
        auto relation = model::relation_from(relation_token);
        if (!relation || subject.empty() || object.empty() || (in >> extra)) {
            err << "error: goal must be \"<relation> <subject> <object>\"\n";
            return kExitUsage;
        }
        if (!built->find_actor(subject)) {
            err << "error: goal names undeclared actor " << subject << '\n';
            return kExitUsage;
        }
        if (!built->find_resource(object)) {
            err << "error: goal names undeclared resource " << object << '\n';
            return kExitUsage;
        }
        model::Fact fact{*relation, subject, object, std::nullopt};
        auto proof = inference::derive(fact, base, rules, universe);
        if (!proof) {
            out << "not derivable: " << model::to_string(fact) << '\n';
            return kExitFindings;
        }
        return emit(inference::render(*proof), out_path, out, err);
    }

    auto result = inference::saturate(base, rules, universe);
    print_diagnostics(err, "<rules>", result.diagnostics);
    std::ostringstream body;
    for (const auto& fact : result.facts) {
        if (base.contains(fact)) continue;
        body << model::to_string(fact) << '\n';
    }
    return emit(body.str(), out_path, out, err);
}

int cmd_simulate(const std::string& scenario_id, const std::string& model_path,
                 unsigned seed, const std::string& inject, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    const auto* scenario = simulator::find_scenario(scenario_id);
    if (!scenario) {
        err << "error: unknown scenario " << scenario_id << " (known:";
        for (const auto& known : simulator::builtin_scenarios()) err << ' ' << known.id;
        err << ")\n";
        return kExitUsage;
    }
    auto built = load_model(model_path, err);
    if (!built) return kExitUsage;

    auto run = simulator::run_scenario(*built, *scenario, seed);
    print_diagnostics(err, scenario_id, run.diagnostics);
    if (!run.trace) return kExitUsage;
    specl::Trace trace = std::move(*run.trace);

    if (!inject.empty()) {
        auto kind = simulator::violation_kind_from(inject);
        if (!kind) {
            err << "error: unknown violation " << inject << " (known:";
            for (auto known : simulator::all_violation_kinds()) {
                err << ' ' << simulator::to_string(known);
            }
            err << ")\n";
            return kExitUsage;
        }
        auto injected = simulator::inject_violation(trace, *kind);
        print_diagnostics(err, scenario_id, injected.diagnostics);
        if (!injected.trace) return kExitUsage;
        trace = std::move(*injected.trace);
    }

    return emit(specl::render(trace), out_path, out, err);
}

int cmd_check(const std::string& model_path, const std::vector<std::string>& trace_paths,
              const std::string& format, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
    auto built = load_model(model_path, err);
    if (!built) return kExitUsage;
    auto run = run_suite(*built, trace_paths, err);
    if (!run.ok) return kExitUsage;
    int code = emit(report::render_verdicts(run.verdicts, format_from(format)), out_path,
                    out, err);
    if (code != kExitOk) return code;
    return any_violated(run.verdicts) ? kExitFindings : kExitOk;
}

struct RequirementLoad {
    std::optional<catalog::RequirementSet> reqs;
};

RequirementLoad load_requirements(const std::vector<std::string>& paths,
                                  const std::string& which_builtin, std::ostream& err) {
    if (paths.empty()) {
        if (which_builtin == "original") {
            return {catalog::builtin_original_requirements()};
        }
        return {catalog::builtin_requirements()};
    }
    catalog::RequirementSet merged;
    for (const auto& path : paths) {
        auto text = read_file(path);
        if (!text) {
            err << "error: cannot read " << path << '\n';
            return {};
        }
        auto parsed = catalog::parse_requirements(*text, catalog::builtin_catalog());
        print_diagnostics(err, path, parsed.diagnostics);
        if (!parsed.requirements) return {};
        for (auto& fr : parsed.requirements->frs) merged.frs.push_back(std::move(fr));
        for (auto& [key, cond] : parsed.requirements->conditions) {
            merged.conditions.emplace(key, std::move(cond));
        }
    }
    return {std::move(merged)};
}

std::vector<conformance::LintFinding> lint_all(const catalog::RequirementSet& reqs) {
    const auto& cat = catalog::builtin_catalog();
    std::vector<conformance::LintFinding> findings;
    for (const auto& fr : reqs.frs) {
        auto per = conformance::lint_statement(fr, reqs, cat, {});
        findings.insert(findings.end(), per.begin(), per.end());
    }
    auto set_level = conformance::lint_set(reqs, cat, {});
    findings.insert(findings.end(), set_level.begin(), set_level.end());
    return findings;
}

/// `complete` failures are advisory unless --strict: the consent slice is not
/// expected to cover unrelated capability NFRs.
bool lint_failed(const std::vector<conformance::LintFinding>& findings, bool strict) {
    for (const auto& finding : findings) {
        if (finding.passed) continue;
        if (!strict && finding.target == "set" && finding.criterion == "complete") continue;
        return true;
    }
    return false;
}

int cmd_lint(const std::vector<std::string>& paths, const std::string& which_builtin,
             bool strict, const std::string& format, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
    auto load = load_requirements(paths, which_builtin, err);
    if (!load.reqs) return kExitUsage;
    auto findings = lint_all(*load.reqs);
    int code = emit(report::render_findings(findings, format_from(format)), out_path, out,
                    err);
    if (code != kExitOk) return code;
    return lint_failed(findings, strict) ? kExitFindings : kExitOk;
}

int cmd_report(const std::string& model_path, const std::vector<std::string>& trace_paths,
               const std::string& which_builtin, bool timestamps, const std::string& format,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
    auto built = load_model(model_path, err);
    if (!built) return kExitUsage;
    auto run = run_suite(*built, trace_paths, err);
    if (!run.ok) return kExitUsage;

    auto load = load_requirements({}, which_builtin, err);
    const auto& cat = catalog::builtin_catalog();
    auto findings = lint_all(*load.reqs);
    auto matrix = conformance::coverage_matrix(*load.reqs, cat);
    std::string stamp = timestamps ? now_stamp() : "";

    int code = emit(report::render_report(matrix, run.verdicts, findings, cat,
                                          format_from(format), stamp),
                    out_path, out, err);
    if (code != kExitOk) return code;
    if (any_violated(run.verdicts) || lint_failed(findings, false)) return kExitFindings;
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conformance engine for decentralized-identity functional requirements"};
    app.name("dicheck");
    app.require_subcommand(1);

    std::string format = "human";
    std::string out_path;
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"human", "machine"}))
            ->capture_default_str();
        cmd->add_option("--out", out_path, "Write output to a file instead of stdout");
    };

    std::string model_path;
    std::vector<std::string> trace_paths;
    std::string goal;
    std::string scenario_id;
    unsigned seed = 1;
    std::string inject;
    std::vector<std::string> req_paths;
    std::string which_builtin = "updated";
    bool strict = false;
    bool timestamps = false;

    auto* validate = app.add_subcommand("validate", "Parse and cross-check model and trace files");
    validate->add_option("model", model_path, "Model file (.dimodel)")->required();
    validate->add_option("traces", trace_paths, "Trace files (.ditrace)");

    auto* infer = app.add_subcommand("infer", "Saturate a model or derive one goal fact");
    infer->add_option("--model", model_path, "Model file (default: built-in canonical model)");
    infer->add_option("--goal", goal, "Goal fact \"<relation> <subject> <object>\"");
    add_output_flags(infer);

    auto* simulate = app.add_subcommand("simulate", "Emit a scenario trace");
    simulate->add_option("scenario", scenario_id, "Scenario id")->required();
    simulate->add_option("--model", model_path, "Model file (default: built-in canonical model)");
    simulate->add_option("--seed", seed, "Seed for instance identifiers")
        ->capture_default_str();
    simulate->add_option("--inject", inject, "Inject a violation into the emitted trace");
    add_output_flags(simulate);

    auto* check = app.add_subcommand("check", "Evaluate the consent suite against traces");
    check->add_option("traces", trace_paths, "Trace files (.ditrace)");
    check->add_option("--model", model_path, "Model file (default: built-in canonical model)");
    add_output_flags(check);

    auto* lint = app.add_subcommand("lint", "Apply the statement and set quality criteria");
    lint->add_option("requirements", req_paths, "Requirement files (catalog-document form)");
    lint->add_option("--builtin", which_builtin, "Built-in set when no files are given")
        ->check(CLI::IsMember({"original", "updated"}))
        ->capture_default_str();
    lint->add_flag("--strict", strict, "Fail on advisory findings too");
    add_output_flags(lint);

    auto* rep = app.add_subcommand("report", "Coverage matrix, verdicts and lint in one document");
    rep->add_option("traces", trace_paths, "Trace files (.ditrace)");
    rep->add_option("--model", model_path, "Model file (default: built-in canonical model)");
    rep->add_option("--builtin", which_builtin, "Built-in requirement set")
        ->check(CLI::IsMember({"original", "updated"}))
        ->capture_default_str();
    rep->add_flag("--timestamps", timestamps, "Stamp the report with the generation time");
    add_output_flags(rep);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    if (app.got_subcommand(validate)) {
        return cmd_validate(model_path, trace_paths, out, err);
    }
    if (app.got_subcommand(infer)) {
        return cmd_infer(model_path, goal, out_path, out, err);
    }
    if (app.got_subcommand(simulate)) {
        return cmd_simulate(scenario_id, model_path, seed, inject, out_path, out, err);
    }
    if (app.got_subcommand(check)) {
        return cmd_check(model_path, trace_paths, format, out_path, out, err);
    }
    if (app.got_subcommand(lint)) {
        return cmd_lint(req_paths, which_builtin, strict, format, out_path, out, err);
    }
    return cmd_report(model_path, trace_paths, which_builtin, timestamps, format, out_path,
                      out, err);
}

}  // namespace dicheck::cli
