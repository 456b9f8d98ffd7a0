#include "dicheck/specl.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <tuple>

namespace dicheck::specl {

std::vector<Line> tokenize(const std::string& text, Diagnostics& diags) {
    std::vector<Line> lines;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string raw = (eol == std::string::npos) ? text.substr(pos)
                                                     : text.substr(pos, eol - pos);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        ++line_no;

        Line line;
        line.number = line_no;
        size_t i = 0;
        while (i < raw.size()) {
            char c = raw[i];
            if (c == ' ' || c == '\t') {
                ++i;
                continue;
            }
            if (c == '#') break;  // comment to end of line
            int col = static_cast<int>(i) + 1;
            if (c == '"') {
                std::string value;
                size_t j = i + 1;
                bool closed = false;
                while (j < raw.size()) {
                    char d = raw[j];
                    if (d == '\\') {
                        if (j + 1 >= raw.size()) {
                            diags.push_back(error_at(
                                "dangling escape at end of line",
                                {line_no, static_cast<int>(j) + 1, 1}));
                            ++j;
                            break;
                        }
                        char e = raw[j + 1];
                        if (e == '"' || e == '\\') {
                            value.push_back(e);
                        } else {
                            diags.push_back(error_at(
                                std::string("unknown escape \\") + e,
                                {line_no, static_cast<int>(j) + 1, 2}));
                            value.push_back(e);
                        }
                        j += 2;
                        continue;
                    }
                    if (d == '"') {
                        closed = true;
                        ++j;
                        break;
                    }
                    value.push_back(d);
                    ++j;
                }
                if (!closed) {
                    diags.push_back(error_at("unterminated string",
                                             {line_no, col, static_cast<int>(j - i)}));
                }
                line.tokens.push_back(
                    Token{value, true, {line_no, col, static_cast<int>(j - i)}});
                i = j;
                continue;
            }
            size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '#' &&
                   raw[j] != '"') {
                ++j;
            }
            std::string word = raw.substr(i, j - i);
            line.tokens.push_back(
                Token{word, false, {line_no, col, static_cast<int>(j - i)}});
            i = j;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));

        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return lines;
}

std::string quote(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

size_t expect_version_header(const std::vector<Line>& lines, Diagnostics& diags) {
    if (lines.empty()) {
        diags.push_back(error_at("missing `version 1` header", {1, 1, 0}));
        return 0;
    }
    const Line& first = lines.front();
    if (first.tokens.size() != 2 || first.tokens[0].text != "version" ||
        first.tokens[0].quoted) {
        diags.push_back(error_at("missing `version 1` header", first.tokens[0].span));
        return 0;
    }
    if (first.tokens[1].text != "1" || first.tokens[1].quoted) {
        diags.push_back(error_at("unsupported version `" + first.tokens[1].text +
                                     "` (only 1)",
                                 first.tokens[1].span));
        return 1;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Event kinds

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::ConsentGrant: return "consent.grant";
        case EventKind::ConsentWithdraw: return "consent.withdraw";
        case EventKind::Inform: return "inform";
        case EventKind::Request: return "request";
        case EventKind::Present: return "present";
        case EventKind::Issue: return "issue";
        case EventKind::Verify: return "verify";
        case EventKind::Revoke: return "revoke";
        case EventKind::Store: return "store";
        case EventKind::Retrieve: return "retrieve";
        case EventKind::Export: return "export";
        case EventKind::Import: return "import";
        case EventKind::ProofGenerate: return "proof.generate";
        case EventKind::ProofPresent: return "proof.present";
    }
    return "?";
}

std::optional<EventKind> event_kind_from(const std::string& token) {
    static const std::map<std::string, EventKind> table = {
        {"consent.grant", EventKind::ConsentGrant},
        {"consent.withdraw", EventKind::ConsentWithdraw},
        {"inform", EventKind::Inform},
        {"request", EventKind::Request},
        {"present", EventKind::Present},
        {"issue", EventKind::Issue},
        {"verify", EventKind::Verify},
        {"revoke", EventKind::Revoke},
        {"store", EventKind::Store},
        {"retrieve", EventKind::Retrieve},
        {"export", EventKind::Export},
        {"import", EventKind::Import},
        {"proof.generate", EventKind::ProofGenerate},
        {"proof.present", EventKind::ProofPresent},
    };
    auto it = table.find(token);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const std::string* Event::attr(const std::string& key) const {
    auto it = attrs.find(key);
    if (it == attrs.end()) return nullptr;
    return &it->second;
}

// ---------------------------------------------------------------------------
// Model parsing
//
// Grammar (after the version header):
//   model <id>
//   actor <kind> <id> [of=<owner>]
//   service <id> [requires=<data>[,<data>...]]
//   data <id> [class=<credential|personal>]
//   fact <relation> <subject> <object> [to=<actor>]

namespace {

bool split_kv(const std::string& text, std::string& key, std::string& value) {
    size_t eq = text.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    key = text.substr(0, eq);
    value = text.substr(eq + 1);
    return true;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        std::string part = (comma == std::string::npos)
                               ? text.substr(start)
                               : text.substr(start, comma - start);
        if (!part.empty()) parts.push_back(part);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

}  // namespace

ModelParseResult parse_model(const std::string& text) {
    ModelParseResult result;
    Diagnostics& diags = result.diagnostics;
    std::vector<Line> lines = tokenize(text, diags);
    size_t start = expect_version_header(lines, diags);
    if (has_errors(diags)) return result;

    ModelDecls decls;
    for (size_t li = start; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens[0];
        const std::string& kw = head.text;
        auto arity_error = [&](const std::string& expected) {
            diags.push_back(error_at("`" + kw + "` expects " + expected, head.span));
        };
        if (kw == "model") {
            if (line.tokens.size() != 2) {
                arity_error("one id");
                continue;
            }
            if (!decls.model_id.empty()) {
                diags.push_back(error_at("duplicate `model` line", head.span));
                continue;
            }
            decls.model_id = line.tokens[1].text;
        } else if (kw == "actor") {
            if (line.tokens.size() < 3 || line.tokens.size() > 4) {
                arity_error("`actor <kind> <id> [of=<owner>]`");
                continue;
            }
            ActorDecl actor;
            actor.kind = line.tokens[1].text;
            actor.id = line.tokens[2].text;
            actor.span = head.span;
            if (line.tokens.size() == 4) {
                std::string key, value;
                if (!split_kv(line.tokens[3].text, key, value) || key != "of") {
                    diags.push_back(
                        error_at("expected of=<owner>", line.tokens[3].span));
                    continue;
                }
                actor.wallet_of = value;
            }
            decls.actors.push_back(std::move(actor));
        } else if (kw == "service" || kw == "data") {
            if (line.tokens.size() < 2 || line.tokens.size() > 3) {
                arity_error("`" + kw + " <id> [option]`");
                continue;
            }
            ResourceDecl res;
            res.id = line.tokens[1].text;
            res.is_service = (kw == "service");
            res.span = head.span;
            if (line.tokens.size() == 3) {
                std::string key, value;
                if (!split_kv(line.tokens[2].text, key, value)) {
                    diags.push_back(error_at("expected key=value option",
                                             line.tokens[2].span));
                    continue;
                }
                if (res.is_service && key == "requires") {
                    res.requires_data = split_commas(value);
                    res.requires_spans.assign(res.requires_data.size(),
                                              line.tokens[2].span);
                } else if (!res.is_service && key == "class") {
                    res.data_class = value;
                } else {
                    diags.push_back(error_at("unknown option `" + key + "` for `" +
                                                 kw + "`",
                                             line.tokens[2].span));
                    continue;
                }
            }
            decls.resources.push_back(std::move(res));
        } else if (kw == "fact") {
            if (line.tokens.size() < 4 || line.tokens.size() > 5) {
                arity_error("`fact <relation> <subject> <object> [to=<actor>]`");
                continue;
            }
            FactDecl fact;
            fact.relation = line.tokens[1].text;
            fact.subject = line.tokens[2].text;
            fact.object = line.tokens[3].text;
            fact.span = line.tokens[1].span;
            if (line.tokens.size() == 5) {
                std::string key, value;
                if (!split_kv(line.tokens[4].text, key, value) || key != "to") {
                    diags.push_back(error_at("expected to=<actor>", line.tokens[4].span));
                    continue;
                }
                fact.counterparty = value;
            }
            decls.facts.push_back(std::move(fact));
        } else {
            diags.push_back(error_at("unknown keyword `" + kw + "`", head.span));
        }
    }
    if (!has_errors(diags)) result.decls = std::move(decls);
    return result;
}

// ---------------------------------------------------------------------------
// Trace parsing
//
// Grammar:
//   trace <model-id>
//   <seq> <kind> <subject> [<counterparty>] <object> [key="value"|key=value ...]
//
// The counterparty column is present for directed kinds (inform, request,
// present, issue, verify, consent.*, proof.present) and absent for the rest
// (store, retrieve, export, import, revoke, proof.generate).

namespace {

bool kind_is_directed(EventKind kind) {
    switch (kind) {
        case EventKind::ConsentGrant:
        case EventKind::ConsentWithdraw:
        case EventKind::Inform:
        case EventKind::Request:
        case EventKind::Present:
        case EventKind::Issue:
        case EventKind::Verify:
        case EventKind::ProofPresent:
            return true;
        default:
            return false;
    }
}

}  // namespace

TraceParseResult parse_trace(const std::string& text) {
    TraceParseResult result;
    Diagnostics& diags = result.diagnostics;
    std::vector<Line> lines = tokenize(text, diags);
    size_t start = expect_version_header(lines, diags);
    if (has_errors(diags)) return result;

    Trace trace;
    long last_seq = 0;
    bool saw_trace_line = false;
    for (size_t li = start; li < lines.size(); ++li) {
        const Line& line = lines[li];
        const Token& head = line.tokens[0];
        if (head.text == "trace" && !head.quoted) {
            if (line.tokens.size() != 2) {
                diags.push_back(error_at("`trace` expects one model id", head.span));
                continue;
            }
            if (saw_trace_line) {
                diags.push_back(error_at("duplicate `trace` line", head.span));
                continue;
            }
            saw_trace_line = true;
            trace.declared_model = line.tokens[1].text;
            continue;
        }

        // event line
        char* endp = nullptr;
        long seq = std::strtol(head.text.c_str(), &endp, 10);
        if (head.quoted || endp == head.text.c_str() || *endp != '\0' || seq <= 0) {
            diags.push_back(
                error_at("expected event sequence number, got `" + head.text + "`",
                         head.span));
            continue;
        }
        if (line.tokens.size() < 2) {
            diags.push_back(error_at("event line truncated after seq", head.span));
            continue;
        }
        auto kind = event_kind_from(line.tokens[1].text);
        if (!kind) {
            diags.push_back(error_at("unknown event kind `" + line.tokens[1].text + "`",
                                     line.tokens[1].span));
            continue;
        }
        Event event;
        event.seq = seq;
        event.kind = *kind;
        event.span = head.span;

        size_t fixed = kind_is_directed(*kind) ? 4 : 3;  // kind subject [cp] object
        if (line.tokens.size() < 1 + fixed) {
            diags.push_back(error_at(
                "`" + to_string(*kind) + "` expects " +
                    (kind_is_directed(*kind) ? std::string("subject, counterparty, object")
                                             : std::string("subject, object")),
                line.tokens[1].span));
            continue;
        }
        event.subject = line.tokens[2].text;
        if (kind_is_directed(*kind)) {
            event.counterparty = line.tokens[3].text;
            event.object = line.tokens[4].text;
        } else {
            event.object = line.tokens[3].text;
        }
        bool attr_error = false;
        for (size_t ti = 1 + fixed; ti < line.tokens.size(); ++ti) {
            const Token& tok = line.tokens[ti];
            std::string key, value;
            // Quoted values arrive as two tokens when the value is quoted:
            // key= then the string. Handle both key=value and key="value".
            if (!tok.quoted && tok.text.size() > 1 && tok.text.back() == '=' &&
                ti + 1 < line.tokens.size() && line.tokens[ti + 1].quoted) {
                key = tok.text.substr(0, tok.text.size() - 1);
                value = line.tokens[ti + 1].text;
                ++ti;
            } else if (!tok.quoted && split_kv(tok.text, key, value)) {
                // plain token attr
            } else {
                diags.push_back(error_at("expected key=value attr, got `" + tok.text + "`",
                                         tok.span));
                attr_error = true;
                break;
            }
            event.attrs[key] = value;
        }
        if (attr_error) continue;

        if (event.seq <= last_seq) {
            std::ostringstream msg;
            msg << "non-monotone sequence: " << event.seq << " after " << last_seq;
            diags.push_back(error_at(msg.str(), head.span));
            continue;
        }
        last_seq = event.seq;

        if (event.kind == EventKind::Inform && !event.attr("purpose")) {
            diags.push_back(
                error_at("inform requires purpose=", line.tokens[1].span));
            continue;
        }
        trace.events.push_back(std::move(event));
    }
    if (!saw_trace_line) {
        diags.push_back(error_at("missing `trace <model-id>` line", {1, 1, 0}));
    }
    if (!has_errors(diags)) result.trace = std::move(trace);
    return result;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

bool attr_value_needs_quotes(const std::string& value) {
    if (value.empty()) return true;
    return value.find_first_of(" \t\"\\#") != std::string::npos;
}

}  // namespace

std::string render(const Trace& trace) {
    std::ostringstream out;
    out << "version 1\n";
    out << "trace " << trace.declared_model << "\n";
    for (const Event& event : trace.events) {
        out << event.seq << ' ' << to_string(event.kind) << ' ' << event.subject;
        if (event.counterparty) out << ' ' << *event.counterparty;
        out << ' ' << event.object;
        for (const auto& [key, value] : event.attrs) {
            out << ' ' << key << '=';
            if (attr_value_needs_quotes(value)) {
                out << quote(value);
            } else {
                out << value;
            }
        }
        out << '\n';
    }
    return out.str();
}

std::string render(const ModelDecls& decls) {
    std::ostringstream out;
    out << "version 1\n";
    if (!decls.model_id.empty()) out << "model " << decls.model_id << "\n";

    auto actors = decls.actors;
    std::sort(actors.begin(), actors.end(), [](const ActorDecl& a, const ActorDecl& b) {
        return std::tie(a.kind, a.id) < std::tie(b.kind, b.id);
    });
    for (const ActorDecl& actor : actors) {
        out << "actor " << actor.kind << ' ' << actor.id;
        if (actor.wallet_of) out << " of=" << *actor.wallet_of;
        out << '\n';
    }

    auto resources = decls.resources;
    std::sort(resources.begin(), resources.end(),
              [](const ResourceDecl& a, const ResourceDecl& b) {
                  if (a.is_service != b.is_service) return a.is_service;  // services first
                  return a.id < b.id;
              });
    for (const ResourceDecl& res : resources) {
        out << (res.is_service ? "service " : "data ") << res.id;
        if (res.is_service && !res.requires_data.empty()) {
            auto reqs = res.requires_data;
            std::sort(reqs.begin(), reqs.end());
            out << " requires=";
            for (size_t i = 0; i < reqs.size(); ++i) {
                if (i) out << ',';
                out << reqs[i];
            }
        }
        if (!res.is_service && res.data_class) out << " class=" << *res.data_class;
        out << '\n';
    }

    auto facts = decls.facts;
    std::sort(facts.begin(), facts.end(), [](const FactDecl& a, const FactDecl& b) {
        return std::tie(a.relation, a.subject, a.object, a.counterparty) <
               std::tie(b.relation, b.subject, b.object, b.counterparty);
    });
    for (const FactDecl& fact : facts) {
        out << "fact " << fact.relation << ' ' << fact.subject << ' ' << fact.object;
        if (fact.counterparty) out << " to=" << *fact.counterparty;
        out << '\n';
    }
    return out.str();
}

}  // namespace dicheck::specl
