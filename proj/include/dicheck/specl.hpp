#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dicheck/diagnostics.hpp"

namespace dicheck::specl {

// ---------------------------------------------------------------------------
// Model declarations (unresolved; model::build_model resolves them)

struct ActorDecl {
    std::string kind;  // owner|verifier|issuer|system|wallet|generic (aliases allowed)
    std::string id;
    std::optional<std::string> wallet_of;  // wallet pairing: of=<owner id>
    SourceSpan span;
};

struct ResourceDecl {
    std::string id;
    bool is_service = false;
    std::vector<std::string> requires_data;        // services only
    std::optional<std::string> data_class;         // data only: credential|personal
    SourceSpan span;
    std::vector<SourceSpan> requires_spans;
};

struct FactDecl {
    std::string relation;
    std::string subject;
    std::string object;
    std::optional<std::string> counterparty;
    SourceSpan span;
};

struct ModelDecls {
    std::string model_id;
    std::vector<ActorDecl> actors;
    std::vector<ResourceDecl> resources;
    std::vector<FactDecl> facts;
};

struct ModelParseResult {
    std::optional<ModelDecls> decls;
    Diagnostics diagnostics;
};

// ---------------------------------------------------------------------------
// Traces

enum class EventKind {
    ConsentGrant,
    ConsentWithdraw,
    Inform,
    Request,
    Present,
    Issue,
    Verify,
    Revoke,
    Store,
    Retrieve,
    Export,
    Import,
    ProofGenerate,
    ProofPresent,
};

std::string to_string(EventKind kind);
std::optional<EventKind> event_kind_from(const std::string& token);

struct Event {
    long seq = 0;
    EventKind kind = EventKind::Request;
    std::string subject;
    std::optional<std::string> counterparty;
    std::string object;
    std::map<std::string, std::string> attrs;
    SourceSpan span;

    const std::string* attr(const std::string& key) const;
};

struct Trace {
    std::string declared_model;
    std::vector<Event> events;  // strictly increasing seq
};

struct TraceParseResult {
    std::optional<Trace> trace;
    Diagnostics diagnostics;
};

// ---------------------------------------------------------------------------
// Operations

/// Parses a `.dimodel` document. Total: any byte sequence yields either
/// declarations or diagnostics with spans, never both empty.
ModelParseResult parse_model(const std::string& text);

/// Parses a `.ditrace` document; enforces the version header, monotone
/// sequence numbers and kind-specific attribute requirements.
TraceParseResult parse_trace(const std::string& text);

/// Canonical `.ditrace` rendering: events in sequence order, attrs sorted by
/// key, LF line endings. parse(render(t)) is structurally equal to t.
std::string render(const Trace& trace);

/// Canonical rendering of parsed model declarations: version and model
/// header, then actors, resources and facts, each block sorted.
std::string render(const ModelDecls& decls);

// Shared low-level lexer for the line-oriented formats. Exposed so the
// catalog-document parser reuses identical tokenization and escaping rules.
struct Token {
    std::string text;
    bool quoted = false;
    SourceSpan span;
};

struct Line {
    std::vector<Token> tokens;
    int number = 0;
};

/// Splits text into comment-stripped token lines. Emits diagnostics for
/// unterminated strings and bad escapes but always returns the readable part.
std::vector<Line> tokenize(const std::string& text, Diagnostics& diags);

/// Quotes a string for document output, escaping `"` and `\`.
std::string quote(const std::string& raw);

/// Checks the `version 1` header; reports an error otherwise. Returns the
/// index of the first line after the header.
size_t expect_version_header(const std::vector<Line>& lines, Diagnostics& diags);

}  // namespace dicheck::specl
