#include "restlint/checks.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace restlint {

std::string_view to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Violation: return "violation";
        case Outcome::Advisory: return "advisory";
        case Outcome::NotApplicable: return "not_applicable";
        case Outcome::NeedsDynamic: return "needs_dynamic";
    }
    return "?";
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "?";
}

std::string FindingLocation::to_display() const {
    if (is_exchange) return "exchange[" + std::to_string(exchange_index) + "]";
    return source.to_display();
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_json_media(std::string_view type) {
    const std::string t = lower(type);
    const std::string base = t.substr(0, t.find(';'));
    if (base == "application/json") return true;
    return base.size() > 5 && base.compare(base.size() - 5, 5, "+json") == 0;
}

std::string media_family(std::string_view type) {
    const std::string t = lower(type);
    const std::string base = t.substr(0, t.find(';'));
    if (is_json_media(base)) return "json";
    if (base.find("xml") != std::string::npos) return "xml";
    return base;
}

struct ResolvedExchange {
    const ExchangeRecord* rec = nullptr;
    const Operation* op = nullptr;
    std::string path;
};

struct EvalContext {
    CanonicalApiModel model;
    const RuleCatalog* catalog = nullptr;
    const EngineConfig* config = nullptr;
    const Lexicon* lexicon = nullptr;
    std::vector<std::vector<SegmentAnalysis>> analyses;
    std::vector<ResolvedExchange> exchanges;
    bool have_exchanges = false;
    std::set<std::string> standard_headers;
    std::string declared_error_majority_fp;
    std::set<std::string> declared_error_fps;

    const SegmentAnalysis& analysis(std::size_t t, std::size_t k) const { return analyses[t][k]; }

    std::optional<Archetype> final_archetype(std::size_t t) const {
        const auto& segs = model.resources[t].segments;
        if (segs.empty()) return std::nullopt;
        return segs.back().archetype;
    }

    bool is_override_header(const std::string& name) const {
        const std::string n = lower(name);
        for (const auto& h : config->method_override_headers) {
            if (lower(h) == n) return true;
        }
        return false;
    }

    bool is_error_shape(const SchemaShape& shape) const {
        if (shape.kind != SchemaShape::Kind::Object) return false;
        for (const auto& [name, child] : shape.properties) {
            const std::string n = lower(name);
            for (const auto& marker : config->error_markers) {
                if (lower(marker) == n) return true;
            }
        }
        return false;
    }

    SchemaShape strip_envelopes(SchemaShape shape) const {
        for (int guard = 0; guard < 8; ++guard) {
            if (shape.kind == SchemaShape::Kind::Object && shape.properties.size() == 1) {
                const std::string n = lower(shape.properties.front().first);
                bool envelope = false;
                for (const auto& e : config->envelope_members) {
                    if (lower(e) == n) envelope = true;
                }
                if (envelope) {
                    shape = shape.properties.front().second;
                    continue;
                }
            }
            if (shape.kind == SchemaShape::Kind::Array && !shape.items.empty()) {
                shape = shape.items.front();
                continue;
            }
            break;
        }
        return shape;
    }
};

struct CheckResult {
    std::vector<Finding> findings;
    std::size_t subjects = 0;
    std::size_t evidence = 0;
    bool not_applicable = false;
    std::string note;
};

Severity violation_severity(const Rule& rule) {
    if (rule.rfc2119_level == Rfc2119::May) return Severity::Info;
    switch (rule.importance) {
        case Importance::High: return Severity::Error;
        case Importance::Medium: return Severity::Warning;
        case Importance::Low: return Severity::Info;
    }
    return Severity::Info;
}

Finding source_finding(const Rule& rule, Severity sev, const SourceLocation& loc, std::string message,
                       std::string evidence, std::string remediation) {
    Finding f;
    f.rule_id = rule.id;
    f.severity = sev;
    f.location.is_exchange = false;
    f.location.source = loc;
    f.message = std::move(message);
    f.evidence = std::move(evidence);
    f.remediation = std::move(remediation);
    return f;
}

Finding exchange_finding(const Rule& rule, Severity sev, std::size_t index, std::string message,
                         std::string evidence, std::string remediation) {
    Finding f;
    f.rule_id = rule.id;
    f.severity = sev;
    f.location.is_exchange = true;
    f.location.exchange_index = index;
    f.message = std::move(message);
    f.evidence = std::move(evidence);
    f.remediation = std::move(remediation);
    return f;
}

SourceLocation segment_location(const UriTemplate& tpl, std::size_t segment_index) {
    SourceLocation loc = tpl.location;
    loc.pointer += "@" + std::to_string(segment_index);
    return loc;
}

bool matches_identity_pattern(const std::string& name, const std::vector<std::string>& patterns) {
    for (const auto& pattern : patterns) {
        if (pattern.empty()) continue;
        if (pattern.front() == '*') {
            const std::string suffix = pattern.substr(1);
            if (name.size() >= suffix.size() &&
                name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
                return true;
            }
        } else if (name == pattern) {
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// URI rules

CheckResult check_rule_1(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        if (tpl.segments.empty()) continue;
        ++res.subjects;
        for (std::size_t k = 1; k < tpl.segments.size(); ++k) {
            const auto prev = tpl.segments[k - 1].archetype;
            const auto cur = tpl.segments[k].archetype;
            const bool prevContainer =
                prev && (*prev == Archetype::Collection || *prev == Archetype::Store);
            const bool curContainer =
                cur && (*cur == Archetype::Collection || *cur == Archetype::Store);
            if (prevContainer && curContainer) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "segment '" + tpl.segments[k].text + "' nests a container directly under container '" +
                        tpl.segments[k - 1].text + "' with no document level between",
                    tpl.raw, "insert a document level (e.g. a {id} segment) between the containers"));
            }
        }
        for (std::size_t k = 0; k + 1 < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            if (ctx.analysis(t, k).is_verb_phrase) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "verb segment '" + tpl.segments[k].text + "' appears in a non-terminal position",
                    tpl.raw, "controllers belong at the end of the path hierarchy"));
            }
        }
    }
    return res;
}

CheckResult check_rule_2(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const UriTemplate& tpl : ctx.model.resources) {
        ++res.subjects;
        if (tpl.has_trailing_slash) {
            res.findings.push_back(source_finding(rule, sev, tpl.location,
                                                  "URI ends with a trailing forward slash", tpl.raw,
                                                  "drop the trailing slash from the path"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (ex.path.size() > 1 && ex.path.back() == '/') {
            ++res.evidence;
            const int status = ex.rec->response.status;
            if (status >= 200 && status < 300) {
                res.findings.push_back(exchange_finding(
                    rule, Severity::Info, ex.rec->index,
                    "trailing-slash request was answered directly instead of redirected",
                    ex.rec->request.uri, "canonicalize by redirecting trailing-slash variants"));
            }
        }
    }
    return res;
}

CheckResult check_rule_3(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            const SegmentAnalysis& a = ctx.analysis(t, k);
            if (a.tokens.size() < 2) continue;
            ++res.subjects;
            if (a.camel_boundaries) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "multi-word segment '" + tpl.segments[k].text + "' is not hyphen-separated",
                    tpl.raw, "join the words with hyphens for readability"));
            }
        }
    }
    return res;
}

CheckResult check_rule_4(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            ++res.subjects;
            if (ctx.analysis(t, k).has_underscore) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "segment '" + tpl.segments[k].text + "' contains an underscore", tpl.raw,
                    "replace underscores with hyphens"));
            }
        }
    }
    return res;
}

CheckResult check_rule_5(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            ++res.subjects;
            if (ctx.analysis(t, k).casing != Casing::Lower) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "segment '" + tpl.segments[k].text + "' uses uppercase letters", tpl.raw,
                    "use lowercase letters in URI paths"));
            }
        }
    }
    return res;
}

CheckResult check_rule_6(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            ++res.subjects;
            if (ctx.analysis(t, k).has_extension) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "segment '" + tpl.segments[k].text + "' carries a file extension", tpl.raw,
                    "negotiate the format through the Accept header instead"));
            }
        }
    }
    return res;
}

CheckResult check_number_agreement(const EvalContext& ctx, const Rule& rule, Archetype target,
                                   NounNumber expected, const char* label, bool heuristic_note) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            const PathSegment& seg = tpl.segments[k];
            if (seg.kind != SegmentKind::Literal || !seg.archetype || *seg.archetype != target) continue;
            const SegmentAnalysis& a = ctx.analysis(t, k);
            if (a.number == NounNumber::Unknown) continue;
            ++res.subjects;
            if (a.number != expected) {
                std::string msg = std::string(label) + " '" + seg.text + "' should use a " +
                                  (expected == NounNumber::Plural ? "plural" : "singular") + " noun";
                if (heuristic_note) msg += " (store archetype assigned heuristically from a PUT-with-201 child)";
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k), msg, tpl.raw,
                    expected == NounNumber::Plural ? "pluralize the name" : "singularize the name"));
            }
        }
    }
    return res;
}

CheckResult check_rule_12(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        if (tpl.segments.empty()) continue;
        const std::size_t k = tpl.segments.size() - 1;
        const PathSegment& seg = tpl.segments[k];
        if (seg.kind != SegmentKind::Literal) continue;
        const bool isController = seg.archetype && *seg.archetype == Archetype::Controller;
        bool postOnly = false;
        const auto ops = ctx.model.operations_on(t);
        if (!ops.empty()) {
            postOnly = std::all_of(ops.begin(), ops.end(),
                                   [](const Operation* op) { return op->method == HttpMethod::Post; });
        }
        const bool containerLike = seg.archetype && (*seg.archetype == Archetype::Collection ||
                                                     *seg.archetype == Archetype::Store);
        if (isController || (postOnly && !containerLike)) {
            ++res.subjects;
            if (!ctx.analysis(t, k).is_verb_phrase) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "controller-like segment '" + seg.text +
                        "' (POST-only endpoint) is not named with a verb or verb phrase",
                    tpl.raw, "name controllers with a verb, e.g. /" + seg.text + " -> /run-" + seg.text));
            }
        }
    }
    return res;
}

CheckResult check_rule_13(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            const PathSegment& seg = tpl.segments[k];
            if (seg.kind != SegmentKind::Variable) continue;
            ++res.subjects;
            if (!matches_identity_pattern(seg.text, ctx.config->identity_patterns)) {
                res.findings.push_back(source_finding(
                    rule, Severity::Info, segment_location(tpl, k),
                    "variable segment '{" + seg.text + "}' is not named like an identity value",
                    tpl.raw, "consider an identity-style name such as '" + seg.text + "_id'"));
            }
        }
    }
    return res;
}

CheckResult check_rule_14(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const UriTemplate& tpl = ctx.model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            if (tpl.segments[k].kind != SegmentKind::Literal) continue;
            ++res.subjects;
            if (ctx.analysis(t, k).is_crud_verb) {
                res.findings.push_back(source_finding(
                    rule, sev, segment_location(tpl, k),
                    "segment '" + tpl.segments[k].text + "' starts with a CRUD function name", tpl.raw,
                    "express the action through the HTTP method, not the URI"));
            }
        }
    }
    return res;
}

CheckResult check_rule_15(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const auto archetype = ctx.final_archetype(t);
        if (!archetype || (*archetype != Archetype::Collection && *archetype != Archetype::Store)) continue;
        const UriTemplate& tpl = ctx.model.resources[t];
        ++res.subjects;
        if (tpl.query_params.empty()) {
            res.findings.push_back(source_finding(
                rule, Severity::Info, tpl.location,
                "collection '" + tpl.raw + "' declares no query parameters for filtering", tpl.raw,
                "consider filter parameters on the query component"));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// HTTP rules

CheckResult check_rule_17(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        ++res.subjects;
        for (const std::string& header : op.request_headers_declared) {
            if (ctx.is_override_header(header)) {
                res.findings.push_back(source_finding(
                    rule, sev, op.location, "operation declares method-override header '" + header + "'",
                    header, "use the real HTTP method instead of tunneling"));
            }
        }
        if (op.method == HttpMethod::Get && op.has_request_body) {
            res.findings.push_back(source_finding(
                rule, sev, op.location, "GET declares a request body", "requestBody",
                "move request data to the query component or use POST"));
        }
        if (op.method == HttpMethod::Post) {
            const UriTemplate& tpl = ctx.model.resources[op.template_index];
            if (!tpl.segments.empty()) {
                const std::size_t k = tpl.segments.size() - 1;
                if (tpl.segments[k].kind == SegmentKind::Literal &&
                    ctx.analysis(op.template_index, k).is_crud_verb) {
                    res.findings.push_back(source_finding(
                        rule, sev, op.location,
                        "POST to '" + tpl.raw + "' tunnels the method named by segment '" +
                            tpl.segments[k].text + "'",
                        tpl.raw, "use the corresponding HTTP method on the resource itself"));
                }
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op) continue;
        ++res.evidence;
        for (const HeaderField& h : ex.rec->request.headers) {
            if (ctx.is_override_header(h.name)) {
                res.findings.push_back(exchange_finding(
                    rule, sev, ex.rec->index, "observed method-override header '" + h.name + "'",
                    h.name + ": " + h.value, "send the real HTTP method instead of tunneling"));
            }
        }
    }
    return res;
}

CheckResult check_rule_18(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const auto archetype = ctx.final_archetype(t);
        if (!archetype || *archetype == Archetype::Controller) continue;
        ++res.subjects;
        const auto ops = ctx.model.operations_on(t);
        const bool hasGet = std::any_of(ops.begin(), ops.end(),
                                        [](const Operation* op) { return op->method == HttpMethod::Get; });
        if (!hasGet) {
            res.findings.push_back(source_finding(
                rule, sev, ctx.model.resources[t].location,
                "resource '" + ctx.model.resources[t].raw + "' declares no GET operation",
                ctx.model.resources[t].raw, "expose a GET returning the resource representation"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || ex.op->method != HttpMethod::Get) continue;
        if (lower(ex.rec->request.method) != "get") continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300 && !ex.rec->response.has_body) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "GET answered " + std::to_string(status) + " without a representation body",
                ex.rec->request.uri, "return the resource representation in the GET response"));
        }
    }
    return res;
}

CheckResult check_rule_20(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Put) continue;
        const UriTemplate& tpl = ctx.model.resources[op.template_index];
        if (tpl.segments.size() < 2) continue;
        if (tpl.segments.back().kind != SegmentKind::Variable) continue;
        const auto parent = tpl.segments[tpl.segments.size() - 2].archetype;
        if (!parent || *parent != Archetype::Store) continue;
        ++res.subjects;
        if (!op.responses.count(201)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location, "store PUT does not declare the created outcome (201)", tpl.raw,
                "declare 201 for the insert case"));
        }
        if (!op.responses.count(200) && !op.responses.count(204)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location, "store PUT does not declare the replaced outcome (200/204)",
                tpl.raw, "declare 200 or 204 for the update case"));
        }
    }
    return res;
}

CheckResult check_collection_post_creation(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Post) continue;
        const auto archetype = ctx.final_archetype(op.template_index);
        if (!archetype || *archetype != Archetype::Collection) continue;
        ++res.subjects;
        if (!op.responses.count(201)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "collection POST does not declare 201 for successful creation",
                ctx.model.resources[op.template_index].raw, "declare a 201 response with Location"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || ex.op->method != HttpMethod::Post) continue;
        const auto archetype = ctx.final_archetype(ex.op->template_index);
        if (!archetype || *archetype != Archetype::Collection) continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300 && status != 201) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "creation in a collection answered " + std::to_string(status) + " instead of 201",
                ex.rec->request.uri, "answer 201 with a Location header for created resources"));
        }
    }
    return res;
}

CheckResult check_rule_23(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        const auto archetype = ctx.final_archetype(t);
        if (!archetype || *archetype != Archetype::Controller) continue;
        for (const Operation* op : ctx.model.operations_on(t)) {
            ++res.subjects;
            if (op->method != HttpMethod::Post) {
                res.findings.push_back(source_finding(
                    rule, sev, op->location,
                    std::string(to_string(op->method)) + " declared on controller '" +
                        ctx.model.resources[t].raw + "'",
                    ctx.model.resources[t].raw, "controllers must be executed via POST only"));
            }
        }
    }
    return res;
}

CheckResult check_rule_24(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Delete) continue;
        ++res.subjects;
        const auto archetype = ctx.final_archetype(op.template_index);
        if (archetype && (*archetype == Archetype::Collection || *archetype == Archetype::Store)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location, "DELETE declared on a whole collection",
                ctx.model.resources[op.template_index].raw,
                "delete individual documents from their parent instead"));
        } else if (archetype && *archetype == Archetype::Controller) {
            res.findings.push_back(source_finding(
                rule, sev, op.location, "DELETE declared on a controller",
                ctx.model.resources[op.template_index].raw, "controllers accept POST only"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || lower(ex.rec->request.method) != "delete") continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300 && status != 200 && status != 204) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "DELETE answered " + std::to_string(status) + " instead of 200/204",
                ex.rec->request.uri, "answer 200 or 204 for successful removal"));
        }
    }
    return res;
}

CheckResult check_rule_26(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status != 200) continue;
            ++res.subjects;
            if (!resp.has_content_key && resp.media_types.empty()) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "200 declared with an intentionally empty body",
                    "status 200", "use 204 when no body is returned"));
            }
            if (op.method == HttpMethod::Post && !op.responses.count(201)) {
                const auto archetype = ctx.final_archetype(op.template_index);
                if (archetype && *archetype == Archetype::Collection) {
                    res.findings.push_back(source_finding(
                        rule, sev, resp.location, "200 declared for creation in a collection",
                        "status 200", "201 is the specific success for creation"));
                }
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || ex.rec->response.status != 200) continue;
        ++res.evidence;
        if (!ex.rec->response.has_body) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed 200 with an empty body", ex.rec->request.uri,
                "use 204 when no body is returned"));
        }
    }
    return res;
}

CheckResult check_rule_27(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status != 200 || !resp.body_schema) continue;
            ++res.subjects;
            if (ctx.is_error_shape(*resp.body_schema)) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "200 response body is shaped like an error report",
                    resp.body_schema->fingerprint(), "use a 4xx/5xx status to communicate errors"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (ex.rec->response.status != 200 || !ex.rec->response.body_fingerprint) continue;
        ++res.evidence;
        const SchemaShape& shape = *ex.rec->response.body_fingerprint;
        const bool markerHit = ctx.is_error_shape(shape);
        const bool matchesDeclaredError =
            !ctx.declared_error_fps.empty() && ctx.declared_error_fps.count(shape.fingerprint());
        if (markerHit || matchesDeclaredError) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed 200 carrying an error-shaped body",
                shape.fingerprint(), "communicate errors with an error status code"));
        }
    }
    return res;
}

CheckResult check_rule_30(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status != 200) continue;
            ++res.subjects;
            if (!resp.has_content_key && resp.media_types.empty()) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "intentionally empty response declared as 200",
                    "status 200", "declare 204 (No Content) instead"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || ex.rec->response.status != 200) continue;
        ++res.evidence;
        if (!ex.rec->response.has_body) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed empty-body 200", ex.rec->request.uri,
                "answer 204 when the body is intentionally empty"));
        }
    }
    return res;
}

CheckResult check_rule_31(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status != 301) continue;
            ++res.subjects;
            if (!resp.headers_declared.count("location")) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "301 declared without a Location header", "status 301",
                    "declare the Location header carrying the new URI"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (ex.rec->response.status != 301) continue;
        ++res.evidence;
        if (!find_header(ex.rec->response.headers, "location")) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed 301 without a Location header",
                ex.rec->request.uri, "include Location pointing at the relocated resource"));
        }
    }
    return res;
}

CheckResult check_rule_34(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Get) continue;
        auto it = op.responses.find(200);
        if (it == op.responses.end()) continue;
        const bool validators = it->second.headers_declared.count("etag") ||
                                it->second.headers_declared.count("last-modified");
        if (!validators) continue;
        ++res.subjects;
        if (!op.responses.count(304)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "GET declares validator headers but no 304 (Not Modified) response",
                ctx.model.resources[op.template_index].raw,
                "declare 304 so conditional requests can preserve bandwidth"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (lower(ex.rec->request.method) != "get") continue;
        const auto inm = find_header(ex.rec->request.headers, "if-none-match");
        const auto ims = find_header(ex.rec->request.headers, "if-modified-since");
        if (!inm && !ims) continue;
        ++res.evidence;
        if (ex.rec->response.status == 200 && inm) {
            const auto etag = find_header(ex.rec->response.headers, "etag");
            if (etag && *etag == *inm) {
                res.findings.push_back(exchange_finding(
                    rule, sev, ex.rec->index,
                    "conditional GET answered 200 with the same ETag the client presented",
                    "If-None-Match: " + *inm, "answer 304 when the representation is unchanged"));
            }
        }
    }
    return res;
}

CheckResult check_auth_status(const EvalContext& ctx, const Rule& rule, int requiredStatus) {
    CheckResult res;
    if (!ctx.model.security_declared) {
        res.not_applicable = true;
        res.note = "the description declares no security scheme";
        return res;
    }
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (!op.secured) continue;
        ++res.subjects;
        if (!op.responses.count(requiredStatus)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "secured operation does not declare " + std::to_string(requiredStatus),
                ctx.model.resources[op.template_index].raw,
                "declare " + std::to_string(requiredStatus) + " for credential handling"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || !ex.op->secured) continue;
        const bool hasCredentials = find_header(ex.rec->request.headers, "authorization") ||
                                    find_header(ex.rec->request.headers, "cookie") ||
                                    find_header(ex.rec->request.headers, "x-api-key");
        if (hasCredentials) continue;
        ++res.evidence;
        if (ex.rec->response.status == 200) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "unauthenticated request to a secured operation answered 200",
                ex.rec->request.uri, "reject missing credentials with 401 (or 403)"));
        }
    }
    return res;
}

bool accept_satisfiable(const std::string& acceptValue, const std::set<std::string>& declared) {
    std::istringstream in(acceptValue);
    std::string entry;
    while (std::getline(in, entry, ',')) {
        std::string type = lower(entry.substr(0, entry.find(';')));
        type.erase(0, type.find_first_not_of(" \t"));
        type.erase(type.find_last_not_of(" \t") + 1);
        if (type == "*/*" || type.empty()) return true;
        for (const std::string& d : declared) {
            const std::string dl = lower(d);
            if (dl == type) return true;
            const std::string major = type.substr(0, type.find('/'));
            if (type.size() > 2 && type.compare(type.size() - 2, 2, "/*") == 0 &&
                dl.rfind(major + "/", 0) == 0) {
                return true;
            }
        }
    }
    return false;
}

std::set<std::string> declared_media_types(const Operation& op) {
    std::set<std::string> out;
    for (const auto& [status, resp] : op.responses) {
        out.insert(resp.media_types.begin(), resp.media_types.end());
    }
    return out;
}

CheckResult check_rule_41(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        const auto types = declared_media_types(op);
        if (types.size() < 2) continue;
        ++res.subjects;
        if (!op.responses.count(406)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "operation offers multiple media types but declares no 406 response",
                std::to_string(types.size()) + " media types",
                "declare 406 for unsatisfiable Accept headers"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op) continue;
        const auto accept = find_header(ex.rec->request.headers, "accept");
        if (!accept) continue;
        const auto declared = declared_media_types(*ex.op);
        if (declared.empty() || accept_satisfiable(*accept, declared)) continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "unsatisfiable Accept header answered " + std::to_string(status) + " instead of 406",
                "Accept: " + *accept, "answer 406 when the requested media type cannot be served"));
        }
    }
    return res;
}

CheckResult check_rule_43(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        const bool conditional = op.request_headers_declared.count("if-match") ||
                                 op.request_headers_declared.count("if-unmodified-since");
        if (!conditional) continue;
        ++res.subjects;
        if (!op.responses.count(412)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "conditional operation declares no 412 (Precondition Failed) response",
                ctx.model.resources[op.template_index].raw,
                "declare 412 for failed preconditions"));
        }
    }
    // Aggregate per operation: a 412 anywhere shows preconditions are honored.
    std::set<const Operation*> saw412;
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op) continue;
        const bool conditional = find_header(ex.rec->request.headers, "if-match") ||
                                 find_header(ex.rec->request.headers, "if-unmodified-since");
        if (conditional && ex.rec->response.status == 412) saw412.insert(ex.op);
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op) continue;
        const bool conditional = find_header(ex.rec->request.headers, "if-match") ||
                                 find_header(ex.rec->request.headers, "if-unmodified-since");
        if (!conditional) continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300 && !saw412.count(ex.op)) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "conditional request succeeded; preconditions appear to be ignored",
                ex.rec->request.uri, "evaluate preconditions and answer 412 on failure"));
        }
    }
    return res;
}

CheckResult check_rule_44(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        if (!op.has_request_body) continue;
        ++res.subjects;
        if (!op.responses.count(415)) {
            res.findings.push_back(source_finding(
                rule, sev, op.location,
                "operation consumes a request body but declares no 415 response",
                ctx.model.resources[op.template_index].raw,
                "declare 415 for unprocessable media types"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || ex.op->request_media_types.empty()) continue;
        const std::string& sent = ex.rec->request.body_media_type;
        if (sent.empty()) continue;
        bool declared = false;
        for (const std::string& t : ex.op->request_media_types) {
            if (lower(t) == lower(sent)) declared = true;
        }
        if (declared) continue;
        ++res.evidence;
        const int status = ex.rec->response.status;
        if (status >= 200 && status < 300) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "undeclared request media type was accepted with " + std::to_string(status),
                "Content-Type: " + sent, "answer 415 when the payload media type cannot be processed"));
        }
    }
    return res;
}

CheckResult check_rule_45(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const ResolvedExchange& ex : ctx.exchanges) {
        const int status = ex.rec->response.status;
        if (status < 500 || status > 599) continue;
        ++res.evidence;
        const auto& fp = ex.rec->response.body_fingerprint;
        const bool errorForm =
            fp && (ctx.is_error_shape(*fp) ||
                   (!ctx.declared_error_fps.empty() && ctx.declared_error_fps.count(fp->fingerprint())));
        if (!ex.rec->response.has_body || !errorForm) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                std::to_string(status) + " response does not carry a consistent error-form body",
                ex.rec->request.uri, "report malfunctions as 500 with the API's error representation"));
        }
    }
    return res;
}

CheckResult check_rule_46(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (!resp.has_content_key) continue;
            ++res.subjects;
            if (resp.media_types.empty()) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "response body declared without any media type",
                    "status " + std::to_string(status), "name the media type so Content-Type can be sent"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.rec->response.has_body) continue;
        ++res.evidence;
        if (!find_header(ex.rec->response.headers, "content-type")) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed response body without a Content-Type header",
                ex.rec->request.uri, "always send Content-Type with a body"));
        }
    }
    return res;
}

CheckResult check_rule_47(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    (void)rule;
    for (const ResolvedExchange& ex : ctx.exchanges) {
        ++res.evidence;
        const bool hasLength = find_header(ex.rec->response.headers, "content-length").has_value();
        const bool hasTe = find_header(ex.rec->response.headers, "transfer-encoding").has_value();
        if (!hasLength && !hasTe) {
            res.findings.push_back(exchange_finding(
                rule, Severity::Info, ex.rec->index,
                "response carries neither Content-Length nor Transfer-Encoding",
                ex.rec->request.uri, "send Content-Length so clients can size the body"));
        }
    }
    return res;
}

CheckResult check_rule_51(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status != 201) continue;
            ++res.subjects;
            if (!resp.headers_declared.count("location")) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "201 declared without a Location header", "status 201",
                    "declare Location carrying the new resource URI"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (ex.rec->response.status != 201) continue;
        ++res.evidence;
        if (!find_header(ex.rec->response.headers, "location")) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed 201 without a Location header",
                ex.rec->request.uri, "send Location with the URI of the created resource"));
        }
    }
    return res;
}

CheckResult check_rule_54(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    static const char* kCacheHeaders[] = {"cache-control", "etag", "last-modified", "expires"};
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Get) continue;
        auto it = op.responses.find(200);
        if (it == op.responses.end()) continue;
        ++res.subjects;
        bool any = false;
        for (const char* h : kCacheHeaders) any = any || it->second.headers_declared.count(h);
        if (!any) {
            res.findings.push_back(source_finding(
                rule, sev, it->second.location,
                "GET 200 declares no cache metadata (Cache-Control or validators)",
                ctx.model.resources[op.template_index].raw,
                "declare Cache-Control, ETag or Last-Modified"));
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (lower(ex.rec->request.method) != "get" || ex.rec->response.status != 200) continue;
        ++res.evidence;
        bool any = false;
        for (const char* h : kCacheHeaders) any = any || find_header(ex.rec->response.headers, h).has_value();
        if (!any) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed GET 200 without explicit cache metadata",
                ex.rec->request.uri, "send Cache-Control, ETag or Last-Modified"));
        }
    }
    return res;
}

CheckResult check_rule_57(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        ++res.subjects;
        for (const std::string& header : op.request_headers_declared) {
            if (ctx.is_override_header(header)) {
                res.findings.push_back(source_finding(
                    rule, sev, op.location,
                    "declared header '" + header + "' changes HTTP method behavior", header,
                    "use the real HTTP method; drop the override header"));
            } else if (!ctx.standard_headers.count(lower(header))) {
                res.findings.push_back(source_finding(
                    rule, Severity::Info, op.location,
                    "declared header '" + header + "' is not in the standard-header registry", header,
                    "prefer standard headers; document custom ones and keep them free of method semantics"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op) continue;
        ++res.evidence;
        for (const HeaderField& h : ex.rec->request.headers) {
            if (ctx.is_override_header(h.name)) {
                res.findings.push_back(exchange_finding(
                    rule, sev, ex.rec->index,
                    "observed header '" + h.name + "' changes HTTP method behavior",
                    h.name + ": " + h.value, "use the real HTTP method; drop the override header"));
            } else if (!ctx.standard_headers.count(lower(h.name))) {
                res.findings.push_back(exchange_finding(
                    rule, Severity::Info, ex.rec->index,
                    "observed custom request header '" + h.name + "'", h.name,
                    "prefer standard headers; keep custom ones free of method semantics"));
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Representation rules

CheckResult check_rule_61(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (resp.media_types.empty()) continue;
            ++res.subjects;
            const bool anyJson = std::any_of(resp.media_types.begin(), resp.media_types.end(),
                                             [](const std::string& t) { return is_json_media(t); });
            if (!anyJson) {
                res.findings.push_back(source_finding(
                    rule, sev, resp.location, "response body offers no JSON media type",
                    *resp.media_types.begin(), "offer application/json alongside other formats"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (!ex.op || !ex.rec->response.has_body) continue;
        ++res.evidence;
        if (is_json_media(ex.rec->response.body_media_type)) continue;
        bool declaredJsonAlternative = false;
        auto it = ex.op->responses.find(ex.rec->response.status);
        if (it != ex.op->responses.end()) {
            declaredJsonAlternative = std::any_of(it->second.media_types.begin(),
                                                  it->second.media_types.end(),
                                                  [](const std::string& t) { return is_json_media(t); });
        }
        if (!declaredJsonAlternative) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index,
                "observed body media type '" + ex.rec->response.body_media_type +
                    "' with no JSON alternative",
                ex.rec->request.uri, "support JSON for resource representation"));
        }
    }
    return res;
}

CheckResult check_rule_63(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    (void)rule;
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (resp.media_types.empty()) continue;
            ++res.subjects;
            std::string nonJson;
            for (const std::string& t : resp.media_types) {
                if (!is_json_media(t)) nonJson += (nonJson.empty() ? "" : ", ") + t;
            }
            if (!nonJson.empty()) {
                res.findings.push_back(source_finding(
                    rule, Severity::Info, resp.location,
                    "response offers non-JSON formats: " + nonJson, nonJson,
                    "optional formats are fine; keep JSON as the primary representation"));
            }
        }
    }
    return res;
}

CheckResult check_rule_69(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    res.subjects = 1;
    std::set<std::string> roots;
    for (const UriTemplate& tpl : ctx.model.resources) {
        if (tpl.segments.empty()) continue;
        const PathSegment& first = tpl.segments.front();
        roots.insert(first.kind == SegmentKind::Variable ? "{" + first.text + "}" : first.text);
    }
    if (static_cast<int>(roots.size()) > ctx.config->entry_point_threshold) {
        std::string list;
        for (const std::string& r : roots) list += (list.empty() ? "" : ", ") + r;
        SourceLocation loc;
        loc.file = ctx.model.source_file;
        loc.pointer = "/paths";
        res.findings.push_back(source_finding(
            rule, sev, loc,
            std::to_string(roots.size()) + " distinct entry-point segments exceed the threshold of " +
                std::to_string(ctx.config->entry_point_threshold),
            list, "group resources under fewer advertised entry points"));
    }
    return res;
}

CheckResult check_rule_71(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    struct Variant {
        int count = 0;
        SourceLocation first_location;
    };
    std::map<std::string, std::map<std::string, Variant>> families;
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (!resp.media_types.empty()) ++res.subjects;
            for (const std::string& t : resp.media_types) {
                auto& variant = families[media_family(t)][lower(t)];
                if (variant.count == 0) variant.first_location = resp.location;
                ++variant.count;
            }
        }
    }
    for (const auto& [family, variants] : families) {
        if (variants.size() < 2) continue;
        std::string canonical;
        int best = -1;
        for (const auto& [type, variant] : variants) {
            if (variant.count > best) {
                best = variant.count;
                canonical = type;
            }
        }
        for (const auto& [type, variant] : variants) {
            if (type == canonical) continue;
            res.findings.push_back(source_finding(
                rule, sev, variant.first_location,
                "media type '" + type + "' diverges from the API's prevailing " + family +
                    " form '" + canonical + "'",
                type, "use one consistent media type form per format family"));
        }
    }
    return res;
}

CheckResult check_rule_72(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    // Same-template consistency across operations' 2xx bodies.
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        std::map<std::string, SourceLocation> seen;
        bool counted = false;
        for (const Operation* op : ctx.model.operations_on(t)) {
            for (const auto& [status, resp] : op->responses) {
                if (status < 200 || status >= 300 || !resp.body_schema) continue;
                if (!counted) {
                    ++res.subjects;
                    counted = true;
                }
                const std::string fp = ctx.strip_envelopes(*resp.body_schema).fingerprint();
                if (seen.empty()) {
                    seen.emplace(fp, resp.location);
                } else if (!seen.count(fp)) {
                    res.findings.push_back(source_finding(
                        rule, sev, resp.location,
                        "success body of '" + ctx.model.resources[t].raw +
                            "' diverges from the shape used by its other operations",
                        fp, "represent the same resource with one consistent schema"));
                    seen.emplace(fp, resp.location);
                }
            }
        }
    }
    // Collection item shape vs child document shape.
    for (std::size_t c = 0; c < ctx.model.resources.size(); ++c) {
        const auto archetypeC = ctx.final_archetype(c);
        if (!archetypeC || (*archetypeC != Archetype::Collection && *archetypeC != Archetype::Store)) continue;
        const UriTemplate& collection = ctx.model.resources[c];
        for (std::size_t d = 0; d < ctx.model.resources.size(); ++d) {
            const UriTemplate& doc = ctx.model.resources[d];
            if (doc.segments.size() != collection.segments.size() + 1) continue;
            if (doc.segments.back().kind != SegmentKind::Variable) continue;
            bool prefix = true;
            for (std::size_t i = 0; i < collection.segments.size(); ++i) {
                if (doc.segments[i].kind != collection.segments[i].kind ||
                    (doc.segments[i].kind == SegmentKind::Literal &&
                     doc.segments[i].text != collection.segments[i].text)) {
                    prefix = false;
                    break;
                }
            }
            if (!prefix) continue;
            auto get2xxShape = [&](std::size_t tplIndex) -> std::optional<std::pair<SchemaShape, SourceLocation>> {
                for (const Operation* op : ctx.model.operations_on(tplIndex)) {
                    if (op->method != HttpMethod::Get) continue;
                    for (const auto& [status, resp] : op->responses) {
                        if (status >= 200 && status < 300 && resp.body_schema) {
                            return std::make_pair(ctx.strip_envelopes(*resp.body_schema), resp.location);
                        }
                    }
                }
                return std::nullopt;
            };
            const auto collectionShape = get2xxShape(c);
            const auto docShape = get2xxShape(d);
            if (!collectionShape || !docShape) continue;
            ++res.subjects;
            if (!(collectionShape->first == docShape->first)) {
                res.findings.push_back(source_finding(
                    rule, sev, docShape->second,
                    "document shape of '" + doc.raw + "' differs from the item shape of collection '" +
                        collection.raw + "'",
                    docShape->first.fingerprint(), "share one schema between collection items and documents"));
            }
        }
    }
    return res;
}

CheckResult check_rule_73(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    struct ErrorBody {
        std::string fp;
        SourceLocation location;
    };
    std::vector<ErrorBody> bodies;
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status < 400 || status > 599 || !resp.body_schema) continue;
            ++res.subjects;
            bodies.push_back({resp.body_schema->fingerprint(), resp.location});
        }
    }
    std::string majority = ctx.declared_error_majority_fp;
    if (!majority.empty()) {
        for (const ErrorBody& b : bodies) {
            if (b.fp != majority) {
                res.findings.push_back(source_finding(
                    rule, sev, b.location, "error body deviates from the API's prevailing error form",
                    b.fp, "use one consistent error representation everywhere"));
            }
        }
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        const int status = ex.rec->response.status;
        if (status < 400 || status > 599 || !ex.rec->response.body_fingerprint) continue;
        ++res.evidence;
        const std::string fp = ex.rec->response.body_fingerprint->fingerprint();
        if (!majority.empty() && fp != majority) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "observed error body deviates from the declared error form",
                fp, "use one consistent error representation everywhere"));
        }
    }
    return res;
}

CheckResult check_rule_74(const EvalContext& ctx, const Rule& rule) {
    (void)ctx;
    (void)rule;
    CheckResult res;
    res.not_applicable = true;
    res.note = "requires two model versions; run the diff command";
    return res;
}

CheckResult check_rule_79(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    (void)rule;
    for (const Operation& op : ctx.model.operations) {
        if (op.method != HttpMethod::Get) continue;
        auto it = op.responses.find(200);
        if (it == op.responses.end() || !it->second.body_schema) continue;
        ++res.subjects;
        if (static_cast<int>(it->second.body_schema->property_count()) <
            ctx.config->large_object_threshold) {
            continue;
        }
        bool hasPartialParam = false;
        const UriTemplate& tpl = ctx.model.resources[op.template_index];
        for (const std::string& p : ctx.config->partial_response_params) {
            if (op.query_params.count(p)) hasPartialParam = true;
            if (std::find(tpl.query_params.begin(), tpl.query_params.end(), p) != tpl.query_params.end()) {
                hasPartialParam = true;
            }
        }
        if (!hasPartialParam) {
            res.findings.push_back(source_finding(
                rule, Severity::Info, op.location,
                "large representation (" + std::to_string(it->second.body_schema->property_count()) +
                    " members) offers no field-selection query parameter",
                tpl.raw, "support partial response via a 'fields' or 'select' parameter"));
        }
    }
    return res;
}

CheckResult check_rule_82(const EvalContext& ctx, const Rule& rule) {
    CheckResult res;
    const Severity sev = violation_severity(rule);
    res.subjects = 1;
    bool optionsDeclared = false;
    bool corsDeclared = false;
    for (const Operation& op : ctx.model.operations) {
        if (op.method == HttpMethod::Options) optionsDeclared = true;
        for (const auto& [status, resp] : op.responses) {
            if (resp.headers_declared.count("access-control-allow-origin")) corsDeclared = true;
        }
    }
    if (!optionsDeclared && !corsDeclared) {
        SourceLocation loc;
        loc.file = ctx.model.source_file;
        loc.pointer = "/paths";
        res.findings.push_back(source_finding(
            rule, sev, loc, "no OPTIONS operation and no CORS response headers declared", "",
            "declare Access-Control-Allow-Origin (and preflight OPTIONS) for browser clients"));
    }
    for (const ResolvedExchange& ex : ctx.exchanges) {
        if (lower(ex.rec->request.method) != "options") continue;
        ++res.evidence;
        if (!find_header(ex.rec->response.headers, "access-control-allow-origin")) {
            res.findings.push_back(exchange_finding(
                rule, sev, ex.rec->index, "preflight OPTIONS answered without Access-Control-Allow-Origin",
                ex.rec->request.uri, "answer preflights with the CORS response headers"));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Engine

using CheckFn = std::function<CheckResult(const EvalContext&, const Rule&)>;

const std::map<int, CheckFn>& checker_registry() {
    static const std::map<int, CheckFn> registry = [] {
        std::map<int, CheckFn> r;
        r[1] = check_rule_1;
        r[2] = check_rule_2;
        r[3] = check_rule_3;
        r[4] = check_rule_4;
        r[5] = check_rule_5;
        r[6] = check_rule_6;
        r[9] = [](const EvalContext& c, const Rule& rule) {
            return check_number_agreement(c, rule, Archetype::Document, NounNumber::Singular, "document", false);
        };
        r[10] = [](const EvalContext& c, const Rule& rule) {
            return check_number_agreement(c, rule, Archetype::Collection, NounNumber::Plural, "collection", false);
        };
        r[11] = [](const EvalContext& c, const Rule& rule) {
            return check_number_agreement(c, rule, Archetype::Store, NounNumber::Plural, "store", true);
        };
        r[12] = check_rule_12;
        r[13] = check_rule_13;
        r[14] = check_rule_14;
        r[15] = check_rule_15;
        r[17] = check_rule_17;
        r[18] = check_rule_18;
        r[20] = check_rule_20;
        r[22] = check_collection_post_creation;
        r[23] = check_rule_23;
        r[24] = check_rule_24;
        r[26] = check_rule_26;
        r[27] = check_rule_27;
        r[28] = check_collection_post_creation;
        r[30] = check_rule_30;
        r[31] = check_rule_31;
        r[34] = check_rule_34;
        r[37] = [](const EvalContext& c, const Rule& rule) { return check_auth_status(c, rule, 401); };
        r[38] = [](const EvalContext& c, const Rule& rule) { return check_auth_status(c, rule, 403); };
        r[41] = check_rule_41;
        r[43] = check_rule_43;
        r[44] = check_rule_44;
        r[45] = check_rule_45;
        r[46] = check_rule_46;
        r[47] = check_rule_47;
        r[51] = check_rule_51;
        r[54] = check_rule_54;
        r[57] = check_rule_57;
        r[61] = check_rule_61;
        r[63] = check_rule_63;
        r[69] = check_rule_69;
        r[71] = check_rule_71;
        r[72] = check_rule_72;
        r[73] = check_rule_73;
        r[74] = check_rule_74;
        r[79] = check_rule_79;
        r[82] = check_rule_82;
        return r;
    }();
    return registry;
}

EvalContext build_context(const CanonicalApiModel& model, const std::vector<ExchangeRecord>* exchanges,
                          const RuleCatalog& catalog, const EngineConfig& config, const Lexicon& lexicon) {
    EvalContext ctx;
    ctx.model = model;
    ctx.catalog = &catalog;
    ctx.config = &config;
    ctx.lexicon = &lexicon;
    assign_archetypes(ctx.model, lexicon);

    ctx.analyses.resize(ctx.model.resources.size());
    for (std::size_t t = 0; t < ctx.model.resources.size(); ++t) {
        for (const PathSegment& seg : ctx.model.resources[t].segments) {
            ctx.analyses[t].push_back(analyze_segment(seg, lexicon));
        }
    }

    ctx.standard_headers = standard_header_registry();
    for (const std::string& h : config.extra_standard_headers) ctx.standard_headers.insert(lower(h));

    std::map<std::string, int> errorFpCounts;
    for (const Operation& op : ctx.model.operations) {
        for (const auto& [status, resp] : op.responses) {
            if (status >= 400 && status <= 599 && resp.body_schema) {
                const std::string fp = resp.body_schema->fingerprint();
                ctx.declared_error_fps.insert(fp);
                ++errorFpCounts[fp];
            }
        }
    }
    int best = -1;
    for (const auto& [fp, count] : errorFpCounts) {
        if (count > best) {
            best = count;
            ctx.declared_error_majority_fp = fp;
        }
    }

    if (exchanges) {
        for (const ExchangeRecord& rec : *exchanges) {
            ResolvedExchange ex;
            ex.rec = &rec;
            if (auto path = absolute_uri_path(rec.request.uri)) {
                ex.path = *path;
            } else {
                ex.path = rec.request.uri;
            }
            if (auto method = method_from_string(rec.request.method)) {
                ex.op = resolve_operation(ctx.model, *method, rec.request.uri);
            }
            ctx.exchanges.push_back(std::move(ex));
        }
        ctx.have_exchanges = !ctx.exchanges.empty();
    }
    return ctx;
}

RuleOutcome run_rule(const EvalContext& ctx, const Rule& rule) {
    RuleOutcome out;
    out.rule_id = rule.id;
    CheckResult res;
    try {
        const auto& registry = checker_registry();
        auto it = registry.find(rule.id);
        if (it == registry.end()) {
            out.outcome = Outcome::NotApplicable;
            out.engine_note = "no checker implemented for this rule";
            return out;
        }
        res = it->second(ctx, rule);
    } catch (const std::exception& e) {
        out.outcome = Outcome::NotApplicable;
        out.engine_note = std::string("checker failed: ") + e.what();
        return out;
    }

    std::sort(res.findings.begin(), res.findings.end(), [](const Finding& a, const Finding& b) {
        const std::string da = a.location.to_display();
        const std::string db = b.location.to_display();
        if (da != db) return da < db;
        return a.message < b.message;
    });
    out.findings = std::move(res.findings);
    out.subjects_checked = res.subjects;
    out.dynamic_evidence = res.evidence;
    out.engine_note = res.note;

    if (res.not_applicable) {
        out.outcome = Outcome::NotApplicable;
        return out;
    }
    const bool anyViolation = std::any_of(out.findings.begin(), out.findings.end(), [](const Finding& f) {
        return f.severity != Severity::Info;
    });
    const bool anyFinding = !out.findings.empty();

    switch (rule.automation) {
        case Automation::Static:
            if (res.subjects == 0) out.outcome = Outcome::NotApplicable;
            else if (anyViolation) out.outcome = Outcome::Violation;
            else if (anyFinding) out.outcome = Outcome::Advisory;
            else out.outcome = Outcome::Pass;
            break;
        case Automation::Hybrid:
        case Automation::Dynamic:
            if (anyViolation) out.outcome = Outcome::Violation;
            else if (anyFinding) out.outcome = Outcome::Advisory;
            else if (res.evidence > 0) out.outcome = Outcome::Pass;
            else if (rule.automation == Automation::Hybrid && res.subjects == 0 && !ctx.have_exchanges) {
                out.outcome = Outcome::NeedsDynamic;
            } else {
                out.outcome = Outcome::NeedsDynamic;
            }
            break;
        case Automation::Manual:
            out.outcome = Outcome::NotApplicable;
            break;
    }
    return out;
}

std::vector<RuleOutcome> evaluate_impl(const CanonicalApiModel& model,
                                       const std::vector<ExchangeRecord>* exchanges,
                                       const RuleCatalog& catalog, const EngineConfig& config,
                                       const Lexicon& lexicon, bool parallel) {
    const EvalContext ctx = build_context(model, exchanges, catalog, config, lexicon);

    std::vector<const Rule*> active;
    for (const Rule& rule : catalog.rules()) {
        if (rule.enabled && rule.automation != Automation::Manual) active.push_back(&rule);
    }
    std::vector<RuleOutcome> outcomes(active.size());
    const long n = static_cast<long>(active.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            outcomes[static_cast<std::size_t>(i)] = run_rule(ctx, *active[static_cast<std::size_t>(i)]);
        }
    } else {
        for (long i = 0; i < n; ++i) {
            outcomes[static_cast<std::size_t>(i)] = run_rule(ctx, *active[static_cast<std::size_t>(i)]);
        }
    }
    return outcomes;  // active was built in id order, so outcomes are too
}

}  // namespace

std::vector<RuleOutcome> evaluate(const CanonicalApiModel& model,
                                  const std::vector<ExchangeRecord>* exchanges,
                                  const RuleCatalog& catalog, const EngineConfig& config,
                                  const Lexicon& lexicon) {
    return evaluate_impl(model, exchanges, catalog, config, lexicon, config.parallel);
}

std::vector<RuleOutcome> evaluate_serial(const CanonicalApiModel& model,
                                         const std::vector<ExchangeRecord>* exchanges,
                                         const RuleCatalog& catalog, const EngineConfig& config,
                                         const Lexicon& lexicon) {
    return evaluate_impl(model, exchanges, catalog, config, lexicon, false);
}

namespace {

bool shape_compatible(const SchemaShape& before, const SchemaShape& after) {
    if (before.kind == SchemaShape::Kind::Any || after.kind == SchemaShape::Kind::Any) return true;
    if (before.kind != after.kind) return false;
    if (before.kind == SchemaShape::Kind::Object) {
        for (const auto& [name, child] : before.properties) {
            auto it = std::find_if(after.properties.begin(), after.properties.end(),
                                   [&](const auto& p) { return p.first == name; });
            if (it == after.properties.end()) return false;  // member removed
            if (!shape_compatible(child, it->second)) return false;
        }
        return true;  // added members are compatible
    }
    if (before.kind == SchemaShape::Kind::Array) {
        if (before.items.empty() || after.items.empty()) return true;
        return shape_compatible(before.items.front(), after.items.front());
    }
    return true;  // same primitive kind
}

}  // namespace

RuleOutcome diff_concepts(const CanonicalApiModel& old_model, const CanonicalApiModel& new_model,
                          const EngineConfig& config) {
    (void)config;
    RuleOutcome out;
    out.rule_id = 74;
    out.outcome = Outcome::Pass;

    for (const UriTemplate& oldTpl : old_model.resources) {
        std::size_t newIndex = new_model.resources.size();
        for (std::size_t t = 0; t < new_model.resources.size(); ++t) {
            if (new_model.resources[t].raw == oldTpl.raw) {
                newIndex = t;
                break;
            }
        }
        if (newIndex == new_model.resources.size()) continue;

        std::size_t oldIndex = 0;
        for (std::size_t t = 0; t < old_model.resources.size(); ++t) {
            if (&old_model.resources[t] == &oldTpl) oldIndex = t;
        }
        ++out.subjects_checked;

        for (const Operation* oldOp : old_model.operations_on(oldIndex)) {
            const Operation* newOp = nullptr;
            for (const Operation* candidate : new_model.operations_on(newIndex)) {
                if (candidate->method == oldOp->method) newOp = candidate;
            }
            if (!newOp) continue;
            for (const auto& [status, oldResp] : oldOp->responses) {
                if (status < 200 || status >= 300 || !oldResp.body_schema) continue;
                auto it = newOp->responses.find(status);
                if (it == newOp->responses.end() || !it->second.body_schema) continue;
                if (!shape_compatible(*oldResp.body_schema, *it->second.body_schema)) {
                    Finding f;
                    f.rule_id = 74;
                    f.severity = Severity::Error;
                    f.location.source = it->second.location;
                    f.message = "response schema of '" + oldTpl.raw +
                                "' changed incompatibly while its URI stayed the same";
                    f.evidence = it->second.body_schema->fingerprint();
                    f.remediation = "introduce the new concept under a new URI";
                    out.findings.push_back(std::move(f));
                }
            }
        }
    }
    if (!out.findings.empty()) out.outcome = Outcome::Violation;
    return out;
}

int estimate_maturity(const CanonicalApiModel& model, const std::vector<RuleOutcome>& outcomes) {
    const bool postOnly =
        !model.operations.empty() &&
        std::all_of(model.operations.begin(), model.operations.end(),
                    [](const Operation& op) { return op.method == HttpMethod::Post; });
    if (model.resources.size() <= 1 && postOnly) return 0;

    bool verbDiscipline = true;
    for (const RuleOutcome& o : outcomes) {
        if ((o.rule_id == 14 || o.rule_id == 17) && o.outcome == Outcome::Violation) {
            verbDiscipline = false;
        }
    }
    std::set<HttpMethod> methods;
    std::set<int> statusClasses;
    bool hypermedia = false;
    for (const Operation& op : model.operations) {
        methods.insert(op.method);
        for (const auto& [status, resp] : op.responses) {
            statusClasses.insert(status / 100);
            if (resp.body_schema && resp.body_schema->hypermedia_hint) hypermedia = true;
        }
    }
    if (!verbDiscipline || methods.size() < 2 || statusClasses.size() < 2) return 1;
    return hypermedia ? 3 : 2;
}

}  // namespace restlint
