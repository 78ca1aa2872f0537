#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "restlint/api_model.hpp"
#include "restlint/engine_config.hpp"

namespace restlint {

struct probe_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ProbeKind {
    PlainGet,
    ConditionalGet,
    UnacceptableAccept,
    BogusContentType,
    Unauthenticated,
    Preflight,
};

std::string_view to_string(ProbeKind kind);

struct ProbeTarget {
    ProbeKind kind = ProbeKind::PlainGet;
    HttpMethod method = HttpMethod::Get;
    std::string path;  // variables already substituted
    std::vector<HeaderField> headers;
    std::string body_media_type;  // bogus content-type probes only
};

struct ProbePlan {
    std::string base_uri;
    std::vector<ProbeTarget> targets;
    double rate_limit = 5.0;  // requests per second
    bool safe_mode = true;
    std::vector<std::string> warnings;
};

// One target per (operation, applicable probe kind). Variable segments fill
// from config example values or declared examples; operations without
// fillable values are skipped with warnings. Safe mode emits only
// GET/HEAD/OPTIONS requests. Throws probe_error when no base URI is known.
ProbePlan plan(const CanonicalApiModel& model, const EngineConfig& config,
               const std::string& base_uri_override = "");

// Executes the plan against the live API: bounded in-flight requests under a
// token-bucket rate limiter, one retry per target, timeouts recorded as
// synthetic status-0 records, records merged by target index. Throws
// probe_error when the base URI does not resolve/connect.
std::vector<ExchangeRecord> execute(const ProbePlan& plan, const EngineConfig& config);

}  // namespace restlint
