#include "restlint/engine_config.hpp"

#include <nlohmann/json.hpp>

namespace restlint {

using nlohmann::json;

EngineConfig default_engine_config() {
    return EngineConfig{};
}

namespace {

void read_strings(const json& doc, const char* key, std::vector<std::string>& into) {
    if (!doc.contains(key)) return;
    into.clear();
    for (const auto& v : doc.at(key)) into.push_back(v.get<std::string>());
}

}  // namespace

EngineConfig load_engine_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config document does not parse: ") + e.what());
    }
    if (!doc.is_object()) throw config_error("config document must be a JSON object");

    EngineConfig config;
    read_strings(doc, "error_markers", config.error_markers);
    read_strings(doc, "identity_patterns", config.identity_patterns);
    read_strings(doc, "partial_response_params", config.partial_response_params);
    read_strings(doc, "link_markers", config.link_markers);
    read_strings(doc, "envelope_members", config.envelope_members);
    read_strings(doc, "method_override_headers", config.method_override_headers);
    read_strings(doc, "extra_standard_headers", config.extra_standard_headers);
    if (doc.contains("large_object_threshold")) config.large_object_threshold = doc["large_object_threshold"].get<int>();
    if (doc.contains("entry_point_threshold")) config.entry_point_threshold = doc["entry_point_threshold"].get<int>();
    if (doc.contains("parallel")) config.parallel = doc["parallel"].get<bool>();

    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        if (p.contains("rate_per_sec")) config.probe_rate_per_sec = p["rate_per_sec"].get<double>();
        if (p.contains("timeout_seconds")) config.probe_timeout_seconds = p["timeout_seconds"].get<int>();
        if (p.contains("max_in_flight")) config.probe_max_in_flight = p["max_in_flight"].get<int>();
        if (p.contains("safe_mode")) config.probe_safe_mode = p["safe_mode"].get<bool>();
        if (p.contains("enable_unauthenticated")) config.probe_enable_unauthenticated = p["enable_unauthenticated"].get<bool>();
        if (p.contains("deadline_seconds")) config.probe_deadline_seconds = p["deadline_seconds"].get<double>();
        if (p.contains("example_values")) {
            config.probe_example_values = p["example_values"].get<std::map<std::string, std::string>>();
        }
    }
    return config;
}

std::string engine_config_to_json(const EngineConfig& config) {
    json doc;
    doc["error_markers"] = config.error_markers;
    doc["identity_patterns"] = config.identity_patterns;
    doc["partial_response_params"] = config.partial_response_params;
    doc["large_object_threshold"] = config.large_object_threshold;
    doc["entry_point_threshold"] = config.entry_point_threshold;
    doc["link_markers"] = config.link_markers;
    doc["envelope_members"] = config.envelope_members;
    doc["method_override_headers"] = config.method_override_headers;
    doc["extra_standard_headers"] = config.extra_standard_headers;
    doc["parallel"] = config.parallel;
    doc["probe"] = json{{"rate_per_sec", config.probe_rate_per_sec},
                        {"timeout_seconds", config.probe_timeout_seconds},
                        {"max_in_flight", config.probe_max_in_flight},
                        {"safe_mode", config.probe_safe_mode},
                        {"enable_unauthenticated", config.probe_enable_unauthenticated},
                        {"deadline_seconds", config.probe_deadline_seconds},
                        {"example_values", config.probe_example_values}};
    return doc.dump(2) + "\n";
}

const std::set<std::string>& standard_header_registry() {
    static const std::set<std::string> registry = {
        "a-im", "accept", "accept-additions", "accept-ch", "accept-charset", "accept-datetime",
        "accept-encoding", "accept-features", "accept-language", "accept-patch", "accept-post",
        "accept-ranges", "access-control-allow-credentials", "access-control-allow-headers",
        "access-control-allow-methods", "access-control-allow-origin",
        "access-control-expose-headers", "access-control-max-age",
        "access-control-request-headers", "access-control-request-method", "age", "allow",
        "alt-svc", "authentication-info", "authorization", "cache-control", "cache-status",
        "connection", "content-digest", "content-disposition", "content-encoding",
        "content-language", "content-length", "content-location", "content-range",
        "content-security-policy", "content-type", "cookie", "date", "delta-base", "depth",
        "destination", "digest", "etag", "expect", "expires", "forwarded", "from", "host",
        "if-match", "if-modified-since", "if-none-match", "if-range", "if-unmodified-since",
        "im", "keep-alive", "last-modified", "link", "location", "max-forwards", "origin",
        "pragma", "prefer", "preference-applied", "priority", "proxy-authenticate",
        "proxy-authorization", "range", "referer", "referrer-policy", "retry-after",
        "sec-fetch-dest", "sec-fetch-mode", "sec-fetch-site", "server", "server-timing",
        "set-cookie", "strict-transport-security", "te", "timing-allow-origin", "trailer",
        "transfer-encoding", "upgrade", "upgrade-insecure-requests", "user-agent", "vary",
        "via", "want-digest", "warning", "www-authenticate", "x-content-type-options",
        "x-frame-options", "x-request-id", "x-correlation-id"};
    return registry;
}

}  // namespace restlint
