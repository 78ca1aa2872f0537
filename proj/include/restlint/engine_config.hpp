#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace restlint {

// Knobs for the rule engine and the prober. Every field has a shipped
// default; a config file overrides fields selectively.
struct EngineConfig {
    // rule 27/45/73: member names marking error-shaped bodies
    std::vector<std::string> error_markers = {"error", "errors", "errorcode", "error_code"};
    // rule 13: variable-name identity patterns ('*' = any prefix)
    std::vector<std::string> identity_patterns = {"id", "*_id", "*Id", "uuid", "key"};
    // rule 79
    std::vector<std::string> partial_response_params = {"fields", "select"};
    int large_object_threshold = 20;
    // rule 69
    int entry_point_threshold = 1;
    // hypermedia detection (maturity level 3, fingerprinting)
    std::vector<std::string> link_markers = {"links", "_links", "href"};
    // rule 72: wrapper members stripped before schema comparison
    std::vector<std::string> envelope_members = {"data", "result", "payload"};
    // rules 17/57: behavior-changing header family
    std::vector<std::string> method_override_headers = {"x-http-method-override",
                                                        "x-method-override", "x-http-method"};
    // rule 57: additions to the shipped standard-header registry
    std::vector<std::string> extra_standard_headers;

    // prober
    double probe_rate_per_sec = 5.0;
    int probe_timeout_seconds = 10;
    int probe_max_in_flight = 2;
    bool probe_safe_mode = true;
    bool probe_enable_unauthenticated = false;
    double probe_deadline_seconds = 120.0;
    std::map<std::string, std::string> probe_example_values;

    // engine execution (serial path kept as the reference implementation)
    bool parallel = true;
};

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

EngineConfig default_engine_config();
EngineConfig load_engine_config(std::string_view json_text);
std::string engine_config_to_json(const EngineConfig& config);

// Shipped snapshot of the IANA permanent header registry (lowercase names).
const std::set<std::string>& standard_header_registry();

}  // namespace restlint
