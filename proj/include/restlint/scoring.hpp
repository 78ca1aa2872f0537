#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "restlint/catalog.hpp"
#include "restlint/checks.hpp"

namespace restlint {

struct scoring_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvaluationReport {
    std::string api_title;
    int maturity_level = 0;
    // absent value = not_applicable (no applicable rule impacts the attribute)
    std::map<Qa, std::optional<double>> qa_scores;
    std::vector<RuleOutcome> outcomes;
    // clean locations / checked locations, for rules with checked locations
    std::map<int, double> compliance_ratio;
    struct Summary {
        std::size_t errors = 0;
        std::size_t warnings = 0;
        std::size_t infos = 0;
        std::size_t needs_dynamic = 0;
        std::size_t not_applicable = 0;
    } summary;
};

// Weighted-ratio QA scores over outcomes: for each attribute q, the
// applicable set holds rules impacting q whose outcome is pass or violation;
// score(q) = 1 - sum(w over violated) / sum(w over applicable) with weights
// high=3, medium=2, low=1. Advisory, needs_dynamic and not_applicable
// outcomes stay out of both sums. (The formula is this tool's aggregation
// choice; the importance ratings it weights by are the published consensus.)
EvaluationReport score(const std::vector<RuleOutcome>& outcomes, const RuleCatalog& catalog);

std::string render_text(const EvaluationReport& report, const RuleCatalog& catalog);
std::string render_json(const EvaluationReport& report);

// Round-trip of the machine-readable report (schema_version 1).
EvaluationReport report_from_json(std::string_view text);

}  // namespace restlint
