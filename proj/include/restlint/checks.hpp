#pragma once

#include <optional>
#include <string>
#include <vector>

#include "restlint/api_model.hpp"
#include "restlint/catalog.hpp"
#include "restlint/engine_config.hpp"
#include "restlint/linguistics.hpp"

namespace restlint {

enum class Outcome { Pass, Violation, Advisory, NotApplicable, NeedsDynamic };
enum class Severity { Error, Warning, Info };

std::string_view to_string(Outcome o);
std::string_view to_string(Severity s);

struct FindingLocation {
    bool is_exchange = false;
    SourceLocation source;          // when is_exchange == false
    std::size_t exchange_index = 0; // when is_exchange == true
    std::string to_display() const;
    friend bool operator==(const FindingLocation&, const FindingLocation&) = default;
};

struct Finding {
    int rule_id = 0;
    Severity severity = Severity::Info;
    FindingLocation location;
    std::string message;
    std::string evidence;
    std::string remediation;
    friend bool operator==(const Finding&, const Finding&) = default;
};

struct RuleOutcome {
    int rule_id = 0;
    Outcome outcome = Outcome::NotApplicable;
    std::vector<Finding> findings;
    std::size_t subjects_checked = 0;   // locations the checker examined
    std::size_t dynamic_evidence = 0;   // applicable exchanges seen
    std::string engine_note;            // set when a checker failed internally
};

// Evaluates every enabled catalog rule with automation != manual against the
// model (static halves) and the exchanges (dynamic halves). Passing no
// exchanges (or an empty list) leaves unresolved hybrid/dynamic rules at
// needs_dynamic. Checkers run concurrently; results are merged in rule-id
// order so output is independent of scheduling.
std::vector<RuleOutcome> evaluate(const CanonicalApiModel& model,
                                  const std::vector<ExchangeRecord>* exchanges,
                                  const RuleCatalog& catalog, const EngineConfig& config,
                                  const Lexicon& lexicon = default_lexicon());

// Single-threaded reference implementation; produces identical output.
std::vector<RuleOutcome> evaluate_serial(const CanonicalApiModel& model,
                                         const std::vector<ExchangeRecord>* exchanges,
                                         const RuleCatalog& catalog, const EngineConfig& config,
                                         const Lexicon& lexicon = default_lexicon());

// Rule 74: flags templates whose response schema changed incompatibly
// (removed members, changed primitive kinds) while the URI stayed the same.
RuleOutcome diff_concepts(const CanonicalApiModel& old_model, const CanonicalApiModel& new_model,
                          const EngineConfig& config);

// Richardson maturity estimate from the model and computed outcomes.
int estimate_maturity(const CanonicalApiModel& model, const std::vector<RuleOutcome>& outcomes);

}  // namespace restlint
