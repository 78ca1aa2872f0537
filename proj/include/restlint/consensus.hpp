#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "restlint/catalog.hpp"

namespace restlint {

struct consensus_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RatingKind { Importance, QaImpact };

// Complete participants x rules matrix for one Delphi iteration. Importance
// cells hold the 3-point ordinal scale (0=low, 1=medium, 2=high); qa-impact
// cells hold the raw 8-bit QA set.
class RatingMatrix {
public:
    static RatingMatrix create(RatingKind kind, int iteration,
                               std::vector<std::string> participants,
                               std::vector<int> rule_ids,
                               std::vector<std::uint8_t> cells);

    // Delimited text: header row "participant,<rule id>,..."; one row per
    // participant. Importance cells are low/medium/high; qa cells are
    // pipe-separated attribute names or "none". Kind is detected from cells.
    static RatingMatrix parse_csv(std::string_view text, int iteration = 1);

    RatingKind kind() const { return kind_; }
    int iteration() const { return iteration_; }
    const std::vector<std::string>& participants() const { return participants_; }
    const std::vector<int>& rule_ids() const { return rule_ids_; }
    std::size_t participant_count() const { return participants_.size(); }
    std::size_t rule_count() const { return rule_ids_.size(); }
    std::size_t cell_count() const { return cells_.size(); }

    std::uint8_t cell(std::size_t participant, std::size_t rule) const {
        return cells_[participant * rule_ids_.size() + rule];
    }
    const std::vector<std::uint8_t>& cells() const { return cells_; }

    bool same_shape(const RatingMatrix& other) const;

private:
    RatingMatrix() = default;
    RatingKind kind_ = RatingKind::Importance;
    int iteration_ = 1;
    std::vector<std::string> participants_;
    std::vector<int> rule_ids_;
    std::vector<std::uint8_t> cells_;
};

struct RuleConsensus {
    bool consensus = false;
    std::optional<std::uint8_t> majority_value;  // absent on ties / no consensus
    std::map<std::uint8_t, int> vote_histogram;
};

struct ConsensusResult {
    RatingKind kind = RatingKind::Importance;
    std::map<int, RuleConsensus> per_rule;
    double agreement_fraction = 0.0;
};

enum class KappaBand { Poor, Slight, Fair, Moderate, Substantial, AlmostPerfect };

std::string_view to_string(KappaBand band);
KappaBand landis_koch_band(double kappa);

struct StabilityResult {
    double kappa = 0.0;
    KappaBand band = KappaBand::Poor;
    bool stop_recommended = false;
};

// A rule has consensus iff the (unique) modal rating's share >= threshold.
// QA-impact ratings compare by exact set equality.
ConsensusResult consensus(const RatingMatrix& matrix, double threshold = 7.0 / 8.0);

// Weighted Cohen's kappa between two importance iterations. Each
// (participant, rule) cell is one item; disagreement weights are 0 for
// identical ratings, 1 for adjacent levels, 2 for low<->high. Expected
// disagreement comes from the per-iteration marginal distributions.
// `history` holds kappas of earlier transitions; stop is recommended once two
// consecutive values (including this one) reach 0.90.
StabilityResult weighted_kappa(const RatingMatrix& prev, const RatingMatrix& next,
                               const std::vector<double>& history = {});

// Standard Cohen's kappa between two qa-impact iterations; agreement is exact
// QA-set equality per cell.
StabilityResult unweighted_kappa(const RatingMatrix& prev, const RatingMatrix& next,
                                 const std::vector<double>& history = {});

// Turns a fully-consensual importance result into catalog overrides. Throws
// consensus_error listing the rules still open otherwise.
std::vector<CatalogOverride> derive_weights(const ConsensusResult& result);

}  // namespace restlint
