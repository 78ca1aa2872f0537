#include "restlint/consensus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace restlint {

namespace {

std::string trim(std::string s) {
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(trim(field));
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::optional<std::uint8_t> parse_importance_cell(const std::string& cell) {
    if (cell == "low") return 0;
    if (cell == "medium") return 1;
    if (cell == "high") return 2;
    return std::nullopt;
}

std::optional<std::uint8_t> parse_qa_cell(const std::string& cell) {
    if (cell == "none") return 0;
    QaSet set;
    std::istringstream in(cell);
    std::string part;
    while (std::getline(in, part, '|')) {
        auto qa = qa_from_string(trim(part));
        if (!qa) return std::nullopt;
        set.insert(*qa);
    }
    if (set.empty()) return std::nullopt;
    return set.raw();
}

}  // namespace

RatingMatrix RatingMatrix::create(RatingKind kind, int iteration,
                                  std::vector<std::string> participants,
                                  std::vector<int> rule_ids,
                                  std::vector<std::uint8_t> cells) {
    if (participants.empty() || rule_ids.empty()) {
        throw consensus_error("rating matrix must have at least one participant and one rule");
    }
    if (cells.size() != participants.size() * rule_ids.size()) {
        throw consensus_error("rating matrix cell count does not match participants x rules");
    }
    if (kind == RatingKind::Importance) {
        for (std::uint8_t c : cells) {
            if (c > 2) throw consensus_error("importance ratings use the 3-point ordinal scale only");
        }
    }
    RatingMatrix m;
    m.kind_ = kind;
    m.iteration_ = iteration;
    m.participants_ = std::move(participants);
    m.rule_ids_ = std::move(rule_ids);
    m.cells_ = std::move(cells);
    return m;
}

RatingMatrix RatingMatrix::parse_csv(std::string_view text, int iteration) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw consensus_error("empty ratings file");
    auto header = split(line, ',');
    if (header.size() < 2) throw consensus_error("ratings header needs a participant column and rule ids");

    std::vector<int> ruleIds;
    for (std::size_t i = 1; i < header.size(); ++i) {
        try {
            ruleIds.push_back(std::stoi(header[i]));
        } catch (...) {
            throw consensus_error("ratings header column " + std::to_string(i) +
                                  " is not a rule id: \"" + header[i] + "\"");
        }
    }

    std::vector<std::string> participants;
    std::vector<std::string> rawCells;
    std::vector<std::string> missing;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        const std::string participant = fields.empty() ? "" : fields[0];
        participants.push_back(participant);
        for (std::size_t r = 0; r < ruleIds.size(); ++r) {
            const std::size_t col = r + 1;
            if (col >= fields.size() || fields[col].empty()) {
                missing.push_back("(" + participant + ", rule " + std::to_string(ruleIds[r]) + ")");
                rawCells.push_back("");
            } else {
                rawCells.push_back(fields[col]);
            }
        }
        if (fields.size() > ruleIds.size() + 1) {
            throw consensus_error("row for participant \"" + participant + "\" has extra columns");
        }
    }
    if (participants.empty()) throw consensus_error("ratings file has no participant rows");
    if (!missing.empty()) {
        std::string msg = "incomplete matrix, missing cells:";
        for (const auto& m : missing) msg += " " + m;
        throw consensus_error(msg);
    }

    bool allImportance = std::all_of(rawCells.begin(), rawCells.end(), [](const std::string& c) {
        return parse_importance_cell(c).has_value();
    });
    RatingKind kind = allImportance ? RatingKind::Importance : RatingKind::QaImpact;

    std::vector<std::uint8_t> cells;
    cells.reserve(rawCells.size());
    for (std::size_t i = 0; i < rawCells.size(); ++i) {
        auto parsed = kind == RatingKind::Importance ? parse_importance_cell(rawCells[i])
                                                     : parse_qa_cell(rawCells[i]);
        if (!parsed) {
            throw consensus_error("unparseable rating cell \"" + rawCells[i] + "\" for participant \"" +
                                  participants[i / ruleIds.size()] + "\"");
        }
        cells.push_back(*parsed);
    }
    return create(kind, iteration, std::move(participants), std::move(ruleIds), std::move(cells));
}

bool RatingMatrix::same_shape(const RatingMatrix& other) const {
    return kind_ == other.kind_ && participants_ == other.participants_ && rule_ids_ == other.rule_ids_;
}

std::string_view to_string(KappaBand band) {
    switch (band) {
        case KappaBand::Poor: return "poor";
        case KappaBand::Slight: return "slight";
        case KappaBand::Fair: return "fair";
        case KappaBand::Moderate: return "moderate";
        case KappaBand::Substantial: return "substantial";
        case KappaBand::AlmostPerfect: return "almost perfect";
    }
    return "?";
}

KappaBand landis_koch_band(double kappa) {
    if (kappa < 0.0) return KappaBand::Poor;
    if (kappa < 0.21) return KappaBand::Slight;
    if (kappa < 0.41) return KappaBand::Fair;
    if (kappa < 0.61) return KappaBand::Moderate;
    if (kappa < 0.81) return KappaBand::Substantial;
    return KappaBand::AlmostPerfect;
}

ConsensusResult consensus(const RatingMatrix& matrix, double threshold) {
    if (threshold <= 0.0 || threshold > 1.0) {
        throw consensus_error("consensus threshold must be in (0, 1]");
    }
    ConsensusResult result;
    result.kind = matrix.kind();
    const std::size_t participants = matrix.participant_count();
    std::size_t agreed = 0;

    for (std::size_t r = 0; r < matrix.rule_count(); ++r) {
        RuleConsensus rc;
        for (std::size_t p = 0; p < participants; ++p) {
            ++rc.vote_histogram[matrix.cell(p, r)];
        }
        int best = 0;
        int bestCount = 0;
        bool tie = false;
        std::uint8_t bestValue = 0;
        for (const auto& [value, count] : rc.vote_histogram) {
            if (count > bestCount) {
                bestCount = count;
                bestValue = value;
                tie = false;
            } else if (count == bestCount) {
                tie = true;
            }
            best = std::max(best, count);
        }
        (void)best;
        const bool reached =
            !tie && static_cast<double>(bestCount) >= threshold * static_cast<double>(participants) - 1e-9;
        rc.consensus = reached;
        if (reached) {
            rc.majority_value = bestValue;
            ++agreed;
        }
        result.per_rule.emplace(matrix.rule_ids()[r], std::move(rc));
    }
    result.agreement_fraction =
        static_cast<double>(agreed) / static_cast<double>(matrix.rule_count());
    return result;
}

namespace {

bool stop_from_history(const std::vector<double>& history, double current) {
    if (history.empty()) return false;
    return current >= 0.90 && history.back() >= 0.90;
}

}  // namespace

StabilityResult weighted_kappa(const RatingMatrix& prev, const RatingMatrix& next,
                               const std::vector<double>& history) {
    if (prev.kind() != RatingKind::Importance || next.kind() != RatingKind::Importance) {
        throw consensus_error("weighted kappa applies to importance matrices");
    }
    if (!prev.same_shape(next)) {
        throw consensus_error("rating matrices have mismatched shapes");
    }

    const auto& a = prev.cells();
    const auto& b = next.cells();
    const long long n = static_cast<long long>(a.size());

    // Integer accumulation keeps the result independent of iteration order.
    long long observed = 0;
    std::array<long long, 3> marginPrev{0, 0, 0};
    std::array<long long, 3> marginNext{0, 0, 0};
#pragma omp parallel
    {
        long long localObserved = 0;
        std::array<long long, 3> localPrev{0, 0, 0};
        std::array<long long, 3> localNext{0, 0, 0};
#pragma omp for nowait
        for (long long i = 0; i < n; ++i) {
            const int ra = a[static_cast<std::size_t>(i)];
            const int rb = b[static_cast<std::size_t>(i)];
            localObserved += std::abs(ra - rb);
            ++localPrev[static_cast<std::size_t>(ra)];
            ++localNext[static_cast<std::size_t>(rb)];
        }
#pragma omp critical
        {
            observed += localObserved;
            for (int v = 0; v < 3; ++v) {
                marginPrev[static_cast<std::size_t>(v)] += localPrev[static_cast<std::size_t>(v)];
                marginNext[static_cast<std::size_t>(v)] += localNext[static_cast<std::size_t>(v)];
            }
        }
    }

    // E = sum_{i,j} cnt_prev[i] * cnt_next[j] * w(i,j) / n
    long long expectedNumerator = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            expectedNumerator += marginPrev[static_cast<std::size_t>(i)] *
                                 marginNext[static_cast<std::size_t>(j)] * std::abs(i - j);
        }
    }

    StabilityResult result;
    if (expectedNumerator == 0) {
        // Both iterations constant and equal: perfect, if degenerate, agreement.
        result.kappa = 1.0;
    } else {
        const double expected = static_cast<double>(expectedNumerator) / static_cast<double>(n);
        result.kappa = 1.0 - static_cast<double>(observed) / expected;
    }
    result.band = landis_koch_band(result.kappa);
    result.stop_recommended = stop_from_history(history, result.kappa);
    return result;
}

StabilityResult unweighted_kappa(const RatingMatrix& prev, const RatingMatrix& next,
                                 const std::vector<double>& history) {
    if (prev.kind() != RatingKind::QaImpact || next.kind() != RatingKind::QaImpact) {
        throw consensus_error("unweighted kappa applies to qa-impact matrices");
    }
    if (!prev.same_shape(next)) {
        throw consensus_error("rating matrices have mismatched shapes");
    }

    const auto& a = prev.cells();
    const auto& b = next.cells();
    const long long n = static_cast<long long>(a.size());

    long long agree = 0;
    std::array<long long, 256> marginPrev{};
    std::array<long long, 256> marginNext{};
    for (long long i = 0; i < n; ++i) {
        const std::uint8_t ra = a[static_cast<std::size_t>(i)];
        const std::uint8_t rb = b[static_cast<std::size_t>(i)];
        if (ra == rb) ++agree;
        ++marginPrev[ra];
        ++marginNext[rb];
    }
    long long expectedNumerator = 0;
    for (int v = 0; v < 256; ++v) {
        expectedNumerator += marginPrev[static_cast<std::size_t>(v)] * marginNext[static_cast<std::size_t>(v)];
    }

    const double po = static_cast<double>(agree) / static_cast<double>(n);
    const double pe = static_cast<double>(expectedNumerator) / (static_cast<double>(n) * static_cast<double>(n));

    StabilityResult result;
    if (pe >= 1.0 - 1e-15) {
        result.kappa = 1.0;
    } else {
        result.kappa = (po - pe) / (1.0 - pe);
    }
    result.band = landis_koch_band(result.kappa);
    result.stop_recommended = stop_from_history(history, result.kappa);
    return result;
}

std::vector<CatalogOverride> derive_weights(const ConsensusResult& result) {
    if (result.kind != RatingKind::Importance) {
        throw consensus_error("weight derivation needs an importance-kind result");
    }
    std::vector<int> open;
    for (const auto& [ruleId, rc] : result.per_rule) {
        if (!rc.consensus) open.push_back(ruleId);
    }
    if (!open.empty()) {
        std::string msg = "no consensus yet on rules:";
        for (int id : open) msg += " " + std::to_string(id);
        throw consensus_error(msg);
    }
    std::vector<CatalogOverride> overrides;
    for (const auto& [ruleId, rc] : result.per_rule) {
        CatalogOverride o;
        o.rule_id = ruleId;
        o.importance_override = static_cast<Importance>(*rc.majority_value);
        overrides.push_back(o);
    }
    return overrides;
}

}  // namespace restlint
