#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace restlint {

// The eight ISO 25010 top-level quality attributes.
enum class Qa : std::uint8_t {
    FunctionalSuitability = 0,
    PerformanceEfficiency,
    Compatibility,
    Usability,
    Reliability,
    Security,
    Maintainability,
    Portability,
};

inline constexpr std::size_t kQaCount = 8;

constexpr std::array<Qa, kQaCount> all_qa_attributes() {
    return {Qa::FunctionalSuitability, Qa::PerformanceEfficiency, Qa::Compatibility,
            Qa::Usability,             Qa::Reliability,           Qa::Security,
            Qa::Maintainability,       Qa::Portability};
}

std::string_view to_string(Qa qa);
std::optional<Qa> qa_from_string(std::string_view name);

// Bitset over the eight attributes.
class QaSet {
public:
    QaSet() = default;
    QaSet(std::initializer_list<Qa> attrs) {
        for (Qa a : attrs) insert(a);
    }

    void insert(Qa a) { bits_ |= mask(a); }
    void erase(Qa a) { bits_ &= static_cast<std::uint8_t>(~mask(a)); }
    bool contains(Qa a) const { return (bits_ & mask(a)) != 0; }
    std::size_t size() const;
    bool empty() const { return bits_ == 0; }
    std::uint8_t raw() const { return bits_; }

    friend bool operator==(QaSet lhs, QaSet rhs) { return lhs.bits_ == rhs.bits_; }
    friend bool operator!=(QaSet lhs, QaSet rhs) { return lhs.bits_ != rhs.bits_; }
    friend bool operator<(QaSet lhs, QaSet rhs) { return lhs.bits_ < rhs.bits_; }

    std::vector<Qa> to_vector() const;

private:
    static std::uint8_t mask(Qa a) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(a)); }
    std::uint8_t bits_ = 0;
};

enum class RuleCategory { Uris, Http, Meta, Representation, Client };
enum class Importance { Low, Medium, High };
enum class Automation { Static, Dynamic, Hybrid, Manual };
enum class Rfc2119 { May, Should, Must };

std::string_view to_string(RuleCategory c);
std::string_view to_string(Importance i);
std::string_view to_string(Automation a);
std::string_view to_string(Rfc2119 level);
std::optional<RuleCategory> category_from_string(std::string_view name);
std::optional<Importance> importance_from_string(std::string_view name);
std::optional<Automation> automation_from_string(std::string_view name);

struct Rule {
    int id = 0;
    std::string text;
    RuleCategory category = RuleCategory::Uris;
    Importance importance = Importance::Low;
    QaSet qa_impact;
    Automation automation = Automation::Manual;
    Rfc2119 rfc2119_level = Rfc2119::Should;
    std::string note;     // provenance note, e.g. the contested 54/61 vectors
    bool enabled = true;  // cleared by overrides or --disable
};

struct CatalogOverride {
    int rule_id = 0;
    std::optional<bool> enabled;
    std::optional<Importance> importance_override;
    std::optional<QaSet> qa_override;
};

// Immutable after load; shared freely across concurrent evaluations.
class RuleCatalog {
public:
    explicit RuleCatalog(std::vector<Rule> rules);

    const Rule* find(int id) const;
    const Rule& at(int id) const;  // throws catalog_error on unknown id
    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }

    // Warnings attached by apply_overrides (validation is not re-enforced).
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    friend RuleCatalog apply_overrides(const RuleCatalog&, const std::vector<CatalogOverride>&);
    std::vector<Rule> rules_;             // sorted by id
    std::map<int, std::size_t> by_id_;
    std::vector<std::string> warnings_;
};

struct catalog_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a catalog document (JSON text). Throws catalog_error naming the
// offending entry on duplicate id / unknown category / unknown importance /
// missing fields.
RuleCatalog load_catalog(std::string_view json_text);

// The shipped 82-rule catalog.
const RuleCatalog& shipped_catalog();
std::string_view shipped_catalog_json();

// One violation per failed paper-derived constraint, naming observed vs
// expected counts. Empty for the shipped catalog.
std::vector<std::string> validate_catalog(const RuleCatalog& catalog);

// Returns a new catalog with overridden fields replaced. Unknown rule ids
// throw catalog_error. The input catalog is never mutated; validation
// violations of the result are attached as warnings, not errors.
RuleCatalog apply_overrides(const RuleCatalog& catalog, const std::vector<CatalogOverride>& overrides);

// Parses an override document (JSON text).
std::vector<CatalogOverride> load_overrides(std::string_view json_text);
std::string overrides_to_json(const std::vector<CatalogOverride>& overrides);

}  // namespace restlint
