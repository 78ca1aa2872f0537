#include "restlint/catalog.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace restlint {

namespace {
using nlohmann::json;

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Rfc2119 parse_rfc2119(std::string_view text) {
    const std::string t = lowercase(text);
    if (t.find("must") != std::string::npos) return Rfc2119::Must;
    if (t.find("should") != std::string::npos) return Rfc2119::Should;
    if (t.find("may") != std::string::npos) return Rfc2119::May;
    return Rfc2119::Should;
}
}  // namespace

std::string_view to_string(Qa qa) {
    switch (qa) {
        case Qa::FunctionalSuitability: return "functional_suitability";
        case Qa::PerformanceEfficiency: return "performance_efficiency";
        case Qa::Compatibility: return "compatibility";
        case Qa::Usability: return "usability";
        case Qa::Reliability: return "reliability";
        case Qa::Security: return "security";
        case Qa::Maintainability: return "maintainability";
        case Qa::Portability: return "portability";
    }
    return "?";
}

std::optional<Qa> qa_from_string(std::string_view name) {
    for (Qa qa : all_qa_attributes()) {
        if (to_string(qa) == name) return qa;
    }
    return std::nullopt;
}

std::size_t QaSet::size() const {
    return static_cast<std::size_t>(std::popcount(bits_));
}

std::vector<Qa> QaSet::to_vector() const {
    std::vector<Qa> out;
    for (Qa qa : all_qa_attributes()) {
        if (contains(qa)) out.push_back(qa);
    }
    return out;
}

std::string_view to_string(RuleCategory c) {
    switch (c) {
        case RuleCategory::Uris: return "uris";
        case RuleCategory::Http: return "http";
        case RuleCategory::Meta: return "meta";
        case RuleCategory::Representation: return "representation";
        case RuleCategory::Client: return "client";
    }
    return "?";
}

std::string_view to_string(Importance i) {
    switch (i) {
        case Importance::Low: return "low";
        case Importance::Medium: return "medium";
        case Importance::High: return "high";
    }
    return "?";
}

std::string_view to_string(Automation a) {
    switch (a) {
        case Automation::Static: return "static";
        case Automation::Dynamic: return "dynamic";
        case Automation::Hybrid: return "hybrid";
        case Automation::Manual: return "manual";
    }
    return "?";
}

std::string_view to_string(Rfc2119 level) {
    switch (level) {
        case Rfc2119::May: return "may";
        case Rfc2119::Should: return "should";
        case Rfc2119::Must: return "must";
    }
    return "?";
}

std::optional<RuleCategory> category_from_string(std::string_view name) {
    if (name == "uris") return RuleCategory::Uris;
    if (name == "http") return RuleCategory::Http;
    if (name == "meta") return RuleCategory::Meta;
    if (name == "representation") return RuleCategory::Representation;
    if (name == "client") return RuleCategory::Client;
    return std::nullopt;
}

std::optional<Importance> importance_from_string(std::string_view name) {
    if (name == "low") return Importance::Low;
    if (name == "medium") return Importance::Medium;
    if (name == "high") return Importance::High;
    return std::nullopt;
}

std::optional<Automation> automation_from_string(std::string_view name) {
    if (name == "static") return Automation::Static;
    if (name == "dynamic") return Automation::Dynamic;
    if (name == "hybrid") return Automation::Hybrid;
    if (name == "manual") return Automation::Manual;
    return std::nullopt;
}

RuleCatalog::RuleCatalog(std::vector<Rule> rules) : rules_(std::move(rules)) {
    std::sort(rules_.begin(), rules_.end(), [](const Rule& a, const Rule& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        by_id_.emplace(rules_[i].id, i);
    }
}

const Rule* RuleCatalog::find(int id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &rules_[it->second];
}

const Rule& RuleCatalog::at(int id) const {
    const Rule* r = find(id);
    if (!r) throw catalog_error("unknown rule id " + std::to_string(id));
    return *r;
}

RuleCatalog load_catalog(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw catalog_error(std::string("catalog document does not parse: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rules") || !doc["rules"].is_array()) {
        throw catalog_error("catalog document must be an object with a \"rules\" array");
    }

    std::vector<Rule> rules;
    std::set<int> seen;
    for (const auto& entry : doc["rules"]) {
        const std::string where =
            entry.contains("id") && entry["id"].is_number_integer()
                ? "rule " + std::to_string(entry["id"].get<int>())
                : "rule <missing id>";
        if (!entry.contains("id") || !entry["id"].is_number_integer()) {
            throw catalog_error(where + ": missing or non-integer id");
        }
        Rule rule;
        rule.id = entry["id"].get<int>();
        if (rule.id < 1 || rule.id > 82) {
            throw catalog_error(where + ": id outside 1..82");
        }
        if (!seen.insert(rule.id).second) {
            throw catalog_error(where + ": duplicate id");
        }
        for (const char* field : {"text", "category", "importance"}) {
            if (!entry.contains(field) || !entry[field].is_string()) {
                throw catalog_error(where + ": missing " + field);
            }
        }
        rule.text = entry["text"].get<std::string>();
        auto cat = category_from_string(entry["category"].get<std::string>());
        if (!cat) throw catalog_error(where + ": unknown category \"" + entry["category"].get<std::string>() + "\"");
        rule.category = *cat;
        auto imp = importance_from_string(entry["importance"].get<std::string>());
        if (!imp) throw catalog_error(where + ": unknown importance \"" + entry["importance"].get<std::string>() + "\"");
        rule.importance = *imp;
        if (entry.contains("automation")) {
            auto a = automation_from_string(entry["automation"].get<std::string>());
            if (!a) throw catalog_error(where + ": unknown automation \"" + entry["automation"].get<std::string>() + "\"");
            rule.automation = *a;
        }
        if (entry.contains("qa_impact")) {
            if (!entry["qa_impact"].is_array()) throw catalog_error(where + ": qa_impact must be an array");
            for (const auto& q : entry["qa_impact"]) {
                auto qa = qa_from_string(q.get<std::string>());
                if (!qa) throw catalog_error(where + ": unknown quality attribute \"" + q.get<std::string>() + "\"");
                rule.qa_impact.insert(*qa);
            }
        }
        if (entry.contains("note")) rule.note = entry["note"].get<std::string>();
        if (entry.contains("enabled")) rule.enabled = entry["enabled"].get<bool>();
        rule.rfc2119_level = parse_rfc2119(rule.text);
        rules.push_back(std::move(rule));
    }
    return RuleCatalog(std::move(rules));
}

namespace {

struct Counter {
    std::vector<std::string>& out;

    void expect(long observed, long expected, const std::string& what) {
        if (observed != expected) {
            std::ostringstream msg;
            msg << what << " " << observed << " != " << expected;
            out.push_back(msg.str());
        }
    }
};

}  // namespace

std::vector<std::string> validate_catalog(const RuleCatalog& catalog) {
    std::vector<std::string> violations;
    Counter check{violations};

    check.expect(static_cast<long>(catalog.size()), 82, "total rule count");

    // Importance totals and the exact medium/high id sets.
    static const std::set<int> kMediumIds = {2,  6,  11, 12, 15, 20, 26, 31, 41,
                                             43, 47, 51, 54, 63, 69, 79, 82};
    static const std::set<int> kHighIds = {1,  3,  4,  5,  9,  10, 13, 14, 17, 18, 22, 23, 24, 27,
                                           28, 30, 34, 37, 38, 44, 45, 46, 57, 61, 71, 72, 73, 74};

    long low = 0, medium = 0, high = 0;
    std::set<int> mediumSeen, highSeen;
    for (const Rule& r : catalog.rules()) {
        switch (r.importance) {
            case Importance::Low: ++low; break;
            case Importance::Medium: ++medium; mediumSeen.insert(r.id); break;
            case Importance::High: ++high; highSeen.insert(r.id); break;
        }
        if (r.importance == Importance::Low && r.automation != Automation::Manual) {
            violations.push_back("rule " + std::to_string(r.id) +
                                 ": low-importance rules must have automation manual");
        }
    }
    check.expect(low, 37, "low-importance count");
    check.expect(medium, 17, "medium-importance count");
    check.expect(high, 28, "high-importance count");
    if (mediumSeen != kMediumIds) violations.push_back("medium-importance id set differs from the published set");
    if (highSeen != kHighIds) violations.push_back("high-importance id set differs from the published set");

    // Per-category importance counts (high/medium/low of total).
    struct CategoryExpectation {
        RuleCategory category;
        long high, medium, low;
    };
    static constexpr CategoryExpectation kPerCategory[] = {
        {RuleCategory::Uris, 8, 5, 3},
        {RuleCategory::Http, 13, 5, 11},
        {RuleCategory::Representation, 4, 2, 7},
        {RuleCategory::Meta, 2, 3, 10},
        {RuleCategory::Client, 1, 2, 6},
    };
    for (const auto& expected : kPerCategory) {
        long h = 0, m = 0, l = 0;
        for (const Rule& r : catalog.rules()) {
            if (r.category != expected.category) continue;
            if (r.importance == Importance::High) ++h;
            else if (r.importance == Importance::Medium) ++m;
            else ++l;
        }
        const std::string name(to_string(expected.category));
        check.expect(h, expected.high, name + " high count");
        check.expect(m, expected.medium, name + " medium count");
        check.expect(l, expected.low, name + " low count");
    }

    // QA-impact aggregates over the 45 medium/high rules.
    std::map<Qa, long> qaTotals;
    long card[5] = {0, 0, 0, 0, 0};
    long atLeast3 = 0, high3 = 0, tripleOverlap = 0;
    std::set<int> atLeast3Ids, high3Ids;
    for (const Rule& r : catalog.rules()) {
        if (r.importance == Importance::Low) {
            if (!r.qa_impact.empty()) {
                violations.push_back("rule " + std::to_string(r.id) +
                                     ": low-importance rules carry no rated qa_impact");
            }
            continue;
        }
        for (Qa qa : r.qa_impact.to_vector()) ++qaTotals[qa];
        const std::size_t n = r.qa_impact.size();
        if (n >= 1 && n <= 4) ++card[n];
        else violations.push_back("rule " + std::to_string(r.id) + ": qa_impact cardinality outside 1..4");
        if (n >= 3) {
            ++atLeast3;
            atLeast3Ids.insert(r.id);
            if (r.importance == Importance::High) {
                ++high3;
                high3Ids.insert(r.id);
            }
        }
        if (r.qa_impact.contains(Qa::Usability) && r.qa_impact.contains(Qa::Maintainability) &&
            r.qa_impact.contains(Qa::Compatibility)) {
            ++tripleOverlap;
        }
    }
    check.expect(qaTotals[Qa::Usability], 35, "usability total");
    check.expect(qaTotals[Qa::Maintainability], 35, "maintainability total");
    check.expect(qaTotals[Qa::Compatibility], 26, "compatibility total");
    check.expect(qaTotals[Qa::FunctionalSuitability], 7, "functional-suitability total");
    check.expect(qaTotals[Qa::PerformanceEfficiency], 3, "performance-efficiency total");
    check.expect(qaTotals[Qa::Reliability], 1, "reliability total");
    check.expect(qaTotals[Qa::Portability], 1, "portability total");
    if (qaTotals[Qa::Security] != 0) {
        std::ostringstream msg;
        msg << "security must have 0 rules (observed " << qaTotals[Qa::Security] << ")";
        violations.push_back(msg.str());
    }
    check.expect(card[1], 10, "rules touching 1 QA");
    check.expect(card[2], 12, "rules touching 2 QAs");
    check.expect(card[3], 18, "rules touching 3 QAs");
    check.expect(card[4], 5, "rules touching 4 QAs");
    long assignments = 0;
    for (auto& [qa, n] : qaTotals) assignments += n;
    check.expect(assignments, 108, "total QA assignments");

    check.expect(atLeast3, 23, "rules touching >=3 QAs");
    for (const Rule& r : catalog.rules()) {
        if (r.category == RuleCategory::Http && r.importance != Importance::Low &&
            !atLeast3Ids.count(r.id)) {
            violations.push_back("rule " + std::to_string(r.id) +
                                 ": medium/high HTTP rules must touch >=3 QAs");
        }
    }
    check.expect(high3, 17, "high-importance rules touching >=3 QAs");
    {
        std::set<int> expectedHigh3;
        for (const Rule& r : catalog.rules()) {
            if (r.category == RuleCategory::Http && r.importance == Importance::High)
                expectedHigh3.insert(r.id);
        }
        expectedHigh3.insert({71, 72, 73, 57});
        if (high3 == 17 && high3Ids != expectedHigh3) {
            violations.push_back(
                "the 17 high >=3-QA rules must be the 13 HTTP high rules plus 71-73 and 57");
        }
    }
    check.expect(tripleOverlap, 21, "usability+maintainability+compatibility overlap");

    long uriM = 0, uriU = 0, reprU = 0, reprC = 0, reprM = 0;
    for (const Rule& r : catalog.rules()) {
        if (r.importance == Importance::Low) continue;
        if (r.category == RuleCategory::Uris) {
            if (r.qa_impact.contains(Qa::Maintainability)) ++uriM;
            if (r.qa_impact.contains(Qa::Usability)) ++uriU;
        } else if (r.category == RuleCategory::Representation) {
            if (r.qa_impact.contains(Qa::Usability)) ++reprU;
            if (r.qa_impact.contains(Qa::Compatibility)) ++reprC;
            if (r.qa_impact.contains(Qa::Maintainability)) ++reprM;
        } else if (r.category == RuleCategory::Meta) {
            if (r.qa_impact.contains(Qa::Maintainability)) {
                violations.push_back("rule " + std::to_string(r.id) +
                                     ": metadata rules are not associated with maintainability");
            }
        }
    }
    check.expect(uriM, 12, "URI rules impacting maintainability");
    check.expect(uriU, 7, "URI rules impacting usability");
    check.expect(reprU, 6, "representation rules impacting usability");
    check.expect(reprC, 5, "representation rules impacting compatibility");
    check.expect(reprM, 4, "representation rules impacting maintainability");

    // Contested vectors exclude functional suitability and say so.
    for (int id : {54, 61}) {
        const Rule* r = catalog.find(id);
        if (!r) continue;
        if (r->qa_impact.contains(Qa::FunctionalSuitability)) {
            violations.push_back("rule " + std::to_string(id) +
                                 ": contested functional-suitability impact must stay excluded");
        }
        if (r->note.find("contested") == std::string::npos) {
            violations.push_back("rule " + std::to_string(id) + ": missing contested-impact provenance note");
        }
    }

    return violations;
}

RuleCatalog apply_overrides(const RuleCatalog& catalog, const std::vector<CatalogOverride>& overrides) {
    for (const CatalogOverride& o : overrides) {
        if (!catalog.find(o.rule_id)) {
            throw catalog_error("override references unknown rule id " + std::to_string(o.rule_id));
        }
    }
    std::vector<Rule> rules = catalog.rules();
    for (const CatalogOverride& o : overrides) {
        auto it = std::find_if(rules.begin(), rules.end(),
                               [&](const Rule& r) { return r.id == o.rule_id; });
        if (o.enabled) it->enabled = *o.enabled;
        if (o.importance_override) it->importance = *o.importance_override;
        if (o.qa_override) it->qa_impact = *o.qa_override;
    }
    RuleCatalog result(std::move(rules));
    result.warnings_ = validate_catalog(result);
    return result;
}

std::vector<CatalogOverride> load_overrides(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw catalog_error(std::string("override document does not parse: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("overrides") || !doc["overrides"].is_array()) {
        throw catalog_error("override document must be an object with an \"overrides\" array");
    }
    std::vector<CatalogOverride> out;
    for (const auto& entry : doc["overrides"]) {
        CatalogOverride o;
        if (!entry.contains("rule_id") || !entry["rule_id"].is_number_integer()) {
            throw catalog_error("override entry missing rule_id");
        }
        o.rule_id = entry["rule_id"].get<int>();
        if (entry.contains("enabled")) o.enabled = entry["enabled"].get<bool>();
        if (entry.contains("importance")) {
            auto imp = importance_from_string(entry["importance"].get<std::string>());
            if (!imp) throw catalog_error("override for rule " + std::to_string(o.rule_id) + ": unknown importance");
            o.importance_override = imp;
        }
        if (entry.contains("qa_impact")) {
            QaSet set;
            for (const auto& q : entry["qa_impact"]) {
                auto qa = qa_from_string(q.get<std::string>());
                if (!qa) throw catalog_error("override for rule " + std::to_string(o.rule_id) + ": unknown quality attribute");
                set.insert(*qa);
            }
            o.qa_override = set;
        }
        out.push_back(o);
    }
    return out;
}

std::string overrides_to_json(const std::vector<CatalogOverride>& overrides) {
    json arr = json::array();
    for (const CatalogOverride& o : overrides) {
        json entry;
        entry["rule_id"] = o.rule_id;
        if (o.enabled) entry["enabled"] = *o.enabled;
        if (o.importance_override) entry["importance"] = std::string(to_string(*o.importance_override));
        if (o.qa_override) {
            json qas = json::array();
            for (Qa qa : o.qa_override->to_vector()) qas.push_back(std::string(to_string(qa)));
            entry["qa_impact"] = qas;
        }
        arr.push_back(entry);
    }
    json doc;
    doc["overrides"] = arr;
    return doc.dump(2) + "\n";
}

}  // namespace restlint
