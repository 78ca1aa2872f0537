#include "restlint/scoring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace restlint {

using nlohmann::json;

namespace {

double importance_weight(Importance importance) {
    switch (importance) {
        case Importance::High: return 3.0;
        case Importance::Medium: return 2.0;
        case Importance::Low: return 1.0;
    }
    return 1.0;
}

}  // namespace

EvaluationReport score(const std::vector<RuleOutcome>& outcomes, const RuleCatalog& catalog) {
    EvaluationReport report;
    report.outcomes = outcomes;

    for (const RuleOutcome& outcome : outcomes) {
        if (!catalog.find(outcome.rule_id)) {
            throw scoring_error("outcome references rule " + std::to_string(outcome.rule_id) +
                                " absent from the catalog");
        }
    }

    for (Qa qa : all_qa_attributes()) {
        double denominator = 0.0;
        double numerator = 0.0;
        for (const RuleOutcome& outcome : outcomes) {
            if (outcome.outcome != Outcome::Pass && outcome.outcome != Outcome::Violation) continue;
            const Rule& rule = catalog.at(outcome.rule_id);
            if (!rule.qa_impact.contains(qa)) continue;
            const double w = importance_weight(rule.importance);
            denominator += w;
            if (outcome.outcome == Outcome::Violation) numerator += w;
        }
        if (denominator == 0.0) {
            report.qa_scores[qa] = std::nullopt;
        } else {
            report.qa_scores[qa] = 1.0 - numerator / denominator;
        }
    }

    for (const RuleOutcome& outcome : outcomes) {
        for (const Finding& f : outcome.findings) {
            switch (f.severity) {
                case Severity::Error: ++report.summary.errors; break;
                case Severity::Warning: ++report.summary.warnings; break;
                case Severity::Info: ++report.summary.infos; break;
            }
        }
        if (outcome.outcome == Outcome::NeedsDynamic) ++report.summary.needs_dynamic;
        if (outcome.outcome == Outcome::NotApplicable) ++report.summary.not_applicable;

        if (outcome.subjects_checked > 0) {
            std::set<std::string> dirty;
            for (const Finding& f : outcome.findings) dirty.insert(f.location.to_display());
            const std::size_t flagged = std::min(outcome.subjects_checked, dirty.size());
            report.compliance_ratio[outcome.rule_id] =
                static_cast<double>(outcome.subjects_checked - flagged) /
                static_cast<double>(outcome.subjects_checked);
        }
    }
    return report;
}

namespace {

json location_json(const FindingLocation& loc) {
    if (loc.is_exchange) {
        return json{{"exchange", loc.exchange_index}};
    }
    return json{{"file", loc.source.file}, {"pointer", loc.source.pointer}, {"line", loc.source.line}};
}

FindingLocation location_from(const json& in) {
    FindingLocation loc;
    if (in.contains("exchange")) {
        loc.is_exchange = true;
        loc.exchange_index = in["exchange"].get<std::size_t>();
    } else {
        loc.source.file = in.value("file", "");
        loc.source.pointer = in.value("pointer", "");
        loc.source.line = in.value("line", 0);
    }
    return loc;
}

}  // namespace

std::string render_json(const EvaluationReport& report) {
    json doc;
    doc["schema_version"] = 1;
    doc["api_title"] = report.api_title;
    doc["maturity_level"] = report.maturity_level;

    json scores;
    for (const auto& [qa, value] : report.qa_scores) {
        if (value) {
            scores[std::string(to_string(qa))] = *value;
        } else {
            scores[std::string(to_string(qa))] = nullptr;
        }
    }
    doc["qa_scores"] = scores;

    doc["summary"] = json{{"errors", report.summary.errors},
                          {"warnings", report.summary.warnings},
                          {"infos", report.summary.infos},
                          {"needs_dynamic", report.summary.needs_dynamic},
                          {"not_applicable", report.summary.not_applicable}};

    json rules = json::array();
    for (const RuleOutcome& outcome : report.outcomes) {
        json r;
        r["id"] = outcome.rule_id;
        r["outcome"] = std::string(to_string(outcome.outcome));
        r["subjects_checked"] = outcome.subjects_checked;
        r["dynamic_evidence"] = outcome.dynamic_evidence;
        if (!outcome.engine_note.empty()) r["engine_note"] = outcome.engine_note;
        auto ratio = report.compliance_ratio.find(outcome.rule_id);
        if (ratio != report.compliance_ratio.end()) r["compliance_ratio"] = ratio->second;
        json findings = json::array();
        for (const Finding& f : outcome.findings) {
            findings.push_back(json{{"severity", std::string(to_string(f.severity))},
                                    {"location", location_json(f.location)},
                                    {"message", f.message},
                                    {"evidence", f.evidence},
                                    {"remediation", f.remediation}});
        }
        r["findings"] = findings;
        rules.push_back(r);
    }
    doc["rules"] = rules;
    return doc.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text) {
    const json doc = json::parse(text);
    EvaluationReport report;
    report.api_title = doc.at("api_title").get<std::string>();
    report.maturity_level = doc.at("maturity_level").get<int>();
    for (const auto& [name, value] : doc.at("qa_scores").items()) {
        auto qa = qa_from_string(name);
        if (!qa) continue;
        if (value.is_null()) {
            report.qa_scores[*qa] = std::nullopt;
        } else {
            report.qa_scores[*qa] = value.get<double>();
        }
    }
    const json& summary = doc.at("summary");
    report.summary.errors = summary.at("errors").get<std::size_t>();
    report.summary.warnings = summary.at("warnings").get<std::size_t>();
    report.summary.infos = summary.at("infos").get<std::size_t>();
    report.summary.needs_dynamic = summary.at("needs_dynamic").get<std::size_t>();
    report.summary.not_applicable = summary.at("not_applicable").get<std::size_t>();

    for (const auto& r : doc.at("rules")) {
        RuleOutcome outcome;
        outcome.rule_id = r.at("id").get<int>();
        const std::string o = r.at("outcome").get<std::string>();
        if (o == "pass") outcome.outcome = Outcome::Pass;
        else if (o == "violation") outcome.outcome = Outcome::Violation;
        else if (o == "advisory") outcome.outcome = Outcome::Advisory;
        else if (o == "needs_dynamic") outcome.outcome = Outcome::NeedsDynamic;
        else outcome.outcome = Outcome::NotApplicable;
        outcome.subjects_checked = r.at("subjects_checked").get<std::size_t>();
        outcome.dynamic_evidence = r.at("dynamic_evidence").get<std::size_t>();
        outcome.engine_note = r.value("engine_note", "");
        if (r.contains("compliance_ratio")) {
            report.compliance_ratio[outcome.rule_id] = r["compliance_ratio"].get<double>();
        }
        for (const auto& f : r.at("findings")) {
            Finding finding;
            finding.rule_id = outcome.rule_id;
            const std::string sev = f.at("severity").get<std::string>();
            finding.severity = sev == "error" ? Severity::Error
                               : sev == "warning" ? Severity::Warning
                                                  : Severity::Info;
            finding.location = location_from(f.at("location"));
            finding.message = f.at("message").get<std::string>();
            finding.evidence = f.at("evidence").get<std::string>();
            finding.remediation = f.at("remediation").get<std::string>();
            outcome.findings.push_back(std::move(finding));
        }
        report.outcomes.push_back(std::move(outcome));
    }
    return report;
}

std::string render_text(const EvaluationReport& report, const RuleCatalog& catalog) {
    std::ostringstream out;
    out << "API: " << (report.api_title.empty() ? "<untitled>" : report.api_title) << "\n";
    out << "Richardson maturity: level " << report.maturity_level << "\n\n";

    out << "Quality attribute scores\n";
    for (const auto& [qa, value] : report.qa_scores) {
        out << "  " << to_string(qa) << ": ";
        if (value) {
            std::ostringstream v;
            v.precision(3);
            v << std::fixed << *value;
            out << v.str();
        } else {
            out << "not applicable";
        }
        out << "\n";
    }
    out << "\nSummary: " << report.summary.errors << " error(s), " << report.summary.warnings
        << " warning(s), " << report.summary.infos << " info note(s), " << report.summary.needs_dynamic
        << " rule(s) need dynamic evidence, " << report.summary.not_applicable
        << " not applicable\n";

    bool anyFindings = false;
    for (const RuleOutcome& outcome : report.outcomes) {
        if (outcome.findings.empty()) continue;
        if (!anyFindings) {
            out << "\nFindings\n";
            anyFindings = true;
        }
        const Rule* rule = catalog.find(outcome.rule_id);
        out << "  rule " << outcome.rule_id;
        if (rule) out << " (" << rule->text << ")";
        out << " -> " << to_string(outcome.outcome);
        auto ratio = report.compliance_ratio.find(outcome.rule_id);
        if (ratio != report.compliance_ratio.end() && outcome.subjects_checked > 0) {
            std::ostringstream v;
            v.precision(2);
            v << std::fixed << ratio->second;
            out << " [compliance " << v.str() << "]";
        }
        out << "\n";
        for (const Finding& f : outcome.findings) {
            out << "    [" << to_string(f.severity) << "] " << f.location.to_display() << "\n";
            out << "      " << f.message << "\n";
            if (!f.evidence.empty()) out << "      evidence: " << f.evidence << "\n";
            if (!f.remediation.empty()) out << "      fix: " << f.remediation << "\n";
        }
    }
    if (!anyFindings) out << "\nNo findings.\n";
    return out.str();
}

}  // namespace restlint
