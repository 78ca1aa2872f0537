#include "restlint/linguistics.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace restlint {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

Lexicon build_default_lexicon() {
    Lexicon lex;
    lex.crud_verbs = {"get",    "retrieve", "fetch",  "read",   "create", "add",
                      "insert", "update",   "set",    "modify", "delete", "remove",
                      "destroy"};
    lex.common_verbs = {
        "activate", "deactivate", "promote",  "demote",   "cancel",    "approve",  "reject",
        "submit",   "publish",    "archive",  "restore",  "execute",   "run",      "start",
        "stop",     "pause",      "resume",   "reset",    "refresh",   "search",   "login",
        "logout",   "register",   "verify",   "validate", "send",      "notify",   "sync",
        "export",   "import",     "merge",    "clone",    "duplicate", "process",  "calculate",
        "compute",  "convert",    "translate","move",     "copy",      "upload",   "download",
        "checkout", "purchase",   "assign",   "unassign", "lock",      "unlock",   "enable",
        "disable",  "invite",     "accept",   "decline",  "retry",     "replay",   "rotate"};
    lex.irregular_plurals = {
        {"person", "people"},   {"child", "children"},  {"man", "men"},
        {"woman", "women"},     {"foot", "feet"},       {"tooth", "teeth"},
        {"goose", "geese"},     {"mouse", "mice"},      {"criterion", "criteria"},
        {"medium", "media"},    {"index", "indices"},   {"appendix", "appendices"},
        {"phenomenon", "phenomena"}, {"analysis", "analyses"}, {"basis", "bases"},
        {"life", "lives"},      {"leaf", "leaves"},     {"shelf", "shelves"},
        {"half", "halves"},     {"category", "categories"}};
    lex.uncountable = {"information", "equipment", "software", "music",  "money", "series",
                       "species",     "news",      "metadata", "data",   "staff", "feedback",
                       "content",     "health",    "status"};
    return lex;
}

}  // namespace

const Lexicon& default_lexicon() {
    static const Lexicon lex = build_default_lexicon();
    return lex;
}

Lexicon load_lexicon(std::string_view json_text) {
    Lexicon lex = default_lexicon();
    nlohmann::json doc = nlohmann::json::parse(json_text);
    if (doc.contains("crud_verbs")) {
        for (const auto& v : doc["crud_verbs"]) lex.crud_verbs.insert(to_lower(v.get<std::string>()));
    }
    if (doc.contains("common_verbs")) {
        for (const auto& v : doc["common_verbs"]) lex.common_verbs.insert(to_lower(v.get<std::string>()));
    }
    if (doc.contains("irregular_plurals")) {
        for (const auto& [sing, plur] : doc["irregular_plurals"].items()) {
            lex.irregular_plurals[to_lower(sing)] = to_lower(plur.get<std::string>());
        }
    }
    if (doc.contains("uncountable")) {
        for (const auto& v : doc["uncountable"]) lex.uncountable.insert(to_lower(v.get<std::string>()));
    }
    return lex;
}

NounNumber classify_number(const std::string& token, const Lexicon& lexicon) {
    if (token.empty()) return NounNumber::Unknown;
    for (char c : token) {
        if (!is_alpha(c)) return NounNumber::Unknown;
    }
    if (lexicon.irregular_plurals.count(token)) return NounNumber::Singular;
    for (const auto& [sing, plur] : lexicon.irregular_plurals) {
        if (plur == token) return NounNumber::Plural;
    }
    if (lexicon.uncountable.count(token)) return NounNumber::Unknown;

    auto ends_with = [&](std::string_view suffix) {
        return token.size() >= suffix.size() &&
               token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("ss")) return NounNumber::Singular;   // class, address
    if (ends_with("is")) return NounNumber::Singular;   // basis
    if (ends_with("us")) return NounNumber::Singular;   // campus, corpus
    if (ends_with("ies") && token.size() >= 4) return NounNumber::Plural;
    if (ends_with("es")) {
        const std::string base = token.substr(0, token.size() - 2);
        auto base_ends = [&](std::string_view s) {
            return base.size() >= s.size() && base.compare(base.size() - s.size(), s.size(), s) == 0;
        };
        if (base_ends("s") || base_ends("x") || base_ends("z") || base_ends("ch") || base_ends("sh")) {
            return NounNumber::Plural;  // boxes, branches
        }
        return NounNumber::Plural;  // notes, types
    }
    if (ends_with("s")) return NounNumber::Plural;
    return NounNumber::Singular;
}

SegmentAnalysis analyze_segment(const PathSegment& segment, const Lexicon& lexicon) {
    SegmentAnalysis analysis;
    const std::string& text = segment.text;
    if (text.empty()) return analysis;

    // Extension: final dot-suffix of 1-5 alphanumerics.
    std::string stem = text;
    const std::size_t dot = text.rfind('.');
    if (dot != std::string::npos && dot + 1 < text.size()) {
        const std::string suffix = text.substr(dot + 1);
        if (suffix.size() <= 5 && std::all_of(suffix.begin(), suffix.end(), is_alnum)) {
            analysis.has_extension = true;
            stem = text.substr(0, dot);
        }
    }

    bool sawUpper = false, sawLower = false;
    for (char c : text) {
        if (is_upper(c)) sawUpper = true;
        if (is_lower(c)) sawLower = true;
    }
    analysis.casing = sawUpper ? (sawLower ? Casing::Mixed : Casing::Upper) : Casing::Lower;
    analysis.has_underscore = text.find('_') != std::string::npos;

    // Tokenize on -, _ and camel-case boundaries.
    std::vector<std::string> tokens;
    std::string current;
    bool sawSeparator = false;
    auto flush = [&]() {
        if (!current.empty()) {
            tokens.push_back(to_lower(current));
            current.clear();
        }
    };
    const std::string& src = stem.empty() ? text : stem;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const char c = src[i];
        if (c == '-' || c == '_') {
            sawSeparator = true;
            flush();
            continue;
        }
        if (!current.empty() && is_upper(c)) {
            const char prev = current.back();
            const bool nextLower = i + 1 < src.size() && is_lower(src[i + 1]);
            if (is_lower(prev) || (is_upper(prev) && nextLower)) {
                analysis.camel_boundaries = true;
                flush();
            }
        }
        current.push_back(c);
    }
    flush();
    (void)sawSeparator;
    if (tokens.empty()) tokens.push_back(to_lower(src));
    analysis.tokens = std::move(tokens);

    analysis.is_crud_verb = lexicon.is_crud(analysis.tokens.front());
    analysis.is_verb_phrase = lexicon.is_verb(analysis.tokens.front());
    analysis.number = classify_number(analysis.tokens.back(), lexicon);
    return analysis;
}

namespace {

// Structural prefix equality: literals match by text, variables match any
// variable name.
bool prefix_matches(const UriTemplate& a, const UriTemplate& b, std::size_t length) {
    if (a.segments.size() < length || b.segments.size() < length) return false;
    for (std::size_t i = 0; i < length; ++i) {
        if (a.segments[i].kind != b.segments[i].kind) return false;
        if (a.segments[i].kind == SegmentKind::Literal && a.segments[i].text != b.segments[i].text) {
            return false;
        }
    }
    return true;
}

}  // namespace

void assign_archetypes(CanonicalApiModel& model, const Lexicon& lexicon) {
    for (std::size_t t = 0; t < model.resources.size(); ++t) {
        UriTemplate& tpl = model.resources[t];
        for (std::size_t k = 0; k < tpl.segments.size(); ++k) {
            PathSegment& seg = tpl.segments[k];
            seg.archetype.reset();
            if (seg.kind == SegmentKind::Variable) {
                seg.archetype = Archetype::Document;
                continue;
            }
            const SegmentAnalysis analysis = analyze_segment(seg, lexicon);
            const bool finalSegment = k + 1 == tpl.segments.size();

            // Container evidence: a variable child segment in any template
            // sharing this prefix. Store when that child is written via a PUT
            // declaring 201.
            bool hasVariableChild = false;
            bool storeEvidence = false;
            for (std::size_t u = 0; u < model.resources.size(); ++u) {
                const UriTemplate& other = model.resources[u];
                if (other.segments.size() < k + 2) continue;
                if (!prefix_matches(other, tpl, k + 1)) continue;
                if (other.segments[k + 1].kind != SegmentKind::Variable) continue;
                hasVariableChild = true;
                if (other.segments.size() == k + 2) {
                    for (const Operation* op : model.operations_on(u)) {
                        if (op->method == HttpMethod::Put && op->responses.count(201)) {
                            storeEvidence = true;
                        }
                    }
                }
            }

            if (hasVariableChild) {
                seg.archetype = storeEvidence ? Archetype::Store : Archetype::Collection;
                continue;
            }
            if (finalSegment && analysis.is_verb_phrase) {
                seg.archetype = Archetype::Controller;
                continue;
            }
            if (k > 0 && tpl.segments[k - 1].archetype &&
                (*tpl.segments[k - 1].archetype == Archetype::Collection ||
                 *tpl.segments[k - 1].archetype == Archetype::Store)) {
                seg.archetype = Archetype::Document;  // names a concrete item
                continue;
            }
            if (analysis.number == NounNumber::Plural) {
                seg.archetype = Archetype::Collection;
            } else if (analysis.number == NounNumber::Singular) {
                seg.archetype = Archetype::Document;
            }
            // Unknown number stays unclassified.
        }
    }
}

}  // namespace restlint
