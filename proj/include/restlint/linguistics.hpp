#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "restlint/api_model.hpp"

namespace restlint {

enum class Casing { Lower, Upper, Mixed };
enum class NounNumber { Singular, Plural, Unknown };

struct Lexicon {
    std::set<std::string> crud_verbs;
    std::set<std::string> common_verbs;              // controller detection beyond CRUD
    std::map<std::string, std::string> irregular_plurals;  // singular -> plural
    std::set<std::string> uncountable;

    bool is_crud(const std::string& token) const { return crud_verbs.count(token) > 0; }
    bool is_verb(const std::string& token) const {
        return crud_verbs.count(token) > 0 || common_verbs.count(token) > 0;
    }
};

// Shipped English defaults; entries from a lexicon file are added on top.
const Lexicon& default_lexicon();
Lexicon load_lexicon(std::string_view json_text);

struct SegmentAnalysis {
    std::vector<std::string> tokens;  // lowercased, split on -/_/camel boundaries
    Casing casing = Casing::Lower;
    NounNumber number = NounNumber::Unknown;
    bool is_crud_verb = false;
    bool is_verb_phrase = false;
    bool has_extension = false;
    bool has_underscore = false;
    bool camel_boundaries = false;  // tokens were joined without a separator
};

SegmentAnalysis analyze_segment(const PathSegment& segment, const Lexicon& lexicon);

// Noun-number heuristic on a single lowercase token: irregulars first, then
// uncountables (unknown), then -s/-es/-ies suffix handling.
NounNumber classify_number(const std::string& token, const Lexicon& lexicon);

// Assigns resource archetypes to every segment of every template, left to
// right. Variable segments are documents; a literal whose child segment (in
// any template sharing the prefix) is a variable is a collection, or a store
// when that child is written via PUT declaring 201; a final verb-phrase
// literal is a controller; a literal directly under a collection/store names
// a concrete document; remaining literals classify by noun number.
void assign_archetypes(CanonicalApiModel& model, const Lexicon& lexicon);

}  // namespace restlint
