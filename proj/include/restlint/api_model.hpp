#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace restlint {

struct SourceLocation {
    std::string file;
    std::string pointer;  // JSON pointer into the source document
    int line = 0;         // 0 = unknown
    std::string to_display() const;
    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

enum class HttpMethod { Get, Post, Put, Delete, Patch, Head, Options };

std::string_view to_string(HttpMethod m);
std::optional<HttpMethod> method_from_string(std::string_view name);

enum class SegmentKind { Literal, Variable };
enum class Archetype { Document, Collection, Store, Controller };

std::string_view to_string(Archetype a);

struct PathSegment {
    SegmentKind kind = SegmentKind::Literal;
    std::string text;  // literal text or variable name
    std::optional<Archetype> archetype;
    friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

// Canonical recursive structural fingerprint of a schema or instance body.
// Property order never matters; equal fingerprints mean equal shapes.
struct SchemaShape {
    enum class Kind { Object, Array, String, Integer, Number, Boolean, Null, Any, Cycle };
    Kind kind = Kind::Any;
    std::vector<std::pair<std::string, SchemaShape>> properties;  // sorted by name
    std::vector<SchemaShape> items;                               // 0 or 1 entries
    bool hypermedia_hint = false;

    std::string fingerprint() const;
    std::size_t property_count() const;  // total named members, recursively
    friend bool operator==(const SchemaShape&, const SchemaShape&) = default;
};

// Shape from an OpenAPI schema object ($ref resolved within root_document,
// cycles marked instead of recursed) and from a concrete JSON body.
SchemaShape shape_from_schema(const nlohmann::json& schema, const nlohmann::json& root_document,
                              const std::vector<std::string>& link_markers);
SchemaShape shape_from_instance(const nlohmann::json& value,
                                const std::vector<std::string>& link_markers);

struct ResponseDecl {
    int status = 0;
    std::set<std::string> media_types;
    std::set<std::string> headers_declared;  // lowercase header names
    std::optional<SchemaShape> body_schema;
    bool has_content_key = false;  // "content" present in the source, possibly empty
    SourceLocation location;
    friend bool operator==(const ResponseDecl&, const ResponseDecl&) = default;
};

struct Operation {
    HttpMethod method = HttpMethod::Get;
    std::size_t template_index = 0;
    std::set<std::string> request_media_types;
    std::set<std::string> request_headers_declared;  // lowercase
    std::set<std::string> query_params;
    std::map<int, ResponseDecl> responses;
    bool has_request_body = false;
    bool secured = false;
    SourceLocation location;
    friend bool operator==(const Operation&, const Operation&) = default;
};

struct UriTemplate {
    std::string raw;
    std::vector<PathSegment> segments;
    std::vector<std::string> query_params;  // union over the template's operations
    bool has_trailing_slash = false;
    std::map<std::string, std::string> variable_examples;  // probe fill values
    SourceLocation location;
    friend bool operator==(const UriTemplate&, const UriTemplate&) = default;
};

struct CanonicalApiModel {
    std::string api_title;
    std::string version_tag;
    std::string entry_uri;  // empty when the description names no server
    std::vector<UriTemplate> resources;
    std::vector<Operation> operations;
    bool security_declared = false;
    std::string source_file;
    friend bool operator==(const CanonicalApiModel&, const CanonicalApiModel&) = default;

    std::vector<const Operation*> operations_on(std::size_t template_index) const;
};

// Splits "/users/{id}/" into segments plus the trailing-slash flag.
// Rejoining with '/' and the flag reproduces the path.
UriTemplate parse_uri_template(std::string_view raw_path);

struct HeaderField {
    std::string name;
    std::string value;
    friend bool operator==(const HeaderField&, const HeaderField&) = default;
};

// One observed HTTP request/response pair.
struct ExchangeRecord {
    struct Request {
        std::string method;
        std::string uri;  // absolute
        std::vector<HeaderField> headers;
        std::string body_media_type;
        friend bool operator==(const Request&, const Request&) = default;
    };
    struct Response {
        int status = 0;
        std::vector<HeaderField> headers;
        std::string body_media_type;
        std::string body_text;  // raw body when captured (structured formats only)
        std::optional<SchemaShape> body_fingerprint;
        bool has_body = false;
        friend bool operator==(const Response&, const Response&) = default;
    };
    Request request;
    Response response;
    std::string timestamp;
    std::size_t index = 0;  // position within the log
    friend bool operator==(const ExchangeRecord&, const ExchangeRecord&) = default;
};

// Case-insensitive header lookup; returns the first match.
std::optional<std::string> find_header(const std::vector<HeaderField>& headers, std::string_view name);

// Extracts the path component of an absolute URI ("" when the URI is not
// absolute http/https).
std::optional<std::string> absolute_uri_path(std::string_view uri);

// Matches a concrete path against the model's templates: literal segments
// compare equal, variable segments match any single segment, and the longest
// literal prefix wins ties. Returns the matching operation for `method`.
const Operation* resolve_operation(const CanonicalApiModel& model, HttpMethod method,
                                   std::string_view concrete_uri);

// Debug dump round-trip (identity on all fields).
std::string model_to_debug_json(const CanonicalApiModel& model);
CanonicalApiModel model_from_debug_json(std::string_view text);

}  // namespace restlint
