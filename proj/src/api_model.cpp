#include "restlint/api_model.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace restlint {

using nlohmann::json;

std::string SourceLocation::to_display() const {
    std::string out = file.empty() ? std::string("<input>") : file;
    if (!pointer.empty()) out += "#" + pointer;
    if (line > 0) out += ":" + std::to_string(line);
    return out;
}

std::string_view to_string(HttpMethod m) {
    switch (m) {
        case HttpMethod::Get: return "GET";
        case HttpMethod::Post: return "POST";
        case HttpMethod::Put: return "PUT";
        case HttpMethod::Delete: return "DELETE";
        case HttpMethod::Patch: return "PATCH";
        case HttpMethod::Head: return "HEAD";
        case HttpMethod::Options: return "OPTIONS";
    }
    return "?";
}

std::optional<HttpMethod> method_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "GET") return HttpMethod::Get;
    if (upper == "POST") return HttpMethod::Post;
    if (upper == "PUT") return HttpMethod::Put;
    if (upper == "DELETE") return HttpMethod::Delete;
    if (upper == "PATCH") return HttpMethod::Patch;
    if (upper == "HEAD") return HttpMethod::Head;
    if (upper == "OPTIONS") return HttpMethod::Options;
    return std::nullopt;
}

std::string_view to_string(Archetype a) {
    switch (a) {
        case Archetype::Document: return "document";
        case Archetype::Collection: return "collection";
        case Archetype::Store: return "store";
        case Archetype::Controller: return "controller";
    }
    return "?";
}

std::string SchemaShape::fingerprint() const {
    switch (kind) {
        case Kind::String: return "str";
        case Kind::Integer: return "int";
        case Kind::Number: return "num";
        case Kind::Boolean: return "bool";
        case Kind::Null: return "null";
        case Kind::Any: return "any";
        case Kind::Cycle: return "cycle";
        case Kind::Array:
            return "arr[" + (items.empty() ? std::string("any") : items.front().fingerprint()) + "]";
        case Kind::Object: {
            std::string out = "obj{";
            bool first = true;
            for (const auto& [name, child] : properties) {
                if (!first) out += ";";
                first = false;
                out += name + ":" + child.fingerprint();
            }
            out += "}";
            return out;
        }
    }
    return "?";
}

std::size_t SchemaShape::property_count() const {
    std::size_t n = 0;
    for (const auto& [name, child] : properties) {
        n += 1 + child.property_count();
    }
    for (const SchemaShape& item : items) n += item.property_count();
    return n;
}

namespace {

bool is_link_marker(const std::string& name, const std::vector<std::string>& markers) {
    return std::find(markers.begin(), markers.end(), name) != markers.end();
}

void finalize_node(SchemaShape& node, const std::vector<std::string>& markers) {
    std::sort(node.properties.begin(), node.properties.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [name, child] : node.properties) {
        if (is_link_marker(name, markers) || child.hypermedia_hint) node.hypermedia_hint = true;
    }
    for (const SchemaShape& item : node.items) {
        if (item.hypermedia_hint) node.hypermedia_hint = true;
    }
}

SchemaShape schema_shape_impl(const json& schema, const json& root,
                              const std::vector<std::string>& markers,
                              std::vector<std::string>& refStack, int depth) {
    SchemaShape shape;
    if (depth > 64 || !schema.is_object()) {
        return shape;  // Any
    }

    if (schema.contains("$ref") && schema["$ref"].is_string()) {
        const std::string ref = schema["$ref"].get<std::string>();
        if (std::find(refStack.begin(), refStack.end(), ref) != refStack.end()) {
            shape.kind = SchemaShape::Kind::Cycle;
            return shape;
        }
        if (ref.rfind("#/", 0) == 0) {
            try {
                const json& target = root.at(json::json_pointer(ref.substr(1)));
                refStack.push_back(ref);
                SchemaShape resolved = schema_shape_impl(target, root, markers, refStack, depth + 1);
                refStack.pop_back();
                return resolved;
            } catch (const json::exception&) {
                return shape;  // unresolvable ref degrades to Any
            }
        }
        return shape;  // external refs are out of scope
    }

    if (schema.contains("allOf") && schema["allOf"].is_array()) {
        shape.kind = SchemaShape::Kind::Object;
        for (const auto& part : schema["allOf"]) {
            SchemaShape sub = schema_shape_impl(part, root, markers, refStack, depth + 1);
            for (auto& prop : sub.properties) {
                auto it = std::find_if(shape.properties.begin(), shape.properties.end(),
                                       [&](const auto& p) { return p.first == prop.first; });
                if (it == shape.properties.end()) shape.properties.push_back(std::move(prop));
            }
            if (sub.hypermedia_hint) shape.hypermedia_hint = true;
        }
        finalize_node(shape, markers);
        return shape;
    }
    for (const char* combiner : {"oneOf", "anyOf"}) {
        if (schema.contains(combiner) && schema[combiner].is_array()) {
            const auto& alts = schema[combiner];
            if (alts.size() == 1) {
                return schema_shape_impl(alts[0], root, markers, refStack, depth + 1);
            }
            return shape;  // heterogeneous union degrades to Any
        }
    }

    std::string type;
    if (schema.contains("type")) {
        if (schema["type"].is_string()) {
            type = schema["type"].get<std::string>();
        } else if (schema["type"].is_array() && !schema["type"].empty()) {
            // 3.1 type arrays: take the first non-"null" entry.
            for (const auto& t : schema["type"]) {
                if (t.is_string() && t.get<std::string>() != "null") {
                    type = t.get<std::string>();
                    break;
                }
            }
        }
    }
    if (type.empty()) {
        if (schema.contains("properties")) type = "object";
        else if (schema.contains("items")) type = "array";
    }

    if (type == "object") {
        shape.kind = SchemaShape::Kind::Object;
        if (schema.contains("properties") && schema["properties"].is_object()) {
            for (const auto& [name, sub] : schema["properties"].items()) {
                shape.properties.emplace_back(name,
                                              schema_shape_impl(sub, root, markers, refStack, depth + 1));
            }
        }
        finalize_node(shape, markers);
    } else if (type == "array") {
        shape.kind = SchemaShape::Kind::Array;
        if (schema.contains("items")) {
            shape.items.push_back(schema_shape_impl(schema["items"], root, markers, refStack, depth + 1));
        }
        finalize_node(shape, markers);
    } else if (type == "string") {
        shape.kind = SchemaShape::Kind::String;
    } else if (type == "integer") {
        shape.kind = SchemaShape::Kind::Integer;
    } else if (type == "number") {
        shape.kind = SchemaShape::Kind::Number;
    } else if (type == "boolean") {
        shape.kind = SchemaShape::Kind::Boolean;
    } else if (type == "null") {
        shape.kind = SchemaShape::Kind::Null;
    }
    return shape;
}

}  // namespace

SchemaShape shape_from_schema(const json& schema, const json& root_document,
                              const std::vector<std::string>& link_markers) {
    std::vector<std::string> refStack;
    return schema_shape_impl(schema, root_document, link_markers, refStack, 0);
}

SchemaShape shape_from_instance(const json& value, const std::vector<std::string>& link_markers) {
    SchemaShape shape;
    if (value.is_object()) {
        shape.kind = SchemaShape::Kind::Object;
        for (const auto& [name, sub] : value.items()) {
            shape.properties.emplace_back(name, shape_from_instance(sub, link_markers));
        }
        finalize_node(shape, link_markers);
    } else if (value.is_array()) {
        shape.kind = SchemaShape::Kind::Array;
        if (!value.empty()) shape.items.push_back(shape_from_instance(value[0], link_markers));
        finalize_node(shape, link_markers);
    } else if (value.is_string()) {
        shape.kind = SchemaShape::Kind::String;
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
        shape.kind = SchemaShape::Kind::Integer;
    } else if (value.is_number()) {
        shape.kind = SchemaShape::Kind::Number;
    } else if (value.is_boolean()) {
        shape.kind = SchemaShape::Kind::Boolean;
    } else if (value.is_null()) {
        shape.kind = SchemaShape::Kind::Null;
    }
    return shape;
}

UriTemplate parse_uri_template(std::string_view raw_path) {
    UriTemplate tpl;
    tpl.raw = std::string(raw_path);

    std::string_view path = raw_path;
    if (!path.empty() && path.front() == '/') path.remove_prefix(1);
    if (!path.empty() && path.back() == '/') {
        tpl.has_trailing_slash = true;
        path.remove_suffix(1);
    }
    if (path.empty()) return tpl;

    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string_view::npos) end = path.size();
        std::string_view seg = path.substr(start, end - start);
        PathSegment segment;
        if (seg.size() >= 2 && seg.front() == '{' && seg.back() == '}') {
            segment.kind = SegmentKind::Variable;
            segment.text = std::string(seg.substr(1, seg.size() - 2));
        } else {
            segment.kind = SegmentKind::Literal;
            segment.text = std::string(seg);
        }
        tpl.segments.push_back(std::move(segment));
        if (end == path.size()) break;
        start = end + 1;
    }
    return tpl;
}

std::vector<const Operation*> CanonicalApiModel::operations_on(std::size_t template_index) const {
    std::vector<const Operation*> out;
    for (const Operation& op : operations) {
        if (op.template_index == template_index) out.push_back(&op);
    }
    return out;
}

std::optional<std::string> find_header(const std::vector<HeaderField>& headers, std::string_view name) {
    for (const HeaderField& h : headers) {
        if (h.name.size() != name.size()) continue;
        bool equal = true;
        for (std::size_t i = 0; i < name.size(); ++i) {
            if (std::tolower(static_cast<unsigned char>(h.name[i])) !=
                std::tolower(static_cast<unsigned char>(name[i]))) {
                equal = false;
                break;
            }
        }
        if (equal) return h.value;
    }
    return std::nullopt;
}

std::optional<std::string> absolute_uri_path(std::string_view uri) {
    std::string_view rest;
    if (uri.rfind("http://", 0) == 0) {
        rest = uri.substr(7);
    } else if (uri.rfind("https://", 0) == 0) {
        rest = uri.substr(8);
    } else {
        return std::nullopt;
    }
    if (rest.empty()) return std::nullopt;
    std::size_t slash = rest.find('/');
    if (slash == std::string_view::npos) return std::string("/");
    std::string_view path = rest.substr(slash);
    std::size_t cut = path.find_first_of("?#");
    if (cut != std::string_view::npos) path = path.substr(0, cut);
    return std::string(path);
}

namespace {

struct TemplateMatch {
    std::size_t template_index;
    std::size_t literal_prefix;
    std::size_t literal_total;
};

std::vector<std::string> split_concrete_path(std::string_view path) {
    std::vector<std::string> out;
    if (!path.empty() && path.front() == '/') path.remove_prefix(1);
    if (!path.empty() && path.back() == '/') path.remove_suffix(1);
    if (path.empty()) return out;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('/', start);
        if (end == std::string_view::npos) end = path.size();
        out.emplace_back(path.substr(start, end - start));
        if (end == path.size()) break;
        start = end + 1;
    }
    return out;
}

}  // namespace

const Operation* resolve_operation(const CanonicalApiModel& model, HttpMethod method,
                                   std::string_view concrete_uri) {
    std::string path;
    if (auto abs = absolute_uri_path(concrete_uri)) {
        path = *abs;
    } else {
        path = std::string(concrete_uri);
        std::size_t cut = path.find_first_of("?#");
        if (cut != std::string::npos) path.resize(cut);
    }
    const std::vector<std::string> parts = split_concrete_path(path);

    std::vector<TemplateMatch> matches;
    for (std::size_t t = 0; t < model.resources.size(); ++t) {
        const UriTemplate& tpl = model.resources[t];
        if (tpl.segments.size() != parts.size()) continue;
        bool ok = true;
        std::size_t prefix = 0;
        bool prefixRunning = true;
        std::size_t literals = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const PathSegment& seg = tpl.segments[i];
            if (seg.kind == SegmentKind::Literal) {
                if (seg.text != parts[i]) {
                    ok = false;
                    break;
                }
                ++literals;
                if (prefixRunning) ++prefix;
            } else {
                prefixRunning = false;
            }
        }
        if (ok) matches.push_back({t, prefix, literals});
    }
    std::sort(matches.begin(), matches.end(), [&](const TemplateMatch& a, const TemplateMatch& b) {
        if (a.literal_prefix != b.literal_prefix) return a.literal_prefix > b.literal_prefix;
        if (a.literal_total != b.literal_total) return a.literal_total > b.literal_total;
        return model.resources[a.template_index].raw < model.resources[b.template_index].raw;
    });
    for (const TemplateMatch& m : matches) {
        for (const Operation& op : model.operations) {
            if (op.template_index == m.template_index && op.method == method) return &op;
        }
    }
    return nullptr;
}

namespace {

json shape_to_json(const SchemaShape& shape) {
    json out;
    out["kind"] = static_cast<int>(shape.kind);
    out["hint"] = shape.hypermedia_hint;
    json props = json::array();
    for (const auto& [name, child] : shape.properties) {
        props.push_back(json{{"name", name}, {"shape", shape_to_json(child)}});
    }
    out["properties"] = props;
    json items = json::array();
    for (const SchemaShape& item : shape.items) items.push_back(shape_to_json(item));
    out["items"] = items;
    return out;
}

SchemaShape shape_from_json(const json& in) {
    SchemaShape shape;
    shape.kind = static_cast<SchemaShape::Kind>(in.at("kind").get<int>());
    shape.hypermedia_hint = in.at("hint").get<bool>();
    for (const auto& prop : in.at("properties")) {
        shape.properties.emplace_back(prop.at("name").get<std::string>(),
                                      shape_from_json(prop.at("shape")));
    }
    for (const auto& item : in.at("items")) shape.items.push_back(shape_from_json(item));
    return shape;
}

json location_to_json(const SourceLocation& loc) {
    return json{{"file", loc.file}, {"pointer", loc.pointer}, {"line", loc.line}};
}

SourceLocation location_from_json(const json& in) {
    return SourceLocation{in.at("file").get<std::string>(), in.at("pointer").get<std::string>(),
                          in.at("line").get<int>()};
}

}  // namespace

std::string model_to_debug_json(const CanonicalApiModel& model) {
    json out;
    out["api_title"] = model.api_title;
    out["version_tag"] = model.version_tag;
    out["entry_uri"] = model.entry_uri;
    out["security_declared"] = model.security_declared;
    out["source_file"] = model.source_file;

    json resources = json::array();
    for (const UriTemplate& tpl : model.resources) {
        json t;
        t["raw"] = tpl.raw;
        t["trailing_slash"] = tpl.has_trailing_slash;
        t["query_params"] = tpl.query_params;
        t["location"] = location_to_json(tpl.location);
        t["variable_examples"] = tpl.variable_examples;
        json segs = json::array();
        for (const PathSegment& seg : tpl.segments) {
            json s;
            s["kind"] = seg.kind == SegmentKind::Variable ? "variable" : "literal";
            s["text"] = seg.text;
            if (seg.archetype) s["archetype"] = std::string(to_string(*seg.archetype));
            segs.push_back(s);
        }
        t["segments"] = segs;
        resources.push_back(t);
    }
    out["resources"] = resources;

    json operations = json::array();
    for (const Operation& op : model.operations) {
        json o;
        o["method"] = std::string(to_string(op.method));
        o["template_index"] = op.template_index;
        o["request_media_types"] = op.request_media_types;
        o["request_headers_declared"] = op.request_headers_declared;
        o["query_params"] = op.query_params;
        o["has_request_body"] = op.has_request_body;
        o["secured"] = op.secured;
        o["location"] = location_to_json(op.location);
        json responses = json::array();
        for (const auto& [status, resp] : op.responses) {
            json r;
            r["status"] = status;
            r["media_types"] = resp.media_types;
            r["headers_declared"] = resp.headers_declared;
            r["has_content_key"] = resp.has_content_key;
            r["location"] = location_to_json(resp.location);
            if (resp.body_schema) r["body_schema"] = shape_to_json(*resp.body_schema);
            responses.push_back(r);
        }
        o["responses"] = responses;
        operations.push_back(o);
    }
    out["operations"] = operations;
    return out.dump(2) + "\n";
}

CanonicalApiModel model_from_debug_json(std::string_view text) {
    const json in = json::parse(text);
    CanonicalApiModel model;
    model.api_title = in.at("api_title").get<std::string>();
    model.version_tag = in.at("version_tag").get<std::string>();
    model.entry_uri = in.at("entry_uri").get<std::string>();
    model.security_declared = in.at("security_declared").get<bool>();
    model.source_file = in.at("source_file").get<std::string>();

    for (const auto& t : in.at("resources")) {
        UriTemplate tpl;
        tpl.raw = t.at("raw").get<std::string>();
        tpl.has_trailing_slash = t.at("trailing_slash").get<bool>();
        tpl.query_params = t.at("query_params").get<std::vector<std::string>>();
        tpl.location = location_from_json(t.at("location"));
        tpl.variable_examples = t.at("variable_examples").get<std::map<std::string, std::string>>();
        for (const auto& s : t.at("segments")) {
            PathSegment seg;
            seg.kind = s.at("kind").get<std::string>() == "variable" ? SegmentKind::Variable
                                                                     : SegmentKind::Literal;
            seg.text = s.at("text").get<std::string>();
            if (s.contains("archetype")) {
                const std::string a = s["archetype"].get<std::string>();
                if (a == "document") seg.archetype = Archetype::Document;
                else if (a == "collection") seg.archetype = Archetype::Collection;
                else if (a == "store") seg.archetype = Archetype::Store;
                else if (a == "controller") seg.archetype = Archetype::Controller;
            }
            tpl.segments.push_back(std::move(seg));
        }
        model.resources.push_back(std::move(tpl));
    }

    for (const auto& o : in.at("operations")) {
        Operation op;
        op.method = *method_from_string(o.at("method").get<std::string>());
        op.template_index = o.at("template_index").get<std::size_t>();
        op.request_media_types = o.at("request_media_types").get<std::set<std::string>>();
        op.request_headers_declared = o.at("request_headers_declared").get<std::set<std::string>>();
        op.query_params = o.at("query_params").get<std::set<std::string>>();
        op.has_request_body = o.at("has_request_body").get<bool>();
        op.secured = o.at("secured").get<bool>();
        op.location = location_from_json(o.at("location"));
        for (const auto& r : o.at("responses")) {
            ResponseDecl resp;
            resp.status = r.at("status").get<int>();
            resp.media_types = r.at("media_types").get<std::set<std::string>>();
            resp.headers_declared = r.at("headers_declared").get<std::set<std::string>>();
            resp.has_content_key = r.at("has_content_key").get<bool>();
            resp.location = location_from_json(r.at("location"));
            if (r.contains("body_schema")) resp.body_schema = shape_from_json(r.at("body_schema"));
            op.responses.emplace(resp.status, std::move(resp));
        }
        model.operations.push_back(std::move(op));
    }
    return model;
}

}  // namespace restlint
