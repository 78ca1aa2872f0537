#include "restlint/ingestion.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>
#include <yaml-cpp/yaml.h>

namespace restlint {

using nlohmann::json;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string escape_pointer_token(std::string_view token) {
    std::string out;
    for (char c : token) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

// Line numbers per JSON pointer, collected while converting YAML (JSON input
// has no line tracking; locations then carry pointer only).
using LineIndex = std::map<std::string, int>;

json yaml_to_json(const YAML::Node& node, const std::string& pointer, LineIndex& lines) {
    if (node.Mark().line >= 0) lines[pointer] = node.Mark().line + 1;
    switch (node.Type()) {
        case YAML::NodeType::Null:
        case YAML::NodeType::Undefined:
            return nullptr;
        case YAML::NodeType::Scalar: {
            if (node.Tag() == "!") return node.as<std::string>();
            const std::string& raw = node.Scalar();
            if (raw == "true") return true;
            if (raw == "false") return false;
            if (raw == "null" || raw == "~") return nullptr;
            if (!raw.empty() && raw.find_first_not_of("-0123456789") == std::string::npos) {
                try {
                    std::size_t used = 0;
                    const long long v = std::stoll(raw, &used);
                    if (used == raw.size()) return v;
                } catch (...) {
                }
            }
            if (!raw.empty() && raw.find_first_not_of("-+.eE0123456789") == std::string::npos &&
                raw.find_first_of(".eE") != std::string::npos) {
                try {
                    std::size_t used = 0;
                    const double v = std::stod(raw, &used);
                    if (used == raw.size()) return v;
                } catch (...) {
                }
            }
            return raw;
        }
        case YAML::NodeType::Sequence: {
            json arr = json::array();
            std::size_t i = 0;
            for (const auto& item : node) {
                arr.push_back(yaml_to_json(item, pointer + "/" + std::to_string(i), lines));
                ++i;
            }
            return arr;
        }
        case YAML::NodeType::Map: {
            json obj = json::object();
            for (const auto& kv : node) {
                const std::string key = kv.first.as<std::string>();
                obj[key] = yaml_to_json(kv.second, pointer + "/" + escape_pointer_token(key), lines);
            }
            return obj;
        }
    }
    return nullptr;
}

struct DocContext {
    const json* root = nullptr;
    std::string file;
    const LineIndex* lines = nullptr;
    const std::vector<std::string>* link_markers = nullptr;
    IngestionReport* report = nullptr;

    SourceLocation locate(const std::string& pointer) const {
        SourceLocation loc;
        loc.file = file;
        loc.pointer = pointer;
        if (lines) {
            auto it = lines->find(pointer);
            if (it != lines->end()) loc.line = it->second;
        }
        return loc;
    }

    void warn(const std::string& pointer, const std::string& message) const {
        report->warnings.emplace_back(locate(pointer), message);
    }
};

// Resolves a local $ref chain; returns nullptr (with a warning) when the
// target is missing, external, or cyclic.
const json* deref(const DocContext& ctx, const json& node, const std::string& pointer, int depth = 0) {
    if (!node.is_object() || !node.contains("$ref")) return &node;
    if (depth > 16) {
        ctx.warn(pointer, "reference chain too deep");
        return nullptr;
    }
    const std::string ref = node["$ref"].is_string() ? node["$ref"].get<std::string>() : "";
    if (ref.rfind("#/", 0) != 0) {
        ctx.warn(pointer, "external reference '" + ref + "' is not resolved (offline analysis)");
        return nullptr;
    }
    try {
        const json& target = ctx.root->at(json::json_pointer(ref.substr(1)));
        return deref(ctx, target, pointer, depth + 1);
    } catch (const json::exception&) {
        ctx.warn(pointer, "unresolvable reference '" + ref + "'");
        return nullptr;
    }
}

std::pair<int, int> line_col_from_offset(std::string_view text, std::size_t offset) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

std::string example_to_string(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void collect_parameters(const DocContext& ctx, const json& params, const std::string& pointer,
                        UriTemplate& tpl, Operation* op) {
    if (!params.is_array()) return;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const std::string ppointer = pointer + "/" + std::to_string(i);
        const json* p = deref(ctx, params[i], ppointer);
        if (!p || !p->is_object()) {
            ++ctx.report->skipped_nodes;
            continue;
        }
        const std::string where = p->value("in", "");
        const std::string name = p->value("name", "");
        if (name.empty()) continue;
        if (where == "query") {
            if (std::find(tpl.query_params.begin(), tpl.query_params.end(), name) ==
                tpl.query_params.end()) {
                tpl.query_params.push_back(name);
            }
            if (op) op->query_params.insert(name);
        } else if (where == "header") {
            if (op) op->request_headers_declared.insert(lower(name));
        } else if (where == "path") {
            std::string example;
            if (p->contains("example")) example = example_to_string((*p)["example"]);
            if (example.empty() && p->contains("schema")) {
                const json* schema = deref(ctx, (*p)["schema"], ppointer + "/schema");
                if (schema && schema->is_object()) {
                    if (schema->contains("example")) example = example_to_string((*schema)["example"]);
                    else if (schema->contains("default")) example = example_to_string((*schema)["default"]);
                    else if (schema->contains("enum") && !(*schema)["enum"].empty()) {
                        example = example_to_string((*schema)["enum"][0]);
                    }
                }
            }
            if (!example.empty()) tpl.variable_examples[name] = example;
        }
    }
}

ResponseDecl parse_response(const DocContext& ctx, const json& respNode, int status,
                            const std::string& pointer) {
    ResponseDecl resp;
    resp.status = status;
    resp.location = ctx.locate(pointer);
    const json* node = deref(ctx, respNode, pointer);
    if (!node || !node->is_object()) {
        ++ctx.report->skipped_nodes;
        return resp;
    }
    if (node->contains("headers") && (*node)["headers"].is_object()) {
        for (const auto& [name, value] : (*node)["headers"].items()) {
            resp.headers_declared.insert(lower(name));
        }
    }
    if (node->contains("content")) {
        resp.has_content_key = true;
        if ((*node)["content"].is_object()) {
            const json* firstSchema = nullptr;
            const json* firstJsonSchema = nullptr;
            for (const auto& [mediaType, body] : (*node)["content"].items()) {
                resp.media_types.insert(mediaType);
                if (body.is_object() && body.contains("schema")) {
                    if (!firstSchema) firstSchema = &body["schema"];
                    const std::string mt = lower(mediaType);
                    const bool jsonish = mt == "application/json" ||
                                         (mt.size() > 5 && mt.compare(mt.size() - 5, 5, "+json") == 0);
                    if (jsonish && !firstJsonSchema) firstJsonSchema = &body["schema"];
                }
            }
            const json* schema = firstJsonSchema ? firstJsonSchema : firstSchema;
            if (schema) resp.body_schema = shape_from_schema(*schema, *ctx.root, *ctx.link_markers);
        }
    }
    return resp;
}

}  // namespace

DescriptionFormat detect_format(std::string_view document) {
    for (char c : document) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return (c == '{' || c == '[') ? DescriptionFormat::JsonText : DescriptionFormat::YamlText;
    }
    return DescriptionFormat::YamlText;
}

IngestionReport ingest_description(std::string_view document, DescriptionFormat format,
                                   OpenApiDialect dialect, std::string file_name,
                                   const std::vector<std::string>& link_markers) {
    (void)dialect;  // 3.0 and 3.1 share the subset of fields modeled here
    json root;
    LineIndex lines;
    bool haveLines = false;

    if (format == DescriptionFormat::JsonText) {
        try {
            root = json::parse(document);
        } catch (const json::parse_error& e) {
            const auto [line, col] = line_col_from_offset(document, e.byte);
            throw ingest_error("JSON parse error at line " + std::to_string(line) + ", column " +
                               std::to_string(col) + ": " + e.what());
        }
    } else {
        try {
            YAML::Node yaml = YAML::Load(std::string(document));
            root = yaml_to_json(yaml, "", lines);
            haveLines = true;
        } catch (const YAML::ParserException& e) {
            throw ingest_error("YAML parse error at line " + std::to_string(e.mark.line + 1) +
                               ", column " + std::to_string(e.mark.column + 1) + ": " + e.msg);
        } catch (const YAML::Exception& e) {
            throw ingest_error(std::string("YAML error: ") + e.what());
        }
    }
    if (!root.is_object()) throw ingest_error("description must be a JSON/YAML object");
    if (!root.contains("paths") || !root["paths"].is_object()) {
        throw ingest_error("description has no paths object");
    }

    IngestionReport report;
    DocContext ctx;
    ctx.root = &root;
    ctx.file = std::move(file_name);
    ctx.lines = haveLines ? &lines : nullptr;
    ctx.link_markers = &link_markers;
    ctx.report = &report;

    CanonicalApiModel& model = report.model;
    model.source_file = ctx.file;
    if (root.contains("info") && root["info"].is_object()) {
        model.api_title = root["info"].value("title", "");
        model.version_tag = root["info"].value("version", "");
    }
    if (root.contains("servers") && root["servers"].is_array() && !root["servers"].empty()) {
        model.entry_uri = root["servers"][0].value("url", "");
    }
    const bool rootSecurity = root.contains("security") && root["security"].is_array() &&
                              !root["security"].empty();
    bool anySecurityScheme = false;
    if (root.contains("components") && root["components"].is_object() &&
        root["components"].contains("securitySchemes") &&
        root["components"]["securitySchemes"].is_object() &&
        !root["components"]["securitySchemes"].empty()) {
        anySecurityScheme = true;
    }

    static const char* kMethods[] = {"get", "put", "post", "delete", "patch", "head", "options"};

    // Path keys in document order for deterministic models.
    for (const auto& [path, pathItemRaw] : root["paths"].items()) {
        const std::string pathPointer = "/paths/" + escape_pointer_token(path);
        const json* pathItem = deref(ctx, pathItemRaw, pathPointer);
        if (!pathItem || !pathItem->is_object()) {
            ++report.skipped_nodes;
            continue;
        }
        UriTemplate tpl = parse_uri_template(path);
        tpl.location = ctx.locate(pathPointer);
        const std::size_t templateIndex = model.resources.size();

        // Path-level parameters apply to every operation beneath.
        if (pathItem->contains("parameters")) {
            collect_parameters(ctx, (*pathItem)["parameters"], pathPointer + "/parameters", tpl, nullptr);
        }

        std::vector<Operation> ops;
        for (const char* method : kMethods) {
            if (!pathItem->contains(method)) continue;
            const json& opNode = (*pathItem)[method];
            if (!opNode.is_object()) continue;
            const std::string opPointer = pathPointer + "/" + method;
            Operation op;
            op.method = *method_from_string(method);
            op.template_index = templateIndex;
            op.location = ctx.locate(opPointer);
            op.secured = rootSecurity;
            if (opNode.contains("security") && opNode["security"].is_array()) {
                op.secured = !opNode["security"].empty();
            }
            if (pathItem->contains("parameters")) {
                collect_parameters(ctx, (*pathItem)["parameters"], pathPointer + "/parameters", tpl, &op);
            }
            if (opNode.contains("parameters")) {
                collect_parameters(ctx, opNode["parameters"], opPointer + "/parameters", tpl, &op);
            }
            if (opNode.contains("requestBody")) {
                const json* body = deref(ctx, opNode["requestBody"], opPointer + "/requestBody");
                if (body && body->is_object()) {
                    op.has_request_body = true;
                    if (body->contains("content") && (*body)["content"].is_object()) {
                        for (const auto& [mediaType, unused] : (*body)["content"].items()) {
                            op.request_media_types.insert(mediaType);
                        }
                    }
                } else {
                    ++report.skipped_nodes;
                }
            }
            if (opNode.contains("responses") && opNode["responses"].is_object()) {
                for (const auto& [statusKey, respNode] : opNode["responses"].items()) {
                    const std::string respPointer = opPointer + "/responses/" + statusKey;
                    if (statusKey == "default") {
                        ctx.warn(respPointer, "default response is not modeled");
                        ++report.skipped_nodes;
                        continue;
                    }
                    int status = 0;
                    try {
                        status = std::stoi(statusKey);
                    } catch (...) {
                        ctx.warn(respPointer, "unparseable status code '" + statusKey + "'");
                        ++report.skipped_nodes;
                        continue;
                    }
                    if (status < 100 || status > 599) {
                        ctx.warn(respPointer, "status code outside 100..599");
                        ++report.skipped_nodes;
                        continue;
                    }
                    op.responses.emplace(status, parse_response(ctx, respNode, status, respPointer));
                }
            }
            ops.push_back(std::move(op));
        }
        model.resources.push_back(std::move(tpl));
        for (Operation& op : ops) model.operations.push_back(std::move(op));
    }
    if (anySecurityScheme || rootSecurity) {
        model.security_declared = true;
    } else {
        for (const Operation& op : model.operations) {
            if (op.secured) model.security_declared = true;
        }
    }
    return report;
}

ExchangeIngestion ingest_exchanges(std::string_view log_document,
                                   const std::vector<std::string>& link_markers) {
    json root;
    try {
        root = json::parse(log_document);
    } catch (const json::parse_error& e) {
        throw ingest_error(std::string("exchange log does not parse: ") + e.what());
    }
    if (!root.is_object() || !root.contains("log") || !root["log"].is_object() ||
        !root["log"].contains("entries") || !root["log"]["entries"].is_array()) {
        throw ingest_error("exchange log must be an object with log.entries[]");
    }

    ExchangeIngestion out;
    std::size_t index = 0;
    for (const auto& entry : root["log"]["entries"]) {
        const std::size_t entryIndex = index++;
        if (!entry.is_object() || !entry.contains("request") || !entry.contains("response")) {
            out.warnings.push_back("entry " + std::to_string(entryIndex) +
                                   " lacks request/response and was skipped");
            continue;
        }
        const json& req = entry["request"];
        const json& resp = entry["response"];
        const std::string url = req.value("url", "");
        if (!absolute_uri_path(url)) {
            out.warnings.push_back("entry " + std::to_string(entryIndex) + " has a non-absolute URL '" +
                                   url + "' and was skipped");
            continue;
        }
        ExchangeRecord rec;
        rec.index = out.records.size();
        rec.timestamp = entry.value("startedDateTime", "");
        rec.request.method = req.value("method", "GET");
        rec.request.uri = url;
        if (req.contains("headers") && req["headers"].is_array()) {
            for (const auto& h : req["headers"]) {
                rec.request.headers.push_back({h.value("name", ""), h.value("value", "")});
            }
        }
        if (req.contains("postData") && req["postData"].is_object()) {
            rec.request.body_media_type = req["postData"].value("mimeType", "");
        }
        rec.response.status = resp.value("status", 0);
        if (resp.contains("headers") && resp["headers"].is_array()) {
            for (const auto& h : resp["headers"]) {
                rec.response.headers.push_back({h.value("name", ""), h.value("value", "")});
            }
        }
        if (resp.contains("content") && resp["content"].is_object()) {
            const json& content = resp["content"];
            rec.response.body_media_type = content.value("mimeType", "");
            const std::string text = content.value("text", "");
            rec.response.body_text = text;
            rec.response.has_body = !text.empty() || content.value("size", 0) > 0;
            const std::string mt = lower(rec.response.body_media_type);
            const bool jsonish = mt.rfind("application/json", 0) == 0 ||
                                 mt.find("+json") != std::string::npos;
            if (!text.empty() && jsonish) {
                try {
                    rec.response.body_fingerprint = shape_from_instance(json::parse(text), link_markers);
                } catch (const json::parse_error&) {
                    out.warnings.push_back("entry " + std::to_string(entryIndex) +
                                           " has an unparseable JSON body; fingerprint skipped");
                }
            }
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

std::string exchanges_to_har(const std::vector<ExchangeRecord>& records) {
    json entries = json::array();
    for (const ExchangeRecord& rec : records) {
        json req;
        req["method"] = rec.request.method;
        req["url"] = rec.request.uri;
        json reqHeaders = json::array();
        for (const HeaderField& h : rec.request.headers) {
            reqHeaders.push_back(json{{"name", h.name}, {"value", h.value}});
        }
        req["headers"] = reqHeaders;
        if (!rec.request.body_media_type.empty()) {
            req["postData"] = json{{"mimeType", rec.request.body_media_type}};
        }

        json resp;
        resp["status"] = rec.response.status;
        json respHeaders = json::array();
        for (const HeaderField& h : rec.response.headers) {
            respHeaders.push_back(json{{"name", h.name}, {"value", h.value}});
        }
        resp["headers"] = respHeaders;
        json content;
        content["mimeType"] = rec.response.body_media_type;
        if (!rec.response.body_text.empty()) content["text"] = rec.response.body_text;
        content["size"] = rec.response.has_body ? std::max<std::size_t>(1, rec.response.body_text.size())
                                                : 0;
        resp["content"] = content;

        json entry;
        entry["startedDateTime"] = rec.timestamp;
        entry["request"] = req;
        entry["response"] = resp;
        entries.push_back(entry);
    }
    json root;
    root["log"] = json{{"version", "1.2"}, {"creator", json{{"name", "restlint"}, {"version", "1.0"}}},
                       {"entries", entries}};
    return root.dump(2) + "\n";
}

}  // namespace restlint
