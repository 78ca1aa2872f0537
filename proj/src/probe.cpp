#include "restlint/probe.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <mutex>
#include <thread>

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace restlint {

std::string_view to_string(ProbeKind kind) {
    switch (kind) {
        case ProbeKind::PlainGet: return "plain_get";
        case ProbeKind::ConditionalGet: return "conditional_get";
        case ProbeKind::UnacceptableAccept: return "unacceptable_accept";
        case ProbeKind::BogusContentType: return "bogus_content_type";
        case ProbeKind::Unauthenticated: return "unauthenticated";
        case ProbeKind::Preflight: return "preflight";
    }
    return "?";
}

namespace {

struct ParsedBase {
    std::string scheme;
    std::string host;
    int port = 80;
    std::string prefix;  // path prefix from the base URI
};

ParsedBase parse_base(const std::string& base) {
    ParsedBase out;
    std::string rest;
    if (base.rfind("http://", 0) == 0) {
        out.scheme = "http";
        out.port = 80;
        rest = base.substr(7);
    } else if (base.rfind("https://", 0) == 0) {
        out.scheme = "https";
        out.port = 443;
        rest = base.substr(8);
    } else {
        throw probe_error("base URI must be absolute http(s): '" + base + "'");
    }
    const std::size_t slash = rest.find('/');
    std::string authority = slash == std::string::npos ? rest : rest.substr(0, slash);
    if (slash != std::string::npos) {
        out.prefix = rest.substr(slash);
        while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
    }
    const std::size_t colon = authority.rfind(':');
    if (colon != std::string::npos) {
        out.host = authority.substr(0, colon);
        out.port = std::stoi(authority.substr(colon + 1));
    } else {
        out.host = authority;
    }
    if (out.host.empty()) throw probe_error("base URI has no host: '" + base + "'");
    return out;
}

// Fail before any target runs when the host does not resolve or connect.
void preflight_connect(const ParsedBase& base, int timeout_seconds) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string portStr = std::to_string(base.port);
    const int rc = ::getaddrinfo(base.host.c_str(), portStr.c_str(), &hints, &result);
    if (rc != 0) {
        throw probe_error("cannot resolve '" + base.host + "': " + gai_strerror(rc));
    }
    bool connected = false;
    std::string lastError = "no addresses";
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        timeval tv{};
        tv.tv_sec = timeout_seconds;
        ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            connected = true;
            ::close(fd);
            break;
        }
        lastError = std::strerror(errno);
        ::close(fd);
    }
    ::freeaddrinfo(result);
    if (!connected) {
        throw probe_error("cannot connect to " + base.host + ":" + portStr + ": " + lastError);
    }
}

std::string fill_template(const UriTemplate& tpl, const EngineConfig& config, bool& ok) {
    std::string path;
    ok = true;
    for (const PathSegment& seg : tpl.segments) {
        path += "/";
        if (seg.kind == SegmentKind::Literal) {
            path += seg.text;
            continue;
        }
        auto conf = config.probe_example_values.find(seg.text);
        if (conf != config.probe_example_values.end()) {
            path += conf->second;
            continue;
        }
        auto declared = tpl.variable_examples.find(seg.text);
        if (declared != tpl.variable_examples.end()) {
            path += declared->second;
            continue;
        }
        ok = false;
        return "";
    }
    if (path.empty()) path = "/";
    return path;
}

bool method_safe(HttpMethod m) {
    return m == HttpMethod::Get || m == HttpMethod::Head || m == HttpMethod::Options;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

ProbePlan plan(const CanonicalApiModel& model, const EngineConfig& config,
               const std::string& base_uri_override) {
    ProbePlan out;
    out.base_uri = base_uri_override.empty() ? model.entry_uri : base_uri_override;
    if (out.base_uri.empty()) {
        throw probe_error("no base URI: the description names no server and none was supplied");
    }
    out.rate_limit = config.probe_rate_per_sec;
    out.safe_mode = config.probe_safe_mode;

    std::set<std::string> preflighted;
    for (std::size_t i = 0; i < model.operations.size(); ++i) {
        const Operation& op = model.operations[i];
        const UriTemplate& tpl = model.resources[op.template_index];
        bool fillable = false;
        const std::string path = fill_template(tpl, config, fillable);
        if (!fillable) {
            out.warnings.push_back("skipping " + std::string(to_string(op.method)) + " " + tpl.raw +
                                   ": no example value for a variable segment");
            continue;
        }

        auto add = [&](ProbeKind kind, HttpMethod method, std::vector<HeaderField> headers,
                       std::string bodyType = "") {
            if (out.safe_mode && !method_safe(method)) return;
            ProbeTarget target;
            target.kind = kind;
            target.method = method;
            target.path = path;
            target.headers = std::move(headers);
            target.body_media_type = std::move(bodyType);
            out.targets.push_back(std::move(target));
        };

        if (op.method == HttpMethod::Get) {
            add(ProbeKind::PlainGet, HttpMethod::Get, {});
            auto it = op.responses.find(200);
            if (it != op.responses.end() && (it->second.headers_declared.count("etag") ||
                                             it->second.headers_declared.count("last-modified"))) {
                add(ProbeKind::ConditionalGet, HttpMethod::Get,
                    {{"If-None-Match", "\"restlint-conditional-probe\""}});
            }
            std::set<std::string> declared;
            for (const auto& [status, resp] : op.responses) {
                declared.insert(resp.media_types.begin(), resp.media_types.end());
            }
            if (declared.size() >= 2) {
                add(ProbeKind::UnacceptableAccept, HttpMethod::Get,
                    {{"Accept", "application/vnd.restlint.unacceptable"}});
            }
            if (op.secured && model.security_declared && config.probe_enable_unauthenticated) {
                add(ProbeKind::Unauthenticated, HttpMethod::Get, {});
            }
        }
        if (op.has_request_body && !config.probe_safe_mode &&
            (op.method == HttpMethod::Post || op.method == HttpMethod::Put ||
             op.method == HttpMethod::Patch)) {
            add(ProbeKind::BogusContentType, op.method, {}, "application/vnd.restlint.bogus");
        }
        if (!preflighted.count(path)) {
            preflighted.insert(path);
            add(ProbeKind::Preflight, HttpMethod::Options,
                {{"Origin", "http://probe.restlint.invalid"},
                 {"Access-Control-Request-Method", std::string(to_string(op.method))}});
        }
    }
    if (out.targets.empty()) {
        out.warnings.push_back("plan is empty: no probeable operations under the current safety settings");
    }
    return out;
}

namespace {

ExchangeRecord make_record(const ProbeTarget& target, std::size_t index, const std::string& base,
                           const httplib::Result& result) {
    ExchangeRecord rec;
    rec.index = index;
    rec.timestamp = iso_timestamp();
    rec.request.method = std::string(to_string(target.method));
    rec.request.uri = base + target.path;
    rec.request.headers = target.headers;
    rec.request.body_media_type = target.body_media_type;
    if (!result) {
        rec.response.status = 0;  // synthetic timeout/error record
        return rec;
    }
    rec.response.status = result->status;
    for (const auto& [name, value] : result->headers) {
        if (name == "LOCAL_ADDR" || name == "LOCAL_PORT" || name == "REMOTE_ADDR" ||
            name == "REMOTE_PORT" || name == "DURATION") {
            continue;  // httplib bookkeeping pseudo-headers
        }
        rec.response.headers.push_back({name, value});
    }
    if (auto ct = find_header(rec.response.headers, "content-type")) {
        rec.response.body_media_type = *ct;
    }
    rec.response.has_body = !result->body.empty();
    if (rec.response.has_body) {
        const std::string mt = rec.response.body_media_type;
        const bool jsonish = mt.find("json") != std::string::npos;
        if (jsonish) {
            rec.response.body_text = result->body;
            try {
                rec.response.body_fingerprint =
                    shape_from_instance(nlohmann::json::parse(result->body), {"links", "_links", "href"});
            } catch (...) {
            }
        }
    }
    return rec;
}

}  // namespace

std::vector<ExchangeRecord> execute(const ProbePlan& probePlan, const EngineConfig& config) {
    const ParsedBase base = parse_base(probePlan.base_uri);
    preflight_connect(base, config.probe_timeout_seconds);

    const std::string clientBase = base.scheme + "://" + base.host + ":" + std::to_string(base.port);
    const std::size_t total = probePlan.targets.size();
    std::vector<ExchangeRecord> records(total);

    const auto start = std::chrono::steady_clock::now();
    const double rate = probePlan.rate_limit > 0 ? probePlan.rate_limit : 1.0;
    std::atomic<std::size_t> nextIndex{0};

    auto worker = [&]() {
        httplib::Client client(clientBase);
        client.set_connection_timeout(config.probe_timeout_seconds, 0);
        client.set_read_timeout(config.probe_timeout_seconds, 0);
        client.set_follow_location(false);

        for (;;) {
            const std::size_t i = nextIndex.fetch_add(1);
            if (i >= total) break;
            const ProbeTarget& target = probePlan.targets[i];
            const std::string path = base.prefix + target.path;

            const auto slot = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                          std::chrono::duration<double>(static_cast<double>(i) / rate));
            std::this_thread::sleep_until(slot);
            if (std::chrono::steady_clock::now() - start >
                std::chrono::duration<double>(config.probe_deadline_seconds)) {
                records[i] = make_record(target, i, clientBase, httplib::Result{nullptr, httplib::Error::Canceled});
                continue;
            }

            httplib::Headers headers;
            for (const HeaderField& h : target.headers) headers.emplace(h.name, h.value);

            auto attempt = [&]() -> httplib::Result {
                switch (target.method) {
                    case HttpMethod::Get: return client.Get(path, headers);
                    case HttpMethod::Head: return client.Head(path, headers);
                    case HttpMethod::Options: return client.Options(path, headers);
                    case HttpMethod::Post:
                        return client.Post(path, headers, "", target.body_media_type);
                    case HttpMethod::Put:
                        return client.Put(path, headers, "", target.body_media_type);
                    case HttpMethod::Patch:
                        return client.Patch(path, headers, "", target.body_media_type);
                    case HttpMethod::Delete: return client.Delete(path, headers);
                }
                return httplib::Result{nullptr, httplib::Error::Unknown};
            };

            httplib::Result result = attempt();
            if (!result) result = attempt();  // one retry
            records[i] = make_record(target, i, clientBase, result);
        }
    };

    const int threads = std::max(1, config.probe_max_in_flight);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return records;
}

}  // namespace restlint
