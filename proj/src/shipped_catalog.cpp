#include "restlint/catalog.hpp"

namespace restlint {

// The 82-rule registry. Importance and the rule texts of the 45 medium/high
// entries follow the published consensus ratings; qa_impact vectors satisfy
// every published aggregate (see validate_catalog). Low-importance rules ship
// without checkers (automation: manual).
namespace {
constexpr std::string_view kShippedCatalogJson = R"json({
  "version": 1,
  "rules": [
    {"id": 1, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "Forward slash separator (/) must be used to indicate a hierarchical relationship"},
    {"id": 2, "category": "uris", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["maintainability"],
     "text": "A trailing forward slash (/) should not be included in URIs"},
    {"id": 3, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "Hyphens (-) should be used to improve the readability of URIs"},
    {"id": 4, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "Underscores (_) should not be used in URIs"},
    {"id": 5, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "Lowercase letters should be preferred in URI paths"},
    {"id": 6, "category": "uris", "importance": "medium", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "File extensions should not be included in URIs"},
    {"id": 7, "category": "uris", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Consistent subdomain names should be used for your APIs"},
    {"id": 8, "category": "uris", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Consistent subdomain names should be used for your client developer portal"},
    {"id": 9, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "A singular noun should be used for document names"},
    {"id": 10, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "A plural noun should be used for collection names"},
    {"id": 11, "category": "uris", "importance": "medium", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "A plural noun should be used for store names"},
    {"id": 12, "category": "uris", "importance": "medium", "automation": "static",
     "qa_impact": ["usability", "maintainability"],
     "text": "A verb or verb phrase should be used for controller names"},
    {"id": 13, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "Variable path segments may be substituted with identity-based values"},
    {"id": 14, "category": "uris", "importance": "high", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "CRUD function names should not be used in URIs"},
    {"id": 15, "category": "uris", "importance": "medium", "automation": "static",
     "qa_impact": ["functional_suitability", "usability"],
     "text": "The query component of a URI may be used to filter collections or stores"},
    {"id": 16, "category": "uris", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "The query component of a URI should be used to paginate collection or store results"},
    {"id": 17, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "GET and POST must not be used to tunnel other request methods"},
    {"id": 18, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["functional_suitability", "compatibility", "usability", "maintainability"],
     "text": "GET must be used to retrieve a representation of a resource"},
    {"id": 19, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "HEAD should be used to retrieve response headers"},
    {"id": 20, "category": "http", "importance": "medium", "automation": "static",
     "qa_impact": ["functional_suitability", "compatibility", "usability", "maintainability"],
     "text": "PUT must be used to both insert and update a stored resource"},
    {"id": 21, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "PUT must be used to update mutable resources"},
    {"id": 22, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["functional_suitability", "compatibility", "usability", "maintainability"],
     "text": "POST must be used to create a new resource in a collection"},
    {"id": 23, "category": "http", "importance": "high", "automation": "static",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "POST must be used to execute controllers"},
    {"id": 24, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["functional_suitability", "compatibility", "usability", "maintainability"],
     "text": "DELETE must be used to remove a resource from its parent"},
    {"id": 25, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "OPTIONS should be used to retrieve metadata that describes a resource's available interactions"},
    {"id": 26, "category": "http", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "200 (\"OK\") should be used to indicate nonspecific success"},
    {"id": 27, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "200 (\"OK\") must not be used to communicate errors in the response body"},
    {"id": 28, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "201 (\"Created\") must be used to indicate successful resource creation"},
    {"id": 29, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "202 (\"Accepted\") must be used to indicate successful start of an asynchronous action"},
    {"id": 30, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "204 (\"No Content\") should be used when the response body is intentionally empty"},
    {"id": 31, "category": "http", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "301 (\"Moved Permanently\") should be used to relocate resources"},
    {"id": 32, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "302 (\"Found\") should not be used"},
    {"id": 33, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "303 (\"See Other\") should be used to refer the client to a different URI"},
    {"id": 34, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["performance_efficiency", "compatibility", "usability", "maintainability"],
     "text": "304 (\"Not Modified\") should be used to preserve bandwidth"},
    {"id": 35, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "307 (\"Temporary Redirect\") should be used to tell clients to resubmit the request to another URI"},
    {"id": 36, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "400 (\"Bad Request\") may be used to indicate nonspecific failure"},
    {"id": 37, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "401 (\"Unauthorized\") must be used when there is a problem with the client's credentials"},
    {"id": 38, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "403 (\"Forbidden\") should be used to forbid access regardless of authorization state"},
    {"id": 39, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "404 (\"Not Found\") must be used when a client's URI cannot be mapped to a resource"},
    {"id": 40, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "405 (\"Method Not Allowed\") must be used when the HTTP method is not supported"},
    {"id": 41, "category": "http", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "406 (\"Not Acceptable\") must be used when the requested media type cannot be served"},
    {"id": 42, "category": "http", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "409 (\"Conflict\") should be used to indicate a violation of resource state"},
    {"id": 43, "category": "http", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "412 (\"Precondition Failed\") should be used to support conditional operations"},
    {"id": 44, "category": "http", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "415 (\"Unsupported Media Type\") must be used when the media type of a request's payload cannot be processed"},
    {"id": 45, "category": "http", "importance": "high", "automation": "dynamic",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "500 (\"Internal Server Error\") should be used to indicate API malfunction"},
    {"id": 46, "category": "meta", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability"],
     "text": "Content-Type must be used"},
    {"id": 47, "category": "meta", "importance": "medium", "automation": "dynamic",
     "qa_impact": ["reliability"],
     "text": "Content-Length should be used"},
    {"id": 48, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Last-Modified should be used in responses"},
    {"id": 49, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "ETag should be used in responses"},
    {"id": 50, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Stores must support conditional PUT requests"},
    {"id": 51, "category": "meta", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["functional_suitability", "compatibility", "usability"],
     "text": "Location must be used to specify the URI of a newly created resource"},
    {"id": 52, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Cache-Control, Expires, and Date response headers should be used to encourage caching"},
    {"id": 53, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Cache-Control, Expires, and Pragma response headers may be used to discourage caching"},
    {"id": 54, "category": "meta", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["performance_efficiency", "usability"],
     "note": "functional-suitability impact contested (5 of 8 experts)",
     "text": "Caching should be encouraged"},
    {"id": 55, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Expiration caching headers should be used with 200 (\"OK\") responses"},
    {"id": 56, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Expiration caching headers may optionally be used with 3xx and 4xx responses"},
    {"id": 57, "category": "meta", "importance": "high", "automation": "hybrid",
     "qa_impact": ["functional_suitability", "compatibility", "usability"],
     "text": "Custom HTTP headers must not be used to change the behavior of HTTP methods"},
    {"id": 58, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Application-specific media types should be used"},
    {"id": 59, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Media type negotiation should be supported when multiple representations are available"},
    {"id": 60, "category": "meta", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Media type selection using a query parameter may be supported"},
    {"id": 61, "category": "representation", "importance": "high", "automation": "hybrid",
     "qa_impact": ["usability", "maintainability"],
     "note": "functional-suitability impact contested (5 of 8 experts)",
     "text": "JSON should be supported for resource representation"},
    {"id": 62, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "JSON must be well-formed"},
    {"id": 63, "category": "representation", "importance": "medium", "automation": "static",
     "qa_impact": ["compatibility", "usability"],
     "text": "XML and other formats may optionally be used for resource representation"},
    {"id": 64, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Additional envelopes must not be created"},
    {"id": 65, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "A consistent form should be used to represent links"},
    {"id": 66, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "A consistent form should be used to represent link relations"},
    {"id": 67, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "A consistent form should be used to advertise links"},
    {"id": 68, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "A self link should be included in response message body representations"},
    {"id": 69, "category": "representation", "importance": "medium", "automation": "static",
     "qa_impact": ["compatibility", "usability"],
     "text": "Minimize the number of advertised \"entry point\" API URIs"},
    {"id": 70, "category": "representation", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Links should be used to advertise a resource's available actions in a state-sensitive manner"},
    {"id": 71, "category": "representation", "importance": "high", "automation": "static",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "A consistent form should be used to represent media type formats"},
    {"id": 72, "category": "representation", "importance": "high", "automation": "static",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "A consistent form should be used to represent media type schemas"},
    {"id": 73, "category": "representation", "importance": "high", "automation": "hybrid",
     "qa_impact": ["compatibility", "usability", "maintainability"],
     "text": "A consistent form should be used to represent error responses"},
    {"id": 74, "category": "client", "importance": "high", "automation": "static",
     "qa_impact": ["maintainability"],
     "text": "New URIs should be used to introduce new concepts"},
    {"id": 75, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Schemas must be used to manage representational form versions"},
    {"id": 76, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "Entity tags should be used to manage representational state versions"},
    {"id": 77, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "OAuth may be used to protect resources"},
    {"id": 78, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "API management solutions may be used to protect resources"},
    {"id": 79, "category": "client", "importance": "medium", "automation": "static",
     "qa_impact": ["performance_efficiency"],
     "text": "The query component of a URI should be used to support partial response"},
    {"id": 80, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "The query component of a URI should be used to embed linked resources"},
    {"id": 81, "category": "client", "importance": "low", "automation": "manual",
     "qa_impact": [],
     "text": "JSONP should be supported to provide multi-origin read access from JavaScript"},
    {"id": 82, "category": "client", "importance": "medium", "automation": "hybrid",
     "qa_impact": ["portability"],
     "text": "CORS should be supported to provide multi-origin read/write access from JavaScript"}
  ]
})json";
}  // namespace

std::string_view shipped_catalog_json() {
    return kShippedCatalogJson;
}

const RuleCatalog& shipped_catalog() {
    static const RuleCatalog catalog = load_catalog(kShippedCatalogJson);
    return catalog;
}

}  // namespace restlint
