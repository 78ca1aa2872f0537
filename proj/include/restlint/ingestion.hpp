#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restlint/api_model.hpp"

namespace restlint {

struct ingest_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DescriptionFormat { JsonText, YamlText };
enum class OpenApiDialect { V30, V31 };

struct IngestionReport {
    CanonicalApiModel model;
    std::vector<std::pair<SourceLocation, std::string>> warnings;
    std::size_t skipped_nodes = 0;
};

// Maps an OpenAPI 3.0/3.1 description onto the canonical model. $ref
// references resolve within the document; unresolvable refs become warnings
// and skipped nodes. Syntax errors throw ingest_error with line/column.
IngestionReport ingest_description(std::string_view document, DescriptionFormat format,
                                   OpenApiDialect dialect, std::string file_name = "",
                                   const std::vector<std::string>& link_markers = {"links", "_links",
                                                                                   "href"});

// Picks the format from content (YAML unless the first significant byte
// starts a JSON document).
DescriptionFormat detect_format(std::string_view document);

struct ExchangeIngestion {
    std::vector<ExchangeRecord> records;
    std::vector<std::string> warnings;
};

// Reads the documented HAR subset (log.entries[].request/response). Entries
// whose URL is not absolute are skipped with a warning.
ExchangeIngestion ingest_exchanges(std::string_view log_document,
                                   const std::vector<std::string>& link_markers = {"links", "_links",
                                                                                   "href"});

// Serializes records back to the same HAR subset (round-trippable).
std::string exchanges_to_har(const std::vector<ExchangeRecord>& records);

}  // namespace restlint
