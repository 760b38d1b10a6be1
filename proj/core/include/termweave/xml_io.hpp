#ifndef TERMWEAVE_XML_IO_HPP
#define TERMWEAVE_XML_IO_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "termweave/diagnostics.hpp"
#include "termweave/model.hpp"

namespace termweave {

struct ParseResult {
    std::optional<Document> document;  // absent when the input is unusable
    std::vector<Diagnostic> diagnostics;

    bool fatal() const { return !document.has_value(); }
};

/// Parses a document whose root is a termEntry or a termEntryList. UTF-8
/// only. Malformed XML and unsupported encodings are fatal; unknown
/// elements and foreign namespaces are diagnosed, skipped, and parsing
/// continues. The dialect is detected from the namespaces in use unless a
/// hint pins it.
ParseResult parse(std::string_view xml, const std::string& sourceName,
                  std::optional<Dialect> dialectHint = std::nullopt);

ParseResult parse_file(const std::string& path,
                       std::optional<Dialect> dialectHint = std::nullopt);

/// Deterministic serializer: equal documents yield identical bytes. The
/// document's dialect selects the namespace layout; serializing a TEI-origin
/// node into the mainstream dialect throws std::invalid_argument naming the
/// node's path.
std::string serialize(const Document& doc);

}  // namespace termweave

#endif
