#ifndef TERMWEAVE_DIAGNOSTICS_HPP
#define TERMWEAVE_DIAGNOSTICS_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace termweave {

/// Position of a construct in the original byte stream. Lines and columns
/// are 1-based, byteOffset counts from 0.
struct SourceLocation {
    std::size_t line = 0;
    std::size_t column = 0;
    std::size_t byteOffset = 0;
};

enum class Severity { Error, Warning, Info };

const char* severity_name(Severity s);

// Stable diagnostic code table. Codes are part of the tool's contract and
// must not be renumbered.
namespace codes {
// Outside the TBX range: the input never became a document (unreadable
// file, malformed XML, unsupported encoding). Always fatal.
inline constexpr const char* FatalInput = "XML000";

inline constexpr const char* UnknownElement = "TBX001";
inline constexpr const char* UnknownNamespace = "TBX002";
inline constexpr const char* EmptyDocument = "TBX003";
inline constexpr const char* ContentModelViolation = "TBX010";
inline constexpr const char* MissingLangSetLang = "TBX011";
inline constexpr const char* UnknownDataCategory = "TBX020";
inline constexpr const char* DataCategoryWrongLevel = "TBX021";
inline constexpr const char* PicklistViolation = "TBX022";
inline constexpr const char* DuplicateId = "TBX030";
inline constexpr const char* DanglingPointer = "TBX031";
inline constexpr const char* ExternalPointer = "TBX032";
inline constexpr const char* DuplicateLanguageSection = "TBX040";
inline constexpr const char* HiTargetMigrated = "TBX050";
inline constexpr const char* AmbiguousIdref = "TBX051";
}  // namespace codes

struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    std::string path;  // structural path of the offending node, "" if none
    std::optional<SourceLocation> location;
    std::string message;
};

Diagnostic make_diag(const char* code, Severity sev, std::string path,
                     std::optional<SourceLocation> loc, std::string message);

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;
    std::map<Severity, std::size_t> counts;
    bool valid = true;  // false iff any error-severity diagnostic present

    void recount();
};

}  // namespace termweave

#endif
