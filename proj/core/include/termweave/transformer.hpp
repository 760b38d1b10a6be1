#ifndef TERMWEAVE_TRANSFORMER_HPP
#define TERMWEAVE_TRANSFORMER_HPP

#include <optional>
#include <string>
#include <vector>

#include "termweave/diagnostics.hpp"
#include "termweave/model.hpp"

namespace termweave {

struct ConvertOptions {
    // to_tei: wrap the content of admin[type=source] in a tei:bibl.
    bool wrapSourcesAsBibl = false;
    // to_tbx: restore the mainstream idioms (xref for external references,
    // hi@target for inline ones) even where that drops markup.
    bool strictLegacy = false;
    // Mark the result failed when any rewrite lost information.
    bool failOnLoss = false;
};

struct LossRecord {
    std::string path;
    std::string description;
};

struct ConvertResult {
    Document document;
    std::vector<Diagnostic> diagnostics;
    std::vector<LossRecord> losses;
    bool failedOnLoss = false;  // failOnLoss was set and losses is non-empty
};

/// Mainstream -> blend. Pure. Throws std::invalid_argument when the input
/// is already a blend document.
ConvertResult to_tei(const Document& doc, const ConvertOptions& opts = {});

/// Blend -> mainstream. Pure. Throws std::invalid_argument when the input
/// is already mainstream.
ConvertResult to_tbx(const Document& doc, const ConvertOptions& opts = {});

struct RoundTripReport {
    bool equal = true;
    std::optional<std::string> firstDivergence;
    std::vector<Diagnostic> diagnostics;  // both conversion passes
};

/// Converts to the other dialect and back, then compares the result with
/// the canonical form of the input.
RoundTripReport check_roundtrip(const Document& doc, const ConvertOptions& opts = {});

}  // namespace termweave

#endif
