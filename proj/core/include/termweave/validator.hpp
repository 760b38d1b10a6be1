#ifndef TERMWEAVE_VALIDATOR_HPP
#define TERMWEAVE_VALIDATOR_HPP

#include <vector>

#include "termweave/diagnostics.hpp"
#include "termweave/model.hpp"
#include "termweave/registry.hpp"

namespace termweave {

/// Structure pass: content models at every level, required xml:lang on
/// language sections, duplicate language sections, empty documents.
void validate_structure(const Document& doc, const Registry& reg,
                        std::vector<Diagnostic>& out);

/// Data category pass: the type attribute of every meta data element must
/// name a known data category, sit at an allowed level, and respect its
/// picklist.
void validate_datacats(const Document& doc, const Registry& reg,
                       std::vector<Diagnostic>& out);

/// Pointer pass: duplicate xml:ids, dangling local targets, external
/// targets.
void validate_pointers(const Document& doc, std::vector<Diagnostic>& out);

/// All three passes. Never mutates the document. Throws RegistryError when
/// the registry itself is unusable.
ValidationReport validate(const Document& doc, const Registry& reg);

}  // namespace termweave

#endif
