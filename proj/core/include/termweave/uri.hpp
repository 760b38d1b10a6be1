#ifndef TERMWEAVE_URI_HPP
#define TERMWEAVE_URI_HPP

#include <string_view>

namespace termweave::uri {

/// Syntactic URI-reference check (RFC 3986 shape: component character sets
/// and percent-triplets; no scheme registry, no dereferencing).
bool is_valid_reference(std::string_view s);

/// True for "#fragment" forms with a syntactically valid fragment.
bool is_bare_fragment(std::string_view s);

bool has_scheme(std::string_view s);

/// Legacy IDREF heuristic: a valid NCName that is not an explicit URI
/// (no scheme, no slash, no leading '#').
bool looks_like_idref(std::string_view s);

/// IDREF values that are also plausible relative URIs (NCName containing
/// a dot, e.g. "v1.2" or "page.html"). Converted with a warning.
bool is_ambiguous_idref(std::string_view s);

}  // namespace termweave::uri

#endif
