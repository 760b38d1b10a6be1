#ifndef TERMWEAVE_REGISTRY_HPP
#define TERMWEAVE_REGISTRY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "termweave/content_model.hpp"

namespace termweave {

enum class ClassKind { Model, Attribute };

/// Named group of members. Model classes group elements (or other classes)
/// that occur at the same places; attribute classes group attributes.
struct ClassSpec {
    std::string name;
    ClassKind kind = ClassKind::Model;
    std::vector<std::string> members;  // insertion order, duplicate-free
};

enum class ElemNs { Tbx, Tei };

struct ElementSpec {
    std::string name;
    ElemNs ns = ElemNs::Tbx;
    std::vector<std::string> attrClasses;
    std::vector<std::string> ownAttrs;
    ContentExprPtr content;
    std::string doc;
    std::vector<std::string> examples;
};

enum class DataCatLevel { Entry, LangSet, TermSection };

const char* level_name(DataCatLevel level);

/// One data category: which meta data-element hosts it, at which structural
/// levels it may occur, and what its content must look like.
struct DataCatSpec {
    std::string name;
    std::string host;  // admin | descrip | termNote | transac | transacNote | ref
    std::vector<DataCatLevel> levels;
    std::vector<std::string> picklist;  // empty = plain text
    std::string note;                   // free-form remark for the docs
};

struct Registry {
    std::map<std::string, ElementSpec> elements;
    std::map<std::string, ClassSpec> classes;
    std::vector<DataCatSpec> dataCats;
    std::string version;

    const ElementSpec* find_element(std::string_view name) const;
    const ClassSpec* find_class(std::string_view name) const;
    const DataCatSpec* find_datacat(std::string_view host, std::string_view name) const;
};

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The built-in specification: the blend's three structural levels, the
/// auxInfo/metaMarkup/limitedPhrase classes, and the default data
/// categories.
Registry load_default();

/// Default registry overlaid with the customization directives in `text`.
/// Line-oriented format:
///   element <name> = <content-expr>
///   class <name> += <member>
///   class <name> -= <member>
///   datacat <host>/<name> @ <level>[,<level>...]
/// Names containing a dot refer to classes inside content expressions.
/// Throws RegistryError with a line number on bad input, and on overlays
/// that leave dangling references behind.
Registry load_from_text(std::string_view text, const std::string& sourceName);
Registry load_from_file(const std::string& path);

/// Content-expression parser for the overlay syntax. Throws RegistryError.
ContentExprPtr parse_content_expr(std::string_view text);

/// Expands every class reference into a choice over its members. Pure;
/// idempotent. Throws RegistryError on unknown classes, cyclic class
/// membership, or dangling element references.
Registry resolve(const Registry& reg);

/// Compact grammar, one `name = expr` rule per element, sorted by name.
std::string emit_schema(const Registry& reg);

/// Markdown reference with one `##` section per element. The section set
/// equals the schema rule set.
std::string emit_docs(const Registry& reg);

/// Compiled acceptor per element, built from the resolved registry.
std::map<std::string, Matcher> compile_matchers(const Registry& reg);

}  // namespace termweave

#endif
