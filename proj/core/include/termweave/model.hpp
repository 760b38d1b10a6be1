#ifndef TERMWEAVE_MODEL_HPP
#define TERMWEAVE_MODEL_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "termweave/diagnostics.hpp"

namespace termweave {

// Serialization dialect of a whole document: mainstream TBX keeps every
// element in the TBX namespace; the TEI blend moves term/ref/hi/foreign
// (and bibl) into the TEI namespace.
enum class Dialect { MainstreamTbx, TeiBlend };

// Namespace a duplicated element actually lives in. Tracked per node so a
// parsed document reserializes exactly and the mainstream serializer can
// reject TEI-origin nodes.
enum class NsOrigin { Tbx, Tei };

enum class XmlSpace { Default, Preserve };

/// att.global: attributes every element may carry.
struct GlobalAttrs {
    std::optional<std::string> id;    // xml:id, NCName when well-formed
    std::optional<std::string> lang;  // xml:lang
    std::optional<std::string> base;  // xml:base
    std::optional<XmlSpace> space;    // xml:space
    std::optional<std::string> n;
    std::optional<std::string> rend;

    bool empty() const;
};

// ---------------------------------------------------------------------------
// Inline (mixed) content

struct InlineNode;
using MixedContent = std::vector<InlineNode>;

struct TextNode {
    std::string text;
};

/// <hi>. legacyTarget holds the pre-blend @target of mainstream documents;
/// conversion to the blend migrates it to a ref and the field stays empty
/// in TeiBlend documents.
struct HiNode {
    GlobalAttrs attrs;  // rend lives here
    std::optional<std::string> legacyTarget;
    NsOrigin origin = NsOrigin::Tbx;
    MixedContent content;
};

struct ForeignNode {
    GlobalAttrs attrs;  // xml:lang lives here
    NsOrigin origin = NsOrigin::Tbx;
    MixedContent content;
};

/// Inline <ref> (blend only in the default schema).
struct RefInlineNode {
    GlobalAttrs attrs;
    std::string target;
    std::optional<std::string> type;
    NsOrigin origin = NsOrigin::Tbx;
    MixedContent content;
};

// Meta-markup: encapsulated non-XML markup, plain text inside.
struct BptNode {
    GlobalAttrs attrs;
    std::string pairId;  // @i, pairs with the ept carrying the same token
    std::string text;
};
struct EptNode {
    GlobalAttrs attrs;
    std::string pairId;
    std::string text;
};
struct PhNode {
    GlobalAttrs attrs;
    std::string text;
};

/// Unstructured <tei:bibl> wrapper around a source string.
struct BiblNode {
    GlobalAttrs attrs;
    MixedContent content;
};

struct InlineNode {
    std::variant<TextNode, HiNode, ForeignNode, RefInlineNode, BptNode,
                 EptNode, PhNode, BiblNode>
        node;
    std::optional<SourceLocation> loc;
};

// ---------------------------------------------------------------------------
// Auxiliary information (model.auxInfo and grouping companions)

struct AuxItem;

struct AdminItem {
    std::string type;
    GlobalAttrs attrs;
    MixedContent content;
};

struct DescripItem {
    std::string type;
    GlobalAttrs attrs;
    MixedContent content;
};

struct NoteItem {
    GlobalAttrs attrs;
    MixedContent content;
};

enum class RefKind { Ref, Xref };

/// Structural <ref> / legacy <xref>. Xref only ever occurs with Tbx origin.
struct RefItem {
    GlobalAttrs attrs;
    std::string target;
    std::optional<std::string> type;
    RefKind kind = RefKind::Ref;
    NsOrigin origin = NsOrigin::Tbx;
    MixedContent content;
};

struct TransacItem {
    std::string type;  // "transaction" in well-formed data
    GlobalAttrs attrs;
    MixedContent content;
};

struct TransacNoteItem {
    std::string type;
    GlobalAttrs attrs;
    MixedContent content;
};

struct DateItem {
    GlobalAttrs attrs;
    std::string value;  // YYYY-MM-DD when well-formed
};

/// <descripGrp>: one descrip refined by companions. The descrip is optional
/// in memory so invalid input can be represented; the validator enforces its
/// presence and position.
struct DescripGrpItem {
    GlobalAttrs attrs;
    std::optional<DescripItem> descrip;
    std::vector<AuxItem> companions;
    std::vector<std::string> childTokens;  // parse-time child order, "" if built in memory
};

struct TransacGrpItem {
    GlobalAttrs attrs;
    std::optional<TransacItem> transac;
    std::vector<AuxItem> companions;
    std::vector<std::string> childTokens;
};

struct AuxItem {
    std::variant<AdminItem, DescripItem, DescripGrpItem, TransacGrpItem,
                 NoteItem, RefItem, TransacItem, TransacNoteItem, DateItem>
        item;
    std::optional<SourceLocation> loc;
};

// ---------------------------------------------------------------------------
// The three TMF structural levels

struct TermNode {
    GlobalAttrs attrs;
    NsOrigin origin = NsOrigin::Tbx;
    MixedContent content;  // text and hi only in valid documents
};

struct TermNoteItem {
    std::string type;
    GlobalAttrs attrs;
    MixedContent content;
    std::optional<SourceLocation> loc;
};

/// Term section (<tig>).
struct TermSection {
    GlobalAttrs attrs;
    std::optional<TermNode> term;
    std::vector<TermNoteItem> termNotes;
    std::vector<AuxItem> aux;
    std::vector<std::string> childTokens;
    std::optional<SourceLocation> loc;
    std::optional<SourceLocation> termLoc;
};

struct LangSet {
    GlobalAttrs attrs;  // lang required in valid documents
    std::vector<AuxItem> aux;
    std::vector<TermSection> tigs;
    std::vector<std::string> childTokens;
    std::optional<SourceLocation> loc;
};

struct TermEntry {
    GlobalAttrs attrs;
    std::vector<AuxItem> aux;
    std::vector<LangSet> langSets;
    std::vector<std::string> childTokens;
    std::optional<SourceLocation> loc;
};

struct Document {
    Dialect dialect = Dialect::MainstreamTbx;
    std::vector<TermEntry> entries;
    std::optional<std::string> baseUri;
    std::string sourceName;  // diagnostics only, not part of document identity
};

// ---------------------------------------------------------------------------
// Token names used for structural paths and content-model matching

namespace names {
inline constexpr const char* TbxNs = "http://www.tbx.org";
inline constexpr const char* TeiNs = "http://www.tei-c.org/ns/1.0";
inline constexpr const char* TeiPrefix = "tei";

inline constexpr const char* TermEntry = "termEntry";
inline constexpr const char* LangSet = "langSet";
inline constexpr const char* Tig = "tig";
inline constexpr const char* Term = "term";
inline constexpr const char* TermNote = "termNote";
inline constexpr const char* Admin = "admin";
inline constexpr const char* Descrip = "descrip";
inline constexpr const char* DescripGrp = "descripGrp";
inline constexpr const char* TransacGrp = "transacGrp";
inline constexpr const char* Transac = "transac";
inline constexpr const char* TransacNote = "transacNote";
inline constexpr const char* Date = "date";
inline constexpr const char* Note = "note";
inline constexpr const char* Ref = "ref";
inline constexpr const char* Xref = "xref";
inline constexpr const char* Hi = "hi";
inline constexpr const char* Foreign = "foreign";
inline constexpr const char* Bpt = "bpt";
inline constexpr const char* Ept = "ept";
inline constexpr const char* Ph = "ph";
inline constexpr const char* Bibl = "bibl";
// Wrapper root for documents with zero or several entries.
inline constexpr const char* TermEntryList = "termEntryList";
// Pseudo-token standing for character data in child sequences.
inline constexpr const char* TextToken = "#text";
}  // namespace names

const char* aux_name(const AuxItem& a);
const char* inline_name(const InlineNode& n);
/// Element name an aux item answers to in content-model matching. Identical
/// to aux_name except that legacy xref items match as "ref".
const char* aux_match_token(const AuxItem& a);

// ---------------------------------------------------------------------------
// Lexical checks

bool is_ncname(std::string_view s);
bool is_language_tag(std::string_view s);
bool is_iso_date(std::string_view s);

// ---------------------------------------------------------------------------
// Node visiting

/// What a document walk reports for one element-backed node.
struct NodeRef {
    std::string path;
    const char* name;                     // element name ("xref" for xref items)
    const GlobalAttrs* attrs;             // null for nodes without att.global
    const std::string* target = nullptr;  // ref/xref/inline-ref target
    const std::string* legacyHiTarget = nullptr;
    std::optional<SourceLocation> loc;
};

/// Depth-first, document-order visit of every element-backed node.
void for_each_node(const Document& doc,
                   const std::function<void(const NodeRef&)>& fn);

// ---------------------------------------------------------------------------
// Operations

struct IdIndex {
    // id -> path of the first bearer, document order
    std::map<std::string, std::string> byId;
    // one entry per extra occurrence: (id, path of the later bearer)
    std::vector<std::pair<std::string, std::string>> duplicates;
};

IdIndex collect_ids(const Document& doc);

enum class PointerClass { Resolved, External, Dangling, Malformed };

struct PointerResult {
    PointerClass cls;
    std::optional<std::string> path;  // set iff Resolved
    std::string detail;               // offending string for Malformed
};

/// Resolve a URI reference against the document's xml:id census. Bare
/// fragments "#X" resolve locally; anything else is classified external.
PointerResult resolve_pointer(const Document& doc, std::string_view target);
PointerResult resolve_pointer(const IdIndex& ids, std::string_view target);

/// Canonical form: adjacent text nodes merged, empty text nodes dropped.
/// Everything else, including child order, is left untouched. Idempotent.
Document canonicalize(const Document& doc);
MixedContent canonicalize(const MixedContent& content);

/// First path where the two documents differ structurally, or nullopt when
/// they are equal. Parse metadata (locations, child-order tokens, source
/// names, base URIs) does not participate.
std::optional<std::string> structural_diff(const Document& a, const Document& b);

inline bool structurally_equal(const Document& a, const Document& b) {
    return !structural_diff(a, b).has_value();
}

/// Concatenation of all character data in document order. Markup-neutral:
/// both conversion directions must preserve this string exactly.
std::string concatenated_text(const Document& doc);
std::string concatenated_text(const MixedContent& content);

}  // namespace termweave

#endif
