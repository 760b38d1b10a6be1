#include <expat.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "termweave/xml_io.hpp"

namespace termweave {

namespace {

constexpr const char* kXmlNs = "http://www.w3.org/XML/1998/namespace";

// ---------------------------------------------------------------------------
// Stage 1: expat -> raw tree

struct RawAttr {
    std::string ns;
    std::string local;
    std::string value;
};

struct RawNode;

struct RawChild {
    std::unique_ptr<RawNode> elem;  // null for character data
    std::string text;
};

struct RawNode {
    std::string ns;
    std::string local;
    std::vector<RawAttr> attrs;
    std::vector<RawChild> children;
    SourceLocation loc;
};

void split_qname(const char* qname, std::string& ns, std::string& local) {
    const char* sep = std::strchr(qname, '\n');
    if (sep) {
        ns.assign(qname, sep);
        local.assign(sep + 1);
    } else {
        ns.clear();
        local.assign(qname);
    }
}

struct ExpatState {
    XML_Parser parser = nullptr;
    std::unique_ptr<RawNode> root;
    std::vector<RawNode*> stack;
    std::string fatal;  // set when we stop the parser ourselves

    SourceLocation here() const {
        SourceLocation loc;
        loc.line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser));
        loc.column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser)) + 1;
        XML_Index idx = XML_GetCurrentByteIndex(parser);
        loc.byteOffset = idx > 0 ? static_cast<std::size_t>(idx) : 0;
        return loc;
    }
};

void XMLCALL on_start(void* ud, const XML_Char* name, const XML_Char** atts) {
    auto* st = static_cast<ExpatState*>(ud);
    auto node = std::make_unique<RawNode>();
    split_qname(name, node->ns, node->local);
    node->loc = st->here();
    for (const XML_Char** a = atts; a && *a; a += 2) {
        RawAttr attr;
        split_qname(a[0], attr.ns, attr.local);
        attr.value = a[1];
        node->attrs.push_back(std::move(attr));
    }
    RawNode* raw = node.get();
    if (st->stack.empty()) {
        st->root = std::move(node);
    } else {
        st->stack.back()->children.push_back(RawChild{std::move(node), {}});
    }
    st->stack.push_back(raw);
}

void XMLCALL on_end(void* ud, const XML_Char*) {
    auto* st = static_cast<ExpatState*>(ud);
    if (!st->stack.empty()) st->stack.pop_back();
}

void XMLCALL on_text(void* ud, const XML_Char* s, int len) {
    auto* st = static_cast<ExpatState*>(ud);
    if (st->stack.empty() || len <= 0) return;
    auto& children = st->stack.back()->children;
    if (!children.empty() && !children.back().elem) {
        children.back().text.append(s, static_cast<std::size_t>(len));
    } else {
        children.push_back(RawChild{nullptr, std::string(s, static_cast<std::size_t>(len))});
    }
}

void XMLCALL on_xml_decl(void* ud, const XML_Char*, const XML_Char* encoding, int) {
    auto* st = static_cast<ExpatState*>(ud);
    if (!encoding) return;
    std::string enc(encoding);
    std::transform(enc.begin(), enc.end(), enc.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (enc != "utf-8" && enc != "us-ascii") {
        st->fatal = "unsupported encoding '" + std::string(encoding) + "', only UTF-8 input is accepted";
        XML_StopParser(st->parser, XML_FALSE);
    }
}

// ---------------------------------------------------------------------------
// Stage 2: raw tree -> typed model

enum class NsClass { Tbx, Tei, Foreign };

NsClass classify_ns(const std::string& ns) {
    if (ns.empty() || ns == names::TbxNs) return NsClass::Tbx;
    if (ns == names::TeiNs) return NsClass::Tei;
    return NsClass::Foreign;
}

const std::set<std::string>& tbx_names() {
    static const std::set<std::string> k{
        names::TermEntry, names::LangSet,  names::Tig,     names::Term,    names::TermNote,
        names::Admin,     names::Descrip,  names::DescripGrp, names::TransacGrp, names::Transac,
        names::TransacNote, names::Date,   names::Note,    names::Ref,     names::Xref,
        names::Hi,        names::Foreign,  names::Bpt,     names::Ept,     names::Ph,
        names::TermEntryList};
    return k;
}

const std::set<std::string>& tei_names() {
    static const std::set<std::string> k{names::Term, names::Ref, names::Hi, names::Foreign,
                                         names::Bibl};
    return k;
}

bool is_ws(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r';
    });
}

// Per-parent counter giving each same-named child a zero-based index.
struct ChildCounter {
    std::map<std::string, int> seen;
    std::string path(const std::string& parent, const std::string& name) {
        int idx = seen[name]++;
        return parent + "/" + name + "[" + std::to_string(idx) + "]";
    }
};

struct OwnAttrs {
    std::map<std::string, std::string> byName;

    std::optional<std::string> take(const char* name) {
        auto it = byName.find(name);
        if (it == byName.end()) return std::nullopt;
        std::optional<std::string> v = std::move(it->second);
        byName.erase(it);
        return v;
    }
};

class ModelBuilder {
public:
    explicit ModelBuilder(std::vector<Diagnostic>& diags) : diags_(diags) {}

    Document build(const RawNode& root, std::optional<Dialect> hint) {
        Document doc;
        NsClass rootNs = classify_ns(root.ns);
        if (rootNs == NsClass::Foreign) {
            diag(codes::UnknownNamespace, Severity::Error, "/", root.loc,
                 "root element '" + root.local + "' in unknown namespace '" + root.ns + "'");
        } else if (rootNs == NsClass::Tbx && root.local == names::TermEntry) {
            doc.entries.push_back(build_entry(root, "/termEntry[0]", false));
        } else if (rootNs == NsClass::Tbx && root.local == names::TermEntryList) {
            GlobalAttrs rootAttrs;
            read_attrs(root, rootAttrs);
            if (rootAttrs.base) doc.baseUri = rootAttrs.base;
            build_entry_list(root, doc);
        } else {
            diag(codes::UnknownElement, Severity::Error, "/", root.loc,
                 "root element '" + display_name(root) +
                     "' is not a terminological document");
        }
        if (doc.entries.size() == 1 && !doc.baseUri) {
            doc.baseUri = doc.entries[0].attrs.base;
        }
        doc.dialect = hint ? *hint : (sawTei_ ? Dialect::TeiBlend : Dialect::MainstreamTbx);
        return doc;
    }

private:
    std::vector<Diagnostic>& diags_;
    bool sawTei_ = false;

    void diag(const char* code, Severity sev, std::string path,
              std::optional<SourceLocation> loc, std::string msg) {
        diags_.push_back(make_diag(code, sev, std::move(path), loc, std::move(msg)));
    }

    static std::string display_name(const RawNode& n) {
        if (classify_ns(n.ns) == NsClass::Tei) return std::string(names::TeiPrefix) + ":" + n.local;
        return n.local;
    }

    // True when the element is part of the vocabulary in its namespace;
    // otherwise emits the skip diagnostic and returns false.
    bool screen(const RawNode& c, const std::string& path) {
        switch (classify_ns(c.ns)) {
            case NsClass::Foreign:
                diag(codes::UnknownNamespace, Severity::Error, path, c.loc,
                     "element '" + c.local + "' in unknown namespace '" + c.ns + "'");
                return false;
            case NsClass::Tei:
                if (!tei_names().count(c.local)) {
                    diag(codes::UnknownElement, Severity::Error, path, c.loc,
                         "unknown element '" + display_name(c) + "'");
                    return false;
                }
                return true;
            case NsClass::Tbx:
                if (!tbx_names().count(c.local)) {
                    diag(codes::UnknownElement, Severity::Error, path, c.loc,
                         "unknown element '" + c.local + "'");
                    return false;
                }
                return true;
        }
        return false;
    }

    OwnAttrs read_attrs(const RawNode& raw, GlobalAttrs& g) {
        OwnAttrs own;
        for (const auto& a : raw.attrs) {
            if (a.ns == kXmlNs) {
                if (a.local == "id") g.id = a.value;
                else if (a.local == "lang") g.lang = a.value;
                else if (a.local == "base") g.base = a.value;
                else if (a.local == "space") {
                    if (a.value == "preserve") g.space = XmlSpace::Preserve;
                    else if (a.value == "default") g.space = XmlSpace::Default;
                }
            } else if (a.ns.empty()) {
                if (a.local == "n") g.n = a.value;
                else if (a.local == "rend") g.rend = a.value;
                else own.byName.emplace(a.local, a.value);
            }
            // Attributes in any other namespace carry no meaning here.
        }
        return own;
    }

    bool effective_preserve(const GlobalAttrs& g, bool inherited) {
        if (g.space) return *g.space == XmlSpace::Preserve;
        return inherited;
    }

    NsOrigin origin_of(const RawNode& n) {
        if (classify_ns(n.ns) == NsClass::Tei) {
            sawTei_ = true;
            return NsOrigin::Tei;
        }
        return NsOrigin::Tbx;
    }

    // ---- mixed content ----------------------------------------------------

    static bool inline_capable(const RawNode& c) {
        const std::string& n = c.local;
        if (classify_ns(c.ns) == NsClass::Tei) return tei_names().count(n) && n != names::Term;
        return n == names::Hi || n == names::Foreign || n == names::Ref || n == names::Bpt ||
               n == names::Ept || n == names::Ph;
    }

    MixedContent build_mixed(const RawNode& raw, const std::string& path, bool preserve,
                             const char* parentName) {
        MixedContent out;
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (!out.empty() && std::holds_alternative<TextNode>(out.back().node)) {
                    std::get<TextNode>(out.back().node).text += child.text;
                } else {
                    out.push_back(InlineNode{TextNode{child.text}, std::nullopt});
                }
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            if (!inline_capable(c)) {
                diag(codes::ContentModelViolation, Severity::Error, cpath, c.loc,
                     "element '" + display_name(c) + "' is not allowed inside '" +
                         std::string(parentName) + "'");
                continue;
            }
            out.push_back(build_inline(c, cpath, preserve));
        }
        return out;
    }

    static std::string display_path_name(const RawNode& c) {
        // xref keeps its own name in paths; everything else uses the local name.
        return c.local;
    }

    InlineNode build_inline(const RawNode& c, const std::string& path, bool preserve) {
        InlineNode node;
        node.loc = c.loc;
        const std::string& n = c.local;
        if (n == names::Hi) {
            HiNode hi;
            OwnAttrs own = read_attrs(c, hi.attrs);
            hi.legacyTarget = own.take("target");
            hi.origin = origin_of(c);
            hi.content = build_mixed(c, path, effective_preserve(hi.attrs, preserve), names::Hi);
            node.node = std::move(hi);
        } else if (n == names::Foreign) {
            ForeignNode f;
            read_attrs(c, f.attrs);
            f.origin = origin_of(c);
            f.content = build_mixed(c, path, effective_preserve(f.attrs, preserve), names::Foreign);
            node.node = std::move(f);
        } else if (n == names::Ref) {
            RefInlineNode r;
            OwnAttrs own = read_attrs(c, r.attrs);
            r.target = own.take("target").value_or("");
            r.type = own.take("type");
            r.origin = origin_of(c);
            r.content = build_mixed(c, path, effective_preserve(r.attrs, preserve), names::Ref);
            node.node = std::move(r);
        } else if (n == names::Bpt || n == names::Ept) {
            GlobalAttrs g;
            OwnAttrs own;
            std::string text;
            const RawNode& raw = c;
            own = read_attrs(raw, g);
            gather_text(raw, path, text, n.c_str());
            if (n == names::Bpt) {
                BptNode b{std::move(g), own.take("i").value_or(""), std::move(text)};
                node.node = std::move(b);
            } else {
                EptNode e{std::move(g), own.take("i").value_or(""), std::move(text)};
                node.node = std::move(e);
            }
        } else if (n == names::Ph) {
            PhNode p;
            read_attrs(c, p.attrs);
            gather_text(c, path, p.text, names::Ph);
            node.node = std::move(p);
        } else {  // bibl
            BiblNode b;
            read_attrs(c, b.attrs);
            origin_of(c);  // bibl is always TEI; records blend usage
            b.content = build_mixed(c, path, effective_preserve(b.attrs, preserve), names::Bibl);
            node.node = std::move(b);
        }
        return node;
    }

    // For elements whose model is text only: concatenates character data and
    // rejects element children.
    void gather_text(const RawNode& raw, const std::string& path, std::string& out,
                     const char* parentName) {
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                out += child.text;
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            diag(codes::ContentModelViolation, Severity::Error, cpath, c.loc,
                 "element '" + display_name(c) + "' is not allowed inside '" +
                     std::string(parentName) + "'");
        }
    }

    // ---- aux items ----------------------------------------------------------

    static bool aux_capable(const std::string& n) {
        return n == names::Admin || n == names::Descrip || n == names::DescripGrp ||
               n == names::TransacGrp || n == names::Note || n == names::Ref ||
               n == names::Xref || n == names::Transac || n == names::TransacNote ||
               n == names::Date;
    }

    AuxItem build_aux(const RawNode& c, const std::string& path, bool preserve) {
        AuxItem item;
        item.loc = c.loc;
        const std::string& n = c.local;
        if (n == names::Admin) {
            AdminItem a;
            OwnAttrs own = read_attrs(c, a.attrs);
            a.type = own.take("type").value_or("");
            a.content = build_mixed(c, path, effective_preserve(a.attrs, preserve), names::Admin);
            item.item = std::move(a);
        } else if (n == names::Descrip) {
            DescripItem d;
            OwnAttrs own = read_attrs(c, d.attrs);
            d.type = own.take("type").value_or("");
            d.content = build_mixed(c, path, effective_preserve(d.attrs, preserve), names::Descrip);
            item.item = std::move(d);
        } else if (n == names::Note) {
            NoteItem nn;
            read_attrs(c, nn.attrs);
            nn.content = build_mixed(c, path, effective_preserve(nn.attrs, preserve), names::Note);
            item.item = std::move(nn);
        } else if (n == names::Ref || n == names::Xref) {
            RefItem r;
            OwnAttrs own = read_attrs(c, r.attrs);
            r.target = own.take("target").value_or("");
            r.type = own.take("type");
            r.kind = (n == names::Xref) ? RefKind::Xref : RefKind::Ref;
            r.origin = (n == names::Xref) ? NsOrigin::Tbx : origin_of(c);
            r.content = build_mixed(c, path, effective_preserve(r.attrs, preserve),
                                    n == names::Xref ? names::Xref : names::Ref);
            item.item = std::move(r);
        } else if (n == names::Transac) {
            TransacItem t;
            OwnAttrs own = read_attrs(c, t.attrs);
            t.type = own.take("type").value_or("");
            t.content = build_mixed(c, path, effective_preserve(t.attrs, preserve), names::Transac);
            item.item = std::move(t);
        } else if (n == names::TransacNote) {
            TransacNoteItem t;
            OwnAttrs own = read_attrs(c, t.attrs);
            t.type = own.take("type").value_or("");
            t.content =
                build_mixed(c, path, effective_preserve(t.attrs, preserve), names::TransacNote);
            item.item = std::move(t);
        } else if (n == names::Date) {
            DateItem d;
            read_attrs(c, d.attrs);
            gather_text(c, path, d.value, names::Date);
            item.item = std::move(d);
        } else if (n == names::DescripGrp) {
            item.item = build_descrip_grp(c, path, preserve);
        } else {  // transacGrp
            item.item = build_transac_grp(c, path, preserve);
        }
        return item;
    }

    DescripGrpItem build_descrip_grp(const RawNode& raw, const std::string& path, bool preserve) {
        DescripGrpItem grp;
        read_attrs(raw, grp.attrs);
        bool pres = effective_preserve(grp.attrs, preserve);
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text) && !pres) continue;
                grp.childTokens.push_back(names::TextToken);
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            const std::string& n = c.local;
            if (n == names::Descrip && !grp.descrip) {
                grp.childTokens.push_back(names::Descrip);
                AuxItem item = build_aux(c, cpath, pres);
                grp.descrip = std::get<DescripItem>(std::move(item.item));
            } else if (aux_capable(n)) {
                grp.childTokens.push_back(n == names::Xref ? names::Ref : n);
                grp.companions.push_back(build_aux(c, cpath, pres));
            } else {
                grp.childTokens.push_back(n);
            }
        }
        return grp;
    }

    TransacGrpItem build_transac_grp(const RawNode& raw, const std::string& path, bool preserve) {
        TransacGrpItem grp;
        read_attrs(raw, grp.attrs);
        bool pres = effective_preserve(grp.attrs, preserve);
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text) && !pres) continue;
                grp.childTokens.push_back(names::TextToken);
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            const std::string& n = c.local;
            if (n == names::Transac && !grp.transac) {
                grp.childTokens.push_back(names::Transac);
                AuxItem item = build_aux(c, cpath, pres);
                grp.transac = std::get<TransacItem>(std::move(item.item));
            } else if (aux_capable(n)) {
                grp.childTokens.push_back(n == names::Xref ? names::Ref : n);
                grp.companions.push_back(build_aux(c, cpath, pres));
            } else {
                grp.childTokens.push_back(n);
            }
        }
        return grp;
    }

    // ---- structural levels --------------------------------------------------

    TermNode build_term(const RawNode& raw, const std::string& path, bool preserve) {
        TermNode t;
        read_attrs(raw, t.attrs);
        t.origin = origin_of(raw);
        t.content = build_mixed(raw, path, effective_preserve(t.attrs, preserve), names::Term);
        return t;
    }

    TermSection build_tig(const RawNode& raw, const std::string& path, bool preserve) {
        TermSection tig;
        tig.loc = raw.loc;
        read_attrs(raw, tig.attrs);
        bool pres = effective_preserve(tig.attrs, preserve);
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text) && !pres) continue;
                tig.childTokens.push_back(names::TextToken);
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            const std::string& n = c.local;
            if (n == names::Term) {
                tig.childTokens.push_back(names::Term);
                if (!tig.term) {
                    tig.term = build_term(c, cpath, pres);
                    tig.termLoc = c.loc;
                }
            } else if (n == names::TermNote) {
                tig.childTokens.push_back(names::TermNote);
                TermNoteItem tn;
                tn.loc = c.loc;
                OwnAttrs tnOwn = read_attrs(c, tn.attrs);
                tn.type = tnOwn.take("type").value_or("");
                tn.content =
                    build_mixed(c, cpath, effective_preserve(tn.attrs, pres), names::TermNote);
                tig.termNotes.push_back(std::move(tn));
            } else if (aux_capable(n)) {
                tig.childTokens.push_back(n == names::Xref ? names::Ref : n);
                tig.aux.push_back(build_aux(c, cpath, pres));
            } else {
                tig.childTokens.push_back(n);
            }
        }
        return tig;
    }

    LangSet build_langset(const RawNode& raw, const std::string& path, bool preserve) {
        LangSet ls;
        ls.loc = raw.loc;
        read_attrs(raw, ls.attrs);
        bool pres = effective_preserve(ls.attrs, preserve);
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text) && !pres) continue;
                ls.childTokens.push_back(names::TextToken);
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            const std::string& n = c.local;
            if (n == names::Tig) {
                ls.childTokens.push_back(names::Tig);
                ls.tigs.push_back(build_tig(c, cpath, pres));
            } else if (aux_capable(n)) {
                ls.childTokens.push_back(n == names::Xref ? names::Ref : n);
                ls.aux.push_back(build_aux(c, cpath, pres));
            } else {
                ls.childTokens.push_back(n);
            }
        }
        return ls;
    }

    TermEntry build_entry(const RawNode& raw, const std::string& path, bool preserve) {
        TermEntry entry;
        entry.loc = raw.loc;
        read_attrs(raw, entry.attrs);
        bool pres = effective_preserve(entry.attrs, preserve);
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text) && !pres) continue;
                entry.childTokens.push_back(names::TextToken);
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path(path, display_path_name(c));
            if (!screen(c, cpath)) continue;
            const std::string& n = c.local;
            if (n == names::LangSet) {
                entry.childTokens.push_back(names::LangSet);
                entry.langSets.push_back(build_langset(c, cpath, pres));
            } else if (aux_capable(n)) {
                entry.childTokens.push_back(n == names::Xref ? names::Ref : n);
                entry.aux.push_back(build_aux(c, cpath, pres));
            } else {
                entry.childTokens.push_back(n);
            }
        }
        return entry;
    }

    void build_entry_list(const RawNode& raw, Document& doc) {
        ChildCounter counter;
        for (const auto& child : raw.children) {
            if (!child.elem) {
                if (is_ws(child.text)) continue;
                diag(codes::ContentModelViolation, Severity::Error, "/", std::nullopt,
                     "character data is not allowed at document level");
                continue;
            }
            const RawNode& c = *child.elem;
            std::string cpath = counter.path("", display_path_name(c));
            if (!screen(c, cpath)) continue;
            if (c.local == names::TermEntry && classify_ns(c.ns) == NsClass::Tbx) {
                doc.entries.push_back(build_entry(c, cpath, false));
            } else {
                diag(codes::ContentModelViolation, Severity::Error, cpath, c.loc,
                     "element '" + display_name(c) + "' is not allowed at document level");
            }
        }
    }
};

bool has_utf16_or_32_bom(std::string_view bytes) {
    if (bytes.size() >= 2) {
        unsigned char b0 = static_cast<unsigned char>(bytes[0]);
        unsigned char b1 = static_cast<unsigned char>(bytes[1]);
        if ((b0 == 0xFF && b1 == 0xFE) || (b0 == 0xFE && b1 == 0xFF)) return true;
        if (b0 == 0x00 || b1 == 0x00) return true;  // UTF-16/32 without BOM
    }
    return false;
}

}  // namespace

ParseResult parse(std::string_view xml, const std::string& sourceName,
                  std::optional<Dialect> dialectHint) {
    ParseResult result;

    if (has_utf16_or_32_bom(xml)) {
        result.diagnostics.push_back(make_diag(
            codes::FatalInput, Severity::Error, "/", std::nullopt,
            "input does not look like UTF-8, only UTF-8 input is accepted"));
        return result;
    }

    ExpatState st;
    st.parser = XML_ParserCreateNS(nullptr, '\n');
    if (!st.parser) {
        result.diagnostics.push_back(make_diag(codes::FatalInput, Severity::Error, "/",
                                               std::nullopt, "cannot create XML parser"));
        return result;
    }
    XML_SetUserData(st.parser, &st);
    XML_SetElementHandler(st.parser, on_start, on_end);
    XML_SetCharacterDataHandler(st.parser, on_text);
    XML_SetXmlDeclHandler(st.parser, on_xml_decl);
    XML_SetParamEntityParsing(st.parser, XML_PARAM_ENTITY_PARSING_NEVER);

    XML_Status status = XML_Parse(st.parser, xml.data(), static_cast<int>(xml.size()), 1);
    if (status != XML_STATUS_OK) {
        SourceLocation loc;
        loc.line = static_cast<std::size_t>(XML_GetCurrentLineNumber(st.parser));
        loc.column = static_cast<std::size_t>(XML_GetCurrentColumnNumber(st.parser)) + 1;
        std::string msg = st.fatal.empty()
                              ? std::string("XML parse error: ") +
                                    XML_ErrorString(XML_GetErrorCode(st.parser))
                              : st.fatal;
        XML_ParserFree(st.parser);
        result.diagnostics.push_back(
            make_diag(codes::FatalInput, Severity::Error, "/", loc, std::move(msg)));
        return result;
    }
    XML_ParserFree(st.parser);

    if (!st.root) {
        result.diagnostics.push_back(make_diag(codes::FatalInput, Severity::Error, "/",
                                               std::nullopt, "input holds no XML document"));
        return result;
    }

    ModelBuilder builder(result.diagnostics);
    Document doc = builder.build(*st.root, dialectHint);
    doc.sourceName = sourceName;
    result.document = std::move(doc);
    return result;
}

ParseResult parse_file(const std::string& path, std::optional<Dialect> dialectHint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult result;
        result.diagnostics.push_back(make_diag(codes::FatalInput, Severity::Error, "/",
                                               std::nullopt,
                                               "cannot read file '" + path + "'"));
        return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    return parse(bytes, path, dialectHint);
}

}  // namespace termweave
