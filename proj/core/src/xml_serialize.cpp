#include <stdexcept>

#include "termweave/xml_io.hpp"

namespace termweave {

namespace {

std::string esc_text(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '\r': out += "&#xD;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string esc_attr(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\n': out += "&#xA;"; break;
            case '\t': out += "&#x9;"; break;
            case '\r': out += "&#xD;"; break;
            default: out += c;
        }
    }
    return out;
}

// Attributes print in one fixed order so serialization is deterministic.
struct AttrSet {
    std::optional<std::string> id, lang, type, target, i, n, rend, base;
    std::optional<XmlSpace> space;

    void global(const GlobalAttrs& g) {
        id = g.id;
        lang = g.lang;
        n = g.n;
        rend = g.rend;
        base = g.base;
        space = g.space;
    }

    void write(std::string& out) const {
        auto put = [&out](const char* name, const std::optional<std::string>& v) {
            if (v) out += std::string(" ") + name + "=\"" + esc_attr(*v) + "\"";
        };
        put("xml:id", id);
        put("xml:lang", lang);
        put("type", type);
        put("target", target);
        put("i", i);
        put("n", n);
        put("rend", rend);
        put("xml:base", base);
        if (space) {
            out += std::string(" xml:space=\"") +
                   (*space == XmlSpace::Preserve ? "preserve" : "default") + "\"";
        }
    }
};

std::optional<std::string> nonempty(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s;
}

class Writer {
public:
    explicit Writer(const Document& doc) : doc_(doc) {}

    std::string run() {
        out_ = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        if (doc_.entries.size() == 1) {
            // A lone entry becomes the root element, so the document base
            // moves onto it or it would be lost.
            if (doc_.baseUri && !doc_.entries[0].attrs.base) {
                TermEntry patched = doc_.entries[0];
                patched.attrs.base = doc_.baseUri;
                write_entry(patched, "/termEntry[0]", 0, true, true);
            } else {
                write_entry(doc_.entries[0], "/termEntry[0]", 0, true, true);
            }
        } else {
            out_ += "<termEntryList";
            ns_decls();
            if (doc_.baseUri) out_ += " xml:base=\"" + esc_attr(*doc_.baseUri) + "\"";
            if (doc_.entries.empty()) {
                out_ += "/>";
            } else {
                out_ += ">";
                int i = 0;
                for (const auto& e : doc_.entries) {
                    out_ += "\n";
                    write_entry(e, "/termEntry[" + std::to_string(i++) + "]", 1, false, true);
                }
                out_ += "\n</termEntryList>";
            }
        }
        out_ += "\n";
        return std::move(out_);
    }

private:
    const Document& doc_;
    std::string out_;

    void ns_decls() {
        out_ += std::string(" xmlns=\"") + names::TbxNs + "\"";
        if (doc_.dialect == Dialect::TeiBlend) {
            out_ += std::string(" xmlns:tei=\"") + names::TeiNs + "\"";
        }
    }

    std::string qname(const char* name, NsOrigin origin, const std::string& path) {
        if (origin == NsOrigin::Tei) {
            if (doc_.dialect == Dialect::MainstreamTbx) {
                throw std::invalid_argument(
                    "node at " + path +
                    " is in the TEI namespace and cannot be written in the mainstream dialect");
            }
            return std::string(names::TeiPrefix) + ":" + name;
        }
        return name;
    }

    void pad(int indent, bool pretty) {
        if (!pretty) return;
        out_.append(static_cast<std::size_t>(indent) * 2, ' ');
    }

    // Whether the children of a node may be pretty-printed.
    static bool child_pretty(const GlobalAttrs& g, bool pretty) {
        if (g.space) return *g.space != XmlSpace::Preserve && pretty;
        return pretty;
    }

    // ---- inline content ---------------------------------------------------

    void write_inline_seq(const MixedContent& content, const std::string& path) {
        ChildIndex idx;
        for (const auto& n : content) write_inline(n, path, idx);
    }

    struct ChildIndex {
        std::map<std::string, int> seen;
        std::string next(const std::string& parent, const char* name) {
            int i = seen[name]++;
            return parent + "/" + name + "[" + std::to_string(i) + "]";
        }
    };

    void write_inline(const InlineNode& node, const std::string& parent, ChildIndex& idx) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, TextNode>) {
                    out_ += esc_text(v.text);
                } else if constexpr (std::is_same_v<T, HiNode>) {
                    std::string p = idx.next(parent, names::Hi);
                    AttrSet a;
                    a.global(v.attrs);
                    a.target = v.legacyTarget;
                    mixed_elem(names::Hi, v.origin, a, v.content, p);
                } else if constexpr (std::is_same_v<T, ForeignNode>) {
                    std::string p = idx.next(parent, names::Foreign);
                    AttrSet a;
                    a.global(v.attrs);
                    mixed_elem(names::Foreign, v.origin, a, v.content, p);
                } else if constexpr (std::is_same_v<T, RefInlineNode>) {
                    std::string p = idx.next(parent, names::Ref);
                    AttrSet a;
                    a.global(v.attrs);
                    a.target = nonempty(v.target);
                    a.type = v.type;
                    mixed_elem(names::Ref, v.origin, a, v.content, p);
                } else if constexpr (std::is_same_v<T, BptNode>) {
                    std::string p = idx.next(parent, names::Bpt);
                    AttrSet a;
                    a.global(v.attrs);
                    a.i = nonempty(v.pairId);
                    text_elem(names::Bpt, NsOrigin::Tbx, a, v.text, p);
                } else if constexpr (std::is_same_v<T, EptNode>) {
                    std::string p = idx.next(parent, names::Ept);
                    AttrSet a;
                    a.global(v.attrs);
                    a.i = nonempty(v.pairId);
                    text_elem(names::Ept, NsOrigin::Tbx, a, v.text, p);
                } else if constexpr (std::is_same_v<T, PhNode>) {
                    std::string p = idx.next(parent, names::Ph);
                    AttrSet a;
                    a.global(v.attrs);
                    text_elem(names::Ph, NsOrigin::Tbx, a, v.text, p);
                } else if constexpr (std::is_same_v<T, BiblNode>) {
                    std::string p = idx.next(parent, names::Bibl);
                    AttrSet a;
                    a.global(v.attrs);
                    mixed_elem(names::Bibl, NsOrigin::Tei, a, v.content, p);
                }
            },
            node.node);
    }

    // An element with mixed content, written with no added whitespace.
    void mixed_elem(const char* name, NsOrigin origin, const AttrSet& attrs,
                    const MixedContent& content, const std::string& path) {
        std::string q = qname(name, origin, path);
        out_ += "<" + q;
        attrs.write(out_);
        if (content.empty()) {
            out_ += "/>";
            return;
        }
        out_ += ">";
        write_inline_seq(content, path);
        out_ += "</" + q + ">";
    }

    void text_elem(const char* name, NsOrigin origin, const AttrSet& attrs,
                   const std::string& text, const std::string& path) {
        std::string q = qname(name, origin, path);
        out_ += "<" + q;
        attrs.write(out_);
        if (text.empty()) {
            out_ += "/>";
        } else {
            out_ += ">" + esc_text(text) + "</" + q + ">";
        }
    }

    // ---- aux items ----------------------------------------------------------

    void write_aux(const AuxItem& item, const std::string& parent, ChildIndex& idx, int indent,
                   bool pretty) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, AdminItem>) {
                    std::string p = idx.next(parent, names::Admin);
                    AttrSet a;
                    a.global(v.attrs);
                    a.type = nonempty(v.type);
                    pad(indent, pretty);
                    mixed_elem(names::Admin, NsOrigin::Tbx, a, v.content, p);
                } else if constexpr (std::is_same_v<T, DescripItem>) {
                    std::string p = idx.next(parent, names::Descrip);
                    AttrSet a;
                    a.global(v.attrs);
                    a.type = nonempty(v.type);
                    pad(indent, pretty);
                    mixed_elem(names::Descrip, NsOrigin::Tbx, a, v.content, p);
                } else if constexpr (std::is_same_v<T, NoteItem>) {
                    std::string p = idx.next(parent, names::Note);
                    AttrSet a;
                    a.global(v.attrs);
                    pad(indent, pretty);
                    mixed_elem(names::Note, NsOrigin::Tbx, a, v.content, p);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    const char* name = v.kind == RefKind::Xref ? names::Xref : names::Ref;
                    std::string p = idx.next(parent, name);
                    AttrSet a;
                    a.global(v.attrs);
                    a.target = nonempty(v.target);
                    a.type = v.type;
                    pad(indent, pretty);
                    mixed_elem(name, v.origin, a, v.content, p);
                } else if constexpr (std::is_same_v<T, TransacItem>) {
                    std::string p = idx.next(parent, names::Transac);
                    AttrSet a;
                    a.global(v.attrs);
                    a.type = nonempty(v.type);
                    pad(indent, pretty);
                    mixed_elem(names::Transac, NsOrigin::Tbx, a, v.content, p);
                } else if constexpr (std::is_same_v<T, TransacNoteItem>) {
                    std::string p = idx.next(parent, names::TransacNote);
                    AttrSet a;
                    a.global(v.attrs);
                    a.type = nonempty(v.type);
                    pad(indent, pretty);
                    mixed_elem(names::TransacNote, NsOrigin::Tbx, a, v.content, p);
                } else if constexpr (std::is_same_v<T, DateItem>) {
                    std::string p = idx.next(parent, names::Date);
                    AttrSet a;
                    a.global(v.attrs);
                    pad(indent, pretty);
                    text_elem(names::Date, NsOrigin::Tbx, a, v.value, p);
                } else if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    std::string p = idx.next(parent, names::DescripGrp);
                    write_descrip_grp(v, p, indent, pretty);
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    std::string p = idx.next(parent, names::TransacGrp);
                    write_transac_grp(v, p, indent, pretty);
                }
            },
            item.item);
    }

    template <typename Grp, typename Head>
    void write_grp(const char* name, const Grp& grp, const std::optional<Head>& head,
                   const std::string& path, int indent, bool pretty) {
        AttrSet a;
        a.global(grp.attrs);
        pad(indent, pretty);
        out_ += std::string("<") + name;
        a.write(out_);
        if (!head && grp.companions.empty()) {
            out_ += "/>";
            return;
        }
        out_ += ">";
        bool inner = child_pretty(grp.attrs, pretty);
        ChildIndex idx;
        if (head) {
            if (inner) out_ += "\n";
            AuxItem wrapped;
            wrapped.item = *head;
            write_aux(wrapped, path, idx, indent + 1, inner);
        }
        for (const auto& c : grp.companions) {
            if (inner) out_ += "\n";
            write_aux(c, path, idx, indent + 1, inner);
        }
        if (inner) {
            out_ += "\n";
            pad(indent, true);
        }
        out_ += std::string("</") + name + ">";
    }

    void write_descrip_grp(const DescripGrpItem& grp, const std::string& path, int indent,
                           bool pretty) {
        write_grp(names::DescripGrp, grp, grp.descrip, path, indent, pretty);
    }

    void write_transac_grp(const TransacGrpItem& grp, const std::string& path, int indent,
                           bool pretty) {
        write_grp(names::TransacGrp, grp, grp.transac, path, indent, pretty);
    }

    // ---- structural levels --------------------------------------------------

    void write_term(const TermNode& term, const std::string& path, int indent, bool pretty) {
        AttrSet a;
        a.global(term.attrs);
        pad(indent, pretty);
        mixed_elem(names::Term, term.origin, a, term.content, path);
    }

    void write_tig(const TermSection& tig, const std::string& path, int indent, bool pretty) {
        AttrSet a;
        a.global(tig.attrs);
        pad(indent, pretty);
        out_ += "<tig";
        a.write(out_);
        bool empty = !tig.term && tig.termNotes.empty() && tig.aux.empty();
        if (empty) {
            out_ += "/>";
            return;
        }
        out_ += ">";
        bool inner = child_pretty(tig.attrs, pretty);
        ChildIndex idx;
        if (tig.term) {
            if (inner) out_ += "\n";
            write_term(*tig.term, idx.next(path, names::Term), indent + 1, inner);
        }
        for (const auto& tn : tig.termNotes) {
            if (inner) out_ += "\n";
            std::string p = idx.next(path, names::TermNote);
            AttrSet ta;
            ta.global(tn.attrs);
            ta.type = nonempty(tn.type);
            pad(indent + 1, inner);
            mixed_elem(names::TermNote, NsOrigin::Tbx, ta, tn.content, p);
        }
        for (const auto& item : tig.aux) {
            if (inner) out_ += "\n";
            write_aux(item, path, idx, indent + 1, inner);
        }
        if (inner) {
            out_ += "\n";
            pad(indent, true);
        }
        out_ += "</tig>";
    }

    void write_langset(const LangSet& ls, const std::string& path, int indent, bool pretty) {
        AttrSet a;
        a.global(ls.attrs);
        pad(indent, pretty);
        out_ += "<langSet";
        a.write(out_);
        if (ls.aux.empty() && ls.tigs.empty()) {
            out_ += "/>";
            return;
        }
        out_ += ">";
        bool inner = child_pretty(ls.attrs, pretty);
        ChildIndex idx;
        for (const auto& item : ls.aux) {
            if (inner) out_ += "\n";
            write_aux(item, path, idx, indent + 1, inner);
        }
        for (const auto& tig : ls.tigs) {
            if (inner) out_ += "\n";
            write_tig(tig, idx.next(path, names::Tig), indent + 1, inner);
        }
        if (inner) {
            out_ += "\n";
            pad(indent, true);
        }
        out_ += "</langSet>";
    }

    void write_entry(const TermEntry& entry, const std::string& path, int indent, bool isRoot,
                     bool pretty) {
        AttrSet a;
        a.global(entry.attrs);
        pad(indent, pretty);
        out_ += "<termEntry";
        if (isRoot) ns_decls();
        a.write(out_);
        if (entry.aux.empty() && entry.langSets.empty()) {
            out_ += "/>";
            return;
        }
        out_ += ">";
        bool inner = child_pretty(entry.attrs, pretty);
        ChildIndex idx;
        for (const auto& item : entry.aux) {
            if (inner) out_ += "\n";
            write_aux(item, path, idx, indent + 1, inner);
        }
        for (const auto& ls : entry.langSets) {
            if (inner) out_ += "\n";
            write_langset(ls, idx.next(path, names::LangSet), indent + 1, inner);
        }
        if (inner) {
            out_ += "\n";
            pad(indent, true);
        }
        out_ += "</termEntry>";
    }
};

}  // namespace

std::string serialize(const Document& doc) {
    return Writer(doc).run();
}

}  // namespace termweave
