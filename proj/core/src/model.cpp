#include "termweave/model.hpp"

#include <cctype>
#include <sstream>

#include "termweave/uri.hpp"

namespace termweave {

const char* severity_name(Severity s) {
    switch (s) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "error";
}

Diagnostic make_diag(const char* code, Severity sev, std::string path,
                     std::optional<SourceLocation> loc, std::string message) {
    return Diagnostic{code, sev, std::move(path), loc, std::move(message)};
}

void ValidationReport::recount() {
    counts.clear();
    valid = true;
    for (const auto& d : diagnostics) {
        ++counts[d.severity];
        if (d.severity == Severity::Error) valid = false;
    }
}

bool GlobalAttrs::empty() const {
    return !id && !lang && !base && !space && !n && !rend;
}

const char* aux_name(const AuxItem& a) {
    return std::visit(
        [](const auto& v) -> const char* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AdminItem>) return names::Admin;
            else if constexpr (std::is_same_v<T, DescripItem>) return names::Descrip;
            else if constexpr (std::is_same_v<T, DescripGrpItem>) return names::DescripGrp;
            else if constexpr (std::is_same_v<T, TransacGrpItem>) return names::TransacGrp;
            else if constexpr (std::is_same_v<T, NoteItem>) return names::Note;
            else if constexpr (std::is_same_v<T, RefItem>)
                return v.kind == RefKind::Xref ? names::Xref : names::Ref;
            else if constexpr (std::is_same_v<T, TransacItem>) return names::Transac;
            else if constexpr (std::is_same_v<T, TransacNoteItem>) return names::TransacNote;
            else return names::Date;
        },
        a.item);
}

const char* aux_match_token(const AuxItem& a) {
    const char* n = aux_name(a);
    return n == names::Xref ? names::Ref : n;
}

const char* inline_name(const InlineNode& n) {
    return std::visit(
        [](const auto& v) -> const char* {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TextNode>) return names::TextToken;
            else if constexpr (std::is_same_v<T, HiNode>) return names::Hi;
            else if constexpr (std::is_same_v<T, ForeignNode>) return names::Foreign;
            else if constexpr (std::is_same_v<T, RefInlineNode>) return names::Ref;
            else if constexpr (std::is_same_v<T, BptNode>) return names::Bpt;
            else if constexpr (std::is_same_v<T, EptNode>) return names::Ept;
            else if constexpr (std::is_same_v<T, PhNode>) return names::Ph;
            else return names::Bibl;
        },
        n.node);
}

// ---------------------------------------------------------------------------
// Lexical checks

bool is_ncname(std::string_view s) {
    if (s.empty()) return false;
    unsigned char first = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(first) || s[0] == '_' || first >= 0x80)) return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80)
            continue;
        return false;
    }
    return true;
}

bool is_language_tag(std::string_view s) {
    if (s.empty()) return false;
    std::size_t start = 0;
    bool first = true;
    while (start <= s.size()) {
        std::size_t dash = s.find('-', start);
        std::string_view sub =
            s.substr(start, dash == std::string_view::npos ? s.size() - start : dash - start);
        if (sub.empty() || sub.size() > 8) return false;
        for (char c : sub) {
            if (!std::isalnum(static_cast<unsigned char>(c))) return false;
            if (first && !std::isalpha(static_cast<unsigned char>(c))) return false;
        }
        first = false;
        if (dash == std::string_view::npos) break;
        start = dash + 1;
    }
    return true;
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int month = (s[5] - '0') * 10 + (s[6] - '0');
    int day = (s[8] - '0') * 10 + (s[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// ---------------------------------------------------------------------------
// Document walk

namespace {

using Visit = std::function<void(const NodeRef&)>;

std::string child_path(const std::string& base, const char* name, std::size_t idx) {
    std::ostringstream os;
    os << base << '/' << name << '[' << idx << ']';
    return os.str();
}

class Walker {
  public:
    explicit Walker(const Visit& fn) : fn_(fn) {}

    void document(const Document& doc) {
        for (std::size_t i = 0; i < doc.entries.size(); ++i)
            entry(doc.entries[i], child_path("", names::TermEntry, i));
    }

  private:
    // Names are counted per parent so paths read like simple XPath steps.
    struct Counter {
        std::map<std::string, std::size_t> seen;
        std::size_t next(const char* name) { return seen[name]++; }
    };

    void entry(const TermEntry& e, const std::string& path) {
        fn_(NodeRef{path, names::TermEntry, &e.attrs, nullptr, nullptr, e.loc});
        Counter c;
        for (const auto& a : e.aux) aux(a, path, c);
        for (const auto& ls : e.langSets)
            langSet(ls, child_path(path, names::LangSet, c.next(names::LangSet)));
    }

    void langSet(const LangSet& ls, const std::string& path) {
        fn_(NodeRef{path, names::LangSet, &ls.attrs, nullptr, nullptr, ls.loc});
        Counter c;
        for (const auto& a : ls.aux) aux(a, path, c);
        for (const auto& t : ls.tigs)
            tig(t, child_path(path, names::Tig, c.next(names::Tig)));
    }

    void tig(const TermSection& t, const std::string& path) {
        fn_(NodeRef{path, names::Tig, &t.attrs, nullptr, nullptr, t.loc});
        Counter c;
        if (t.term) {
            std::string p = child_path(path, names::Term, c.next(names::Term));
            fn_(NodeRef{p, names::Term, &t.term->attrs, nullptr, nullptr, t.termLoc});
            mixed(t.term->content, p);
        }
        for (const auto& tn : t.termNotes) {
            std::string p = child_path(path, names::TermNote, c.next(names::TermNote));
            fn_(NodeRef{p, names::TermNote, &tn.attrs, nullptr, nullptr, tn.loc});
            mixed(tn.content, p);
        }
        for (const auto& a : t.aux) aux(a, path, c);
    }

    void aux(const AuxItem& a, const std::string& parent, Counter& c) {
        const char* name = aux_name(a);
        std::string path = child_path(parent, name, c.next(name));
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    fn_(NodeRef{path, name, &v.attrs, nullptr, nullptr, a.loc});
                    Counter inner;
                    if (v.descrip) {
                        std::string p = child_path(path, names::Descrip,
                                                   inner.next(names::Descrip));
                        fn_(NodeRef{p, names::Descrip, &v.descrip->attrs,
                                    nullptr, nullptr, std::nullopt});
                        mixed(v.descrip->content, p);
                    }
                    for (const auto& comp : v.companions) aux(comp, path, inner);
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    fn_(NodeRef{path, name, &v.attrs, nullptr, nullptr, a.loc});
                    Counter inner;
                    if (v.transac) {
                        std::string p = child_path(path, names::Transac,
                                                   inner.next(names::Transac));
                        fn_(NodeRef{p, names::Transac, &v.transac->attrs,
                                    nullptr, nullptr, std::nullopt});
                        mixed(v.transac->content, p);
                    }
                    for (const auto& comp : v.companions) aux(comp, path, inner);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    fn_(NodeRef{path, name, &v.attrs, &v.target, nullptr, a.loc});
                    mixed(v.content, path);
                } else if constexpr (std::is_same_v<T, DateItem>) {
                    fn_(NodeRef{path, name, &v.attrs, nullptr, nullptr, a.loc});
                } else {
                    fn_(NodeRef{path, name, &v.attrs, nullptr, nullptr, a.loc});
                    mixed(v.content, path);
                }
            },
            a.item);
    }

    void mixed(const MixedContent& content, const std::string& parent) {
        Counter c;
        for (const auto& n : content) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, TextNode>) {
                        // text carries no identity
                    } else if constexpr (std::is_same_v<T, HiNode>) {
                        std::string p = child_path(parent, names::Hi, c.next(names::Hi));
                        fn_(NodeRef{p, names::Hi, &v.attrs, nullptr,
                                    v.legacyTarget ? &*v.legacyTarget : nullptr, n.loc});
                        mixed(v.content, p);
                    } else if constexpr (std::is_same_v<T, ForeignNode>) {
                        std::string p =
                            child_path(parent, names::Foreign, c.next(names::Foreign));
                        fn_(NodeRef{p, names::Foreign, &v.attrs, nullptr, nullptr, n.loc});
                        mixed(v.content, p);
                    } else if constexpr (std::is_same_v<T, RefInlineNode>) {
                        std::string p = child_path(parent, names::Ref, c.next(names::Ref));
                        fn_(NodeRef{p, names::Ref, &v.attrs, &v.target, nullptr, n.loc});
                        mixed(v.content, p);
                    } else if constexpr (std::is_same_v<T, BiblNode>) {
                        std::string p = child_path(parent, names::Bibl, c.next(names::Bibl));
                        fn_(NodeRef{p, names::Bibl, &v.attrs, nullptr, nullptr, n.loc});
                        mixed(v.content, p);
                    } else {
                        const char* nm = inline_name(n);
                        std::string p = child_path(parent, nm, c.next(nm));
                        fn_(NodeRef{p, nm, &v.attrs, nullptr, nullptr, n.loc});
                    }
                },
                n.node);
        }
    }

    const Visit& fn_;
};

}  // namespace

void for_each_node(const Document& doc, const Visit& fn) {
    Walker(fn).document(doc);
}

// ---------------------------------------------------------------------------
// Identifier census and pointer resolution

IdIndex collect_ids(const Document& doc) {
    IdIndex index;
    for_each_node(doc, [&](const NodeRef& ref) {
        if (!ref.attrs || !ref.attrs->id) return;
        const std::string& id = *ref.attrs->id;
        if (!is_ncname(id)) return;  // unaddressable, skip the census
        auto [it, inserted] = index.byId.emplace(id, ref.path);
        if (!inserted) index.duplicates.emplace_back(id, ref.path);
    });
    return index;
}

PointerResult resolve_pointer(const IdIndex& ids, std::string_view target) {
    if (!uri::is_valid_reference(target))
        return {PointerClass::Malformed, std::nullopt, std::string(target)};
    if (uri::is_bare_fragment(target)) {
        std::string id(target.substr(1));
        auto it = ids.byId.find(id);
        if (it == ids.byId.end())
            return {PointerClass::Dangling, std::nullopt, id};
        return {PointerClass::Resolved, it->second, ""};
    }
    return {PointerClass::External, std::nullopt, ""};
}

PointerResult resolve_pointer(const Document& doc, std::string_view target) {
    return resolve_pointer(collect_ids(doc), target);
}

// ---------------------------------------------------------------------------
// Canonicalization

namespace {

MixedContent canonical_mixed(const MixedContent& content);

template <typename T>
T canonical_copy(const T& v);

AuxItem canonical_aux(const AuxItem& a) {
    AuxItem out = a;
    std::visit(
        [](auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DescripGrpItem>) {
                if (v.descrip) v.descrip->content = canonical_mixed(v.descrip->content);
                for (auto& c : v.companions) c = canonical_aux(c);
            } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                if (v.transac) v.transac->content = canonical_mixed(v.transac->content);
                for (auto& c : v.companions) c = canonical_aux(c);
            } else if constexpr (!std::is_same_v<T, DateItem>) {
                v.content = canonical_mixed(v.content);
            }
        },
        out.item);
    return out;
}

MixedContent canonical_mixed(const MixedContent& content) {
    MixedContent out;
    for (const auto& n : content) {
        InlineNode copy = n;
        std::visit(
            [](auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, HiNode> ||
                              std::is_same_v<T, ForeignNode> ||
                              std::is_same_v<T, RefInlineNode> ||
                              std::is_same_v<T, BiblNode>) {
                    v.content = canonical_mixed(v.content);
                }
            },
            copy.node);
        if (auto* text = std::get_if<TextNode>(&copy.node)) {
            if (text->text.empty()) continue;
            if (!out.empty()) {
                if (auto* prev = std::get_if<TextNode>(&out.back().node)) {
                    prev->text += text->text;
                    continue;
                }
            }
        }
        out.push_back(std::move(copy));
    }
    return out;
}

}  // namespace

MixedContent canonicalize(const MixedContent& content) {
    return canonical_mixed(content);
}

Document canonicalize(const Document& doc) {
    Document out = doc;
    for (auto& e : out.entries) {
        for (auto& a : e.aux) a = canonical_aux(a);
        for (auto& ls : e.langSets) {
            for (auto& a : ls.aux) a = canonical_aux(a);
            for (auto& t : ls.tigs) {
                if (t.term) t.term->content = canonical_mixed(t.term->content);
                for (auto& tn : t.termNotes) tn.content = canonical_mixed(tn.content);
                for (auto& a : t.aux) a = canonical_aux(a);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural diff

namespace {

struct Differ {
    std::optional<std::string> result;

    bool note(const std::string& path) {
        if (!result) result = path;
        return false;
    }

    template <typename T>
    bool scalar(const T& a, const T& b, const std::string& path) {
        if (a == b) return true;
        return note(path);
    }

    bool attrs(const GlobalAttrs& a, const GlobalAttrs& b, const std::string& path) {
        if (a.id != b.id) return note(path + "@xml:id");
        if (a.lang != b.lang) return note(path + "@xml:lang");
        if (a.base != b.base) return note(path + "@xml:base");
        if (a.space != b.space) return note(path + "@xml:space");
        if (a.n != b.n) return note(path + "@n");
        if (a.rend != b.rend) return note(path + "@rend");
        return true;
    }

    bool mixed(const MixedContent& a, const MixedContent& b, const std::string& path) {
        if (a.size() != b.size()) return note(path);
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string p = path + "/node[" + std::to_string(i) + "]";
            if (a[i].node.index() != b[i].node.index()) return note(p);
            bool ok = std::visit(
                [&](const auto& va) {
                    using T = std::decay_t<decltype(va)>;
                    const auto& vb = std::get<T>(b[i].node);
                    if constexpr (std::is_same_v<T, TextNode>) {
                        return scalar(va.text, vb.text, p);
                    } else if constexpr (std::is_same_v<T, HiNode>) {
                        return attrs(va.attrs, vb.attrs, p) &&
                               scalar(va.legacyTarget, vb.legacyTarget, p + "@target") &&
                               scalar(va.origin, vb.origin, p + "@ns") &&
                               mixed(va.content, vb.content, p);
                    } else if constexpr (std::is_same_v<T, ForeignNode>) {
                        return attrs(va.attrs, vb.attrs, p) &&
                               scalar(va.origin, vb.origin, p + "@ns") &&
                               mixed(va.content, vb.content, p);
                    } else if constexpr (std::is_same_v<T, RefInlineNode>) {
                        return attrs(va.attrs, vb.attrs, p) &&
                               scalar(va.target, vb.target, p + "@target") &&
                               scalar(va.type, vb.type, p + "@type") &&
                               scalar(va.origin, vb.origin, p + "@ns") &&
                               mixed(va.content, vb.content, p);
                    } else if constexpr (std::is_same_v<T, BiblNode>) {
                        return attrs(va.attrs, vb.attrs, p) &&
                               mixed(va.content, vb.content, p);
                    } else if constexpr (std::is_same_v<T, PhNode>) {
                        return attrs(va.attrs, vb.attrs, p) && scalar(va.text, vb.text, p);
                    } else {
                        return attrs(va.attrs, vb.attrs, p) &&
                               scalar(va.pairId, vb.pairId, p + "@i") &&
                               scalar(va.text, vb.text, p);
                    }
                },
                a[i].node);
            if (!ok) return false;
        }
        return true;
    }

    bool aux(const AuxItem& a, const AuxItem& b, const std::string& path) {
        if (a.item.index() != b.item.index()) return note(path);
        return std::visit(
            [&](const auto& va) {
                using T = std::decay_t<decltype(va)>;
                const auto& vb = std::get<T>(b.item);
                if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    if (va.descrip.has_value() != vb.descrip.has_value())
                        return note(path + "/descrip[0]");
                    if (va.descrip &&
                        !(attrs(va.descrip->attrs, vb.descrip->attrs, path + "/descrip[0]") &&
                          scalar(va.descrip->type, vb.descrip->type, path + "/descrip[0]@type") &&
                          mixed(va.descrip->content, vb.descrip->content, path + "/descrip[0]")))
                        return false;
                    return attrs(va.attrs, vb.attrs, path) &&
                           auxList(va.companions, vb.companions, path);
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    if (va.transac.has_value() != vb.transac.has_value())
                        return note(path + "/transac[0]");
                    if (va.transac &&
                        !(attrs(va.transac->attrs, vb.transac->attrs, path + "/transac[0]") &&
                          scalar(va.transac->type, vb.transac->type, path + "/transac[0]@type") &&
                          mixed(va.transac->content, vb.transac->content, path + "/transac[0]")))
                        return false;
                    return attrs(va.attrs, vb.attrs, path) &&
                           auxList(va.companions, vb.companions, path);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    return attrs(va.attrs, vb.attrs, path) &&
                           scalar(va.target, vb.target, path + "@target") &&
                           scalar(va.type, vb.type, path + "@type") &&
                           scalar(va.kind, vb.kind, path) &&
                           scalar(va.origin, vb.origin, path + "@ns") &&
                           mixed(va.content, vb.content, path);
                } else if constexpr (std::is_same_v<T, NoteItem>) {
                    return attrs(va.attrs, vb.attrs, path) &&
                           mixed(va.content, vb.content, path);
                } else if constexpr (std::is_same_v<T, DateItem>) {
                    return attrs(va.attrs, vb.attrs, path) &&
                           scalar(va.value, vb.value, path);
                } else {
                    return attrs(va.attrs, vb.attrs, path) &&
                           scalar(va.type, vb.type, path + "@type") &&
                           mixed(va.content, vb.content, path);
                }
            },
            a.item);
    }

    bool auxList(const std::vector<AuxItem>& a, const std::vector<AuxItem>& b,
                 const std::string& parent) {
        if (a.size() != b.size()) return note(parent);
        std::map<std::string, std::size_t> counter;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const char* name = aux_name(a[i]);
            std::string p = child_path(parent, name, counter[name]++);
            if (!aux(a[i], b[i], p)) return false;
        }
        return true;
    }

    bool tig(const TermSection& a, const TermSection& b, const std::string& path) {
        if (!attrs(a.attrs, b.attrs, path)) return false;
        if (a.term.has_value() != b.term.has_value()) return note(path + "/term[0]");
        if (a.term) {
            std::string p = path + "/term[0]";
            if (!attrs(a.term->attrs, b.term->attrs, p)) return false;
            if (!scalar(a.term->origin, b.term->origin, p + "@ns")) return false;
            if (!mixed(a.term->content, b.term->content, p)) return false;
        }
        if (a.termNotes.size() != b.termNotes.size()) return note(path);
        for (std::size_t i = 0; i < a.termNotes.size(); ++i) {
            std::string p = child_path(path, names::TermNote, i);
            if (!attrs(a.termNotes[i].attrs, b.termNotes[i].attrs, p)) return false;
            if (!scalar(a.termNotes[i].type, b.termNotes[i].type, p + "@type")) return false;
            if (!mixed(a.termNotes[i].content, b.termNotes[i].content, p)) return false;
        }
        return auxList(a.aux, b.aux, path);
    }
};

}  // namespace

std::optional<std::string> structural_diff(const Document& a, const Document& b) {
    Differ d;
    if (a.dialect != b.dialect) return std::string("/@dialect");
    if (a.entries.size() != b.entries.size()) return std::string("/");
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        std::string path = child_path("", names::TermEntry, i);
        const TermEntry& ea = a.entries[i];
        const TermEntry& eb = b.entries[i];
        if (!d.attrs(ea.attrs, eb.attrs, path)) return d.result;
        if (!d.auxList(ea.aux, eb.aux, path)) return d.result;
        if (ea.langSets.size() != eb.langSets.size()) return path;
        for (std::size_t j = 0; j < ea.langSets.size(); ++j) {
            std::string lp = child_path(path, names::LangSet, j);
            const LangSet& la = ea.langSets[j];
            const LangSet& lb = eb.langSets[j];
            if (!d.attrs(la.attrs, lb.attrs, lp)) return d.result;
            if (!d.auxList(la.aux, lb.aux, lp)) return d.result;
            if (la.tigs.size() != lb.tigs.size()) return lp;
            for (std::size_t k = 0; k < la.tigs.size(); ++k) {
                std::string tp = child_path(lp, names::Tig, k);
                if (!d.tig(la.tigs[k], lb.tigs[k], tp)) return d.result;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Character-data concatenation

namespace {

void collect_text(const MixedContent& content, std::string& out);

void collect_text_aux(const AuxItem& a, std::string& out) {
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, DescripGrpItem>) {
                if (v.descrip) collect_text(v.descrip->content, out);
                for (const auto& c : v.companions) collect_text_aux(c, out);
            } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                if (v.transac) collect_text(v.transac->content, out);
                for (const auto& c : v.companions) collect_text_aux(c, out);
            } else if constexpr (std::is_same_v<T, DateItem>) {
                out += v.value;
            } else {
                collect_text(v.content, out);
            }
        },
        a.item);
}

void collect_text(const MixedContent& content, std::string& out) {
    for (const auto& n : content) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, TextNode>) {
                    out += v.text;
                } else if constexpr (std::is_same_v<T, BptNode> ||
                                     std::is_same_v<T, EptNode> ||
                                     std::is_same_v<T, PhNode>) {
                    out += v.text;
                } else {
                    collect_text(v.content, out);
                }
            },
            n.node);
    }
}

}  // namespace

std::string concatenated_text(const MixedContent& content) {
    std::string out;
    collect_text(content, out);
    return out;
}

std::string concatenated_text(const Document& doc) {
    std::string out;
    for (const auto& e : doc.entries) {
        for (const auto& a : e.aux) collect_text_aux(a, out);
        for (const auto& ls : e.langSets) {
            for (const auto& a : ls.aux) collect_text_aux(a, out);
            for (const auto& t : ls.tigs) {
                if (t.term) collect_text(t.term->content, out);
                for (const auto& tn : t.termNotes) collect_text(tn.content, out);
                for (const auto& a : t.aux) collect_text_aux(a, out);
            }
        }
    }
    return out;
}

}  // namespace termweave
