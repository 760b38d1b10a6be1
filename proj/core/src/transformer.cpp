#include <stdexcept>

#include "termweave/transformer.hpp"
#include "termweave/uri.hpp"

namespace termweave {

namespace {

std::string child_path(const std::string& parent, const char* name, int idx) {
    return parent + "/" + name + "[" + std::to_string(idx) + "]";
}

struct Counter {
    std::map<std::string, int> seen;
    int next(const char* name) { return seen[name]++; }
};

enum class Direction { ToTei, ToTbx };

class Transformer {
public:
    Transformer(Direction dir, const ConvertOptions& opts, ConvertResult& result)
        : dir_(dir), opts_(opts), result_(result) {}

    void run(Document& doc) {
        Counter c;
        for (auto& entry : doc.entries) {
            std::string path = child_path("", names::TermEntry, c.next(names::TermEntry));
            Counter ec;
            for (auto& item : entry.aux) tx_aux(item, path, ec);
            for (auto& ls : entry.langSets) {
                std::string lsPath = child_path(path, names::LangSet, ec.next(names::LangSet));
                Counter lc;
                for (auto& item : ls.aux) tx_aux(item, lsPath, lc);
                for (auto& tig : ls.tigs) {
                    std::string tigPath = child_path(lsPath, names::Tig, lc.next(names::Tig));
                    Counter tc;
                    if (tig.term) {
                        std::string termPath =
                            child_path(tigPath, names::Term, tc.next(names::Term));
                        tig.term->origin = target_origin();
                        tig.term->content = tx_mixed(tig.term->content, termPath, true);
                    }
                    for (auto& tn : tig.termNotes) {
                        std::string tnPath =
                            child_path(tigPath, names::TermNote, tc.next(names::TermNote));
                        tn.content = tx_mixed(tn.content, tnPath, false);
                    }
                    for (auto& item : tig.aux) tx_aux(item, tigPath, tc);
                }
            }
        }
    }

private:
    Direction dir_;
    const ConvertOptions& opts_;
    ConvertResult& result_;

    NsOrigin target_origin() const {
        return dir_ == Direction::ToTei ? NsOrigin::Tei : NsOrigin::Tbx;
    }

    void info(const char* code, const std::string& path, std::string msg) {
        result_.diagnostics.push_back(
            make_diag(code, Severity::Info, path, std::nullopt, std::move(msg)));
    }

    void warn(const char* code, const std::string& path, std::string msg) {
        result_.diagnostics.push_back(
            make_diag(code, Severity::Warning, path, std::nullopt, std::move(msg)));
    }

    void loss(const std::string& path, std::string description) {
        result_.losses.push_back(LossRecord{path, std::move(description)});
    }

    // A mainstream reference value that looks like a local name becomes a
    // fragment reference; real URIs pass through.
    std::string promote_target(const std::string& t, const std::string& path) {
        if (t.empty()) return t;
        if (uri::looks_like_idref(t)) {
            if (uri::is_ambiguous_idref(t)) {
                warn(codes::AmbiguousIdref, path,
                     "target '" + t + "' could be a URI or a local name; treating it as a local name");
            }
            return "#" + t;
        }
        if (!uri::is_valid_reference(t)) {
            warn(codes::AmbiguousIdref, path,
                 "target '" + t + "' is neither a local name nor a URI; left unchanged");
        }
        return t;
    }

    // The reverse direction: local fragment references become bare names.
    std::string demote_target(const std::string& t, const std::string& path) {
        if (!uri::is_bare_fragment(t)) return t;
        std::string name = t.substr(1);
        if (!is_ncname(name)) return t;
        if (uri::is_ambiguous_idref(name)) {
            warn(codes::AmbiguousIdref, path,
                 "restored name '" + name + "' could be mistaken for a URI");
        }
        return name;
    }

    // ---- aux items ----------------------------------------------------------

    void tx_aux(AuxItem& item, const std::string& parent, Counter& counter) {
        std::visit(
            [&](auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, AdminItem>) {
                    std::string path =
                        child_path(parent, names::Admin, counter.next(names::Admin));
                    tx_admin(v, path);
                } else if constexpr (std::is_same_v<T, DescripItem>) {
                    std::string path =
                        child_path(parent, names::Descrip, counter.next(names::Descrip));
                    v.content = tx_mixed(v.content, path, false);
                } else if constexpr (std::is_same_v<T, NoteItem>) {
                    std::string path = child_path(parent, names::Note, counter.next(names::Note));
                    v.content = tx_mixed(v.content, path, false);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    std::string path = child_path(
                        parent, v.kind == RefKind::Xref ? names::Xref : names::Ref,
                        counter.next(v.kind == RefKind::Xref ? names::Xref : names::Ref));
                    tx_ref(v, path);
                } else if constexpr (std::is_same_v<T, TransacItem>) {
                    std::string path =
                        child_path(parent, names::Transac, counter.next(names::Transac));
                    v.content = tx_mixed(v.content, path, false);
                } else if constexpr (std::is_same_v<T, TransacNoteItem>) {
                    std::string path =
                        child_path(parent, names::TransacNote, counter.next(names::TransacNote));
                    v.content = tx_mixed(v.content, path, false);
                } else if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    std::string path =
                        child_path(parent, names::DescripGrp, counter.next(names::DescripGrp));
                    Counter c;
                    if (v.descrip) {
                        std::string p =
                            child_path(path, names::Descrip, c.next(names::Descrip));
                        v.descrip->content = tx_mixed(v.descrip->content, p, false);
                    }
                    for (auto& comp : v.companions) tx_aux(comp, path, c);
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    std::string path =
                        child_path(parent, names::TransacGrp, counter.next(names::TransacGrp));
                    Counter c;
                    if (v.transac) {
                        std::string p =
                            child_path(path, names::Transac, c.next(names::Transac));
                        v.transac->content = tx_mixed(v.transac->content, p, false);
                    }
                    for (auto& comp : v.companions) tx_aux(comp, path, c);
                }
                // DateItem: nothing dialect-specific inside.
            },
            item.item);
    }

    static bool is_single_bibl(const MixedContent& content) {
        return content.size() == 1 && std::holds_alternative<BiblNode>(content[0].node);
    }

    void tx_admin(AdminItem& admin, const std::string& path) {
        if (dir_ == Direction::ToTei) {
            if (opts_.wrapSourcesAsBibl && admin.type == "source" &&
                !is_single_bibl(admin.content)) {
                BiblNode bibl;
                bibl.content = tx_mixed(admin.content, path, false);
                MixedContent wrapped;
                wrapped.push_back(InlineNode{std::move(bibl), std::nullopt});
                admin.content = std::move(wrapped);
                return;
            }
            admin.content = tx_mixed(admin.content, path, false);
        } else {
            // The canonical blend shape for a wrapped source unwraps without
            // loss; stray bibls elsewhere are handled in tx_mixed.
            if (admin.type == "source" && is_single_bibl(admin.content)) {
                const auto& bibl = std::get<BiblNode>(admin.content[0].node);
                admin.content = tx_mixed(bibl.content, path, false);
                return;
            }
            admin.content = tx_mixed(admin.content, path, false);
        }
    }

    void tx_ref(RefItem& ref, const std::string& path) {
        ref.content = tx_mixed(ref.content, path, false);
        if (dir_ == Direction::ToTei) {
            if (ref.kind == RefKind::Xref) {
                // Legacy external cross-reference: same element, new clothes.
                ref.kind = RefKind::Ref;
                ref.origin = NsOrigin::Tei;
                return;
            }
            ref.origin = NsOrigin::Tei;
            ref.target = promote_target(ref.target, path);
            return;
        }
        ref.origin = NsOrigin::Tbx;
        if (!opts_.strictLegacy || ref.kind == RefKind::Xref) return;
        if (uri::is_bare_fragment(ref.target) && is_ncname(ref.target.substr(1))) {
            ref.target = demote_target(ref.target, path);
        } else if (!ref.target.empty() && ref.target[0] != '#') {
            ref.kind = RefKind::Xref;
        }
    }

    // ---- inline content -----------------------------------------------------

    MixedContent tx_mixed(const MixedContent& in, const std::string& path, bool insideTerm) {
        MixedContent out;
        Counter counter;
        for (const auto& n : in) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, TextNode>) {
                        out.push_back(InlineNode{v, n.loc});
                    } else if constexpr (std::is_same_v<T, HiNode>) {
                        tx_hi(v, n.loc, path, counter, insideTerm, out);
                    } else if constexpr (std::is_same_v<T, ForeignNode>) {
                        std::string p =
                            child_path(path, names::Foreign, counter.next(names::Foreign));
                        ForeignNode f = v;
                        f.origin = target_origin();
                        f.content = tx_mixed(v.content, p, false);
                        out.push_back(InlineNode{std::move(f), n.loc});
                    } else if constexpr (std::is_same_v<T, RefInlineNode>) {
                        tx_inline_ref(v, n.loc, path, counter, out);
                    } else if constexpr (std::is_same_v<T, BiblNode>) {
                        std::string p = child_path(path, names::Bibl, counter.next(names::Bibl));
                        if (dir_ == Direction::ToTbx) {
                            loss(p, "bibl wrapper dropped, its content is kept in place");
                            MixedContent inner = tx_mixed(v.content, p, insideTerm);
                            for (auto& c : inner) out.push_back(std::move(c));
                        } else {
                            BiblNode b = v;
                            b.content = tx_mixed(v.content, p, false);
                            out.push_back(InlineNode{std::move(b), n.loc});
                        }
                    } else {
                        // bpt, ept, ph keep their namespace in both dialects.
                        out.push_back(InlineNode{v, n.loc});
                    }
                },
                n.node);
        }
        return out;
    }

    void tx_hi(const HiNode& hi, std::optional<SourceLocation> loc, const std::string& parent,
               Counter& counter, bool insideTerm, MixedContent& out) {
        std::string path = child_path(parent, names::Hi, counter.next(names::Hi));
        if (dir_ == Direction::ToTei && hi.legacyTarget && !hi.legacyTarget->empty()) {
            if (insideTerm) {
                // A term may hold highlighting but no references, so the
                // pointer has nowhere to go.
                loss(path, "hi target '" + *hi.legacyTarget +
                               "' dropped: a term cannot hold a reference");
                HiNode copy = hi;
                copy.legacyTarget.reset();
                copy.origin = NsOrigin::Tei;
                copy.content = tx_mixed(hi.content, path, insideTerm);
                out.push_back(InlineNode{std::move(copy), loc});
                return;
            }
            RefInlineNode ref;
            ref.attrs = hi.attrs;
            if (ref.attrs.rend && *ref.attrs.rend != "hi") {
                loss(path, "rend '" + *ref.attrs.rend + "' overwritten by the hi migration marker");
            }
            ref.attrs.rend = "hi";
            ref.target = promote_target(*hi.legacyTarget, path);
            ref.origin = NsOrigin::Tei;
            ref.content = tx_mixed(hi.content, path, false);
            info(codes::HiTargetMigrated, path,
                 "hi target '" + *hi.legacyTarget + "' migrated to a ref");
            out.push_back(InlineNode{std::move(ref), loc});
            return;
        }
        HiNode copy = hi;
        copy.origin = target_origin();
        copy.content = tx_mixed(hi.content, path, insideTerm);
        out.push_back(InlineNode{std::move(copy), loc});
    }

    void tx_inline_ref(const RefInlineNode& ref, std::optional<SourceLocation> loc,
                       const std::string& parent, Counter& counter, MixedContent& out) {
        std::string path = child_path(parent, names::Ref, counter.next(names::Ref));
        if (dir_ == Direction::ToTei) {
            RefInlineNode copy = ref;
            copy.origin = NsOrigin::Tei;
            copy.target = promote_target(ref.target, path);
            copy.content = tx_mixed(ref.content, path, false);
            out.push_back(InlineNode{std::move(copy), loc});
            return;
        }
        if (opts_.strictLegacy) {
            if (ref.attrs.rend && *ref.attrs.rend == "hi") {
                HiNode hi;
                hi.attrs = ref.attrs;
                hi.attrs.rend.reset();
                if (!ref.target.empty()) hi.legacyTarget = demote_target(ref.target, path);
                hi.origin = NsOrigin::Tbx;
                hi.content = tx_mixed(ref.content, path, false);
                info(codes::HiTargetMigrated, path,
                     "ref restored to a legacy hi with a target");
                out.push_back(InlineNode{std::move(hi), loc});
                return;
            }
            loss(path, "inline ref" +
                           (ref.target.empty() ? std::string()
                                               : " (target '" + ref.target + "')") +
                           " has no mainstream form; markup dropped, text kept");
            MixedContent inner = tx_mixed(ref.content, path, false);
            for (auto& c : inner) out.push_back(std::move(c));
            return;
        }
        RefInlineNode copy = ref;
        copy.origin = NsOrigin::Tbx;
        copy.content = tx_mixed(ref.content, path, false);
        out.push_back(InlineNode{std::move(copy), loc});
    }
};

ConvertResult convert(const Document& doc, Direction dir, const ConvertOptions& opts) {
    ConvertResult result;
    result.document = doc;
    result.document.dialect =
        dir == Direction::ToTei ? Dialect::TeiBlend : Dialect::MainstreamTbx;
    Transformer(dir, opts, result).run(result.document);
    result.failedOnLoss = opts.failOnLoss && !result.losses.empty();
    return result;
}

}  // namespace

ConvertResult to_tei(const Document& doc, const ConvertOptions& opts) {
    if (doc.dialect != Dialect::MainstreamTbx) {
        throw std::invalid_argument("to_tei expects a mainstream document");
    }
    return convert(doc, Direction::ToTei, opts);
}

ConvertResult to_tbx(const Document& doc, const ConvertOptions& opts) {
    if (doc.dialect != Dialect::TeiBlend) {
        throw std::invalid_argument("to_tbx expects a blend document");
    }
    return convert(doc, Direction::ToTbx, opts);
}

RoundTripReport check_roundtrip(const Document& doc, const ConvertOptions& opts) {
    RoundTripReport report;
    Document back;
    if (doc.dialect == Dialect::MainstreamTbx) {
        ConvertOptions fwd = opts;
        fwd.strictLegacy = false;
        fwd.failOnLoss = false;
        ConvertResult there = to_tei(doc, fwd);
        ConvertOptions rev = opts;
        rev.strictLegacy = true;
        rev.failOnLoss = false;
        ConvertResult home = to_tbx(there.document, rev);
        report.diagnostics = std::move(there.diagnostics);
        report.diagnostics.insert(report.diagnostics.end(), home.diagnostics.begin(),
                                  home.diagnostics.end());
        back = std::move(home.document);
    } else {
        // The lossless path back out of the blend keeps inline refs as they
        // are, so no markup disappears on the way.
        ConvertOptions fwd = opts;
        fwd.strictLegacy = false;
        fwd.failOnLoss = false;
        ConvertResult there = to_tbx(doc, fwd);
        ConvertResult home = to_tei(there.document, fwd);
        report.diagnostics = std::move(there.diagnostics);
        report.diagnostics.insert(report.diagnostics.end(), home.diagnostics.begin(),
                                  home.diagnostics.end());
        back = std::move(home.document);
    }
    report.firstDivergence = structural_diff(canonicalize(doc), canonicalize(back));
    report.equal = !report.firstDivergence.has_value();
    return report;
}

}  // namespace termweave
