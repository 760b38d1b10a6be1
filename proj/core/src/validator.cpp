#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "termweave/validator.hpp"

namespace termweave {

namespace {

std::string child_path(const std::string& parent, const char* name, int idx) {
    return parent + "/" + name + "[" + std::to_string(idx) + "]";
}

struct Counter {
    std::map<std::string, int> seen;
    int next(const char* name) { return seen[name]++; }
};

std::string join_tokens(const std::vector<std::string>& tokens) {
    if (tokens.empty()) return "(no children)";
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ", ";
        out += (t == names::TextToken) ? "text" : t;
    }
    return out;
}

std::string fold_lang(std::string_view lang) {
    std::string out;
    out.reserve(lang.size());
    for (char c : lang) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trimmed(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// ---------------------------------------------------------------------------
// Structure pass

class StructureChecker {
public:
    StructureChecker(const Registry& reg, std::vector<Diagnostic>& out) : out_(out) {
        Registry resolved = resolve(reg);
        for (const auto& [name, spec] : resolved.elements) {
            matchers_.emplace(name, Matcher::compile(*spec.content));
            rules_.emplace(name, name + " = " + render(*spec.content));
        }
    }

    void run(const Document& doc) {
        if (doc.entries.empty()) {
            out_.push_back(make_diag(codes::EmptyDocument, Severity::Info, "/", std::nullopt,
                                     "document holds no entries"));
            return;
        }
        Counter c;
        for (const auto& entry : doc.entries) {
            check_entry(entry, child_path("", names::TermEntry, c.next(names::TermEntry)));
        }
    }

private:
    std::map<std::string, Matcher> matchers_;
    std::map<std::string, std::string> rules_;
    std::vector<Diagnostic>& out_;

    void flag(const char* code, Severity sev, const std::string& path,
              std::optional<SourceLocation> loc, std::string msg) {
        out_.push_back(make_diag(code, sev, path, loc, std::move(msg)));
    }

    void match(const std::string& ruleName, const std::vector<std::string>& tokens,
               const std::string& path, std::optional<SourceLocation> loc) {
        auto it = matchers_.find(ruleName);
        if (it == matchers_.end()) return;  // nothing known to check against
        if (it->second.accepts(tokens)) return;
        flag(codes::ContentModelViolation, Severity::Error, path, loc,
             "children of '" + ruleName + "' (" + join_tokens(tokens) +
                 ") do not satisfy " + rules_.at(ruleName));
    }

    // Tokens of a mixed-content sequence, in order.
    static std::vector<std::string> mixed_tokens(const MixedContent& content) {
        std::vector<std::string> tokens;
        tokens.reserve(content.size());
        for (const auto& n : content) tokens.push_back(inline_name(n));
        return tokens;
    }

    void check_mixed(const char* ruleName, const MixedContent& content, const std::string& path,
                     std::optional<SourceLocation> loc) {
        match(ruleName, mixed_tokens(content), path, loc);
        Counter c;
        for (const auto& n : content) {
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, HiNode>) {
                        check_mixed(names::Hi, v.content,
                                    child_path(path, names::Hi, c.next(names::Hi)), n.loc);
                    } else if constexpr (std::is_same_v<T, ForeignNode>) {
                        check_mixed(names::Foreign, v.content,
                                    child_path(path, names::Foreign, c.next(names::Foreign)),
                                    n.loc);
                    } else if constexpr (std::is_same_v<T, RefInlineNode>) {
                        check_mixed(names::Ref, v.content,
                                    child_path(path, names::Ref, c.next(names::Ref)), n.loc);
                    } else if constexpr (std::is_same_v<T, BiblNode>) {
                        check_mixed(names::Bibl, v.content,
                                    child_path(path, names::Bibl, c.next(names::Bibl)), n.loc);
                    }
                },
                n.node);
        }
    }

    void check_aux(const AuxItem& item, const std::string& path) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, AdminItem>) {
                    check_mixed(names::Admin, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, DescripItem>) {
                    check_mixed(names::Descrip, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, NoteItem>) {
                    check_mixed(names::Note, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    check_mixed(names::Ref, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, TransacItem>) {
                    check_mixed(names::Transac, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, TransacNoteItem>) {
                    check_mixed(names::TransacNote, v.content, path, item.loc);
                } else if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    check_grp(names::DescripGrp, v, path, item.loc);
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    check_grp(names::TransacGrp, v, path, item.loc);
                }
                // DateItem carries text only; text* cannot be violated.
            },
            item.item);
    }

    template <typename Grp>
    void check_grp(const char* name, const Grp& grp, const std::string& path,
                   std::optional<SourceLocation> loc) {
        std::vector<std::string> tokens = grp.childTokens;
        if (tokens.empty()) {
            if (grp_head(grp)) tokens.push_back(grp_head_name(grp));
            for (const auto& c : grp.companions) tokens.push_back(aux_match_token(c));
        }
        match(name, tokens, path, loc);

        Counter c;
        if (grp_head(grp)) {
            AuxItem wrapped;
            wrapped.item = *grp_head(grp);
            check_aux(wrapped,
                      child_path(path, grp_head_name(grp), c.next(grp_head_name(grp))));
        }
        for (const auto& comp : grp.companions) {
            check_aux(comp, child_path(path, aux_name(comp), c.next(aux_name(comp))));
        }
    }

    static const std::optional<DescripItem>& grp_head(const DescripGrpItem& g) {
        return g.descrip;
    }
    static const std::optional<TransacItem>& grp_head(const TransacGrpItem& g) {
        return g.transac;
    }
    static const char* grp_head_name(const DescripGrpItem&) { return names::Descrip; }
    static const char* grp_head_name(const TransacGrpItem&) { return names::Transac; }

    void check_tig(const TermSection& tig, const std::string& path) {
        std::vector<std::string> tokens = tig.childTokens;
        if (tokens.empty()) {
            if (tig.term) tokens.push_back(names::Term);
            for (size_t i = 0; i < tig.termNotes.size(); ++i) tokens.push_back(names::TermNote);
            for (const auto& item : tig.aux) tokens.push_back(aux_match_token(item));
        }
        match(names::Tig, tokens, path, tig.loc);

        Counter c;
        if (tig.term) {
            check_mixed(names::Term, tig.term->content,
                        child_path(path, names::Term, c.next(names::Term)), tig.termLoc);
        }
        for (const auto& tn : tig.termNotes) {
            check_mixed(names::TermNote, tn.content,
                        child_path(path, names::TermNote, c.next(names::TermNote)), tn.loc);
        }
        for (const auto& item : tig.aux) {
            check_aux(item, child_path(path, aux_name(item), c.next(aux_name(item))));
        }
    }

    void check_langset(const LangSet& ls, const std::string& path) {
        if (!ls.attrs.lang || ls.attrs.lang->empty()) {
            flag(codes::MissingLangSetLang, Severity::Error, path, ls.loc,
                 "langSet has no xml:lang");
        } else if (!is_language_tag(*ls.attrs.lang)) {
            flag(codes::MissingLangSetLang, Severity::Error, path, ls.loc,
                 "xml:lang '" + *ls.attrs.lang + "' is not a language tag");
        }

        std::vector<std::string> tokens = ls.childTokens;
        if (tokens.empty()) {
            for (const auto& item : ls.aux) tokens.push_back(aux_match_token(item));
            for (size_t i = 0; i < ls.tigs.size(); ++i) tokens.push_back(names::Tig);
        }
        match(names::LangSet, tokens, path, ls.loc);

        Counter c;
        for (const auto& item : ls.aux) {
            check_aux(item, child_path(path, aux_name(item), c.next(aux_name(item))));
        }
        for (const auto& tig : ls.tigs) {
            check_tig(tig, child_path(path, names::Tig, c.next(names::Tig)));
        }
    }

    void check_entry(const TermEntry& entry, const std::string& path) {
        std::vector<std::string> tokens = entry.childTokens;
        if (tokens.empty()) {
            for (const auto& item : entry.aux) tokens.push_back(aux_match_token(item));
            for (size_t i = 0; i < entry.langSets.size(); ++i) {
                tokens.push_back(names::LangSet);
            }
        }
        match(names::TermEntry, tokens, path, entry.loc);

        Counter c;
        for (const auto& item : entry.aux) {
            check_aux(item, child_path(path, aux_name(item), c.next(aux_name(item))));
        }

        std::set<std::string> langsSeen;
        for (const auto& ls : entry.langSets) {
            std::string lsPath = child_path(path, names::LangSet, c.next(names::LangSet));
            if (ls.attrs.lang && !ls.attrs.lang->empty()) {
                std::string folded = fold_lang(*ls.attrs.lang);
                if (!langsSeen.insert(folded).second) {
                    flag(codes::DuplicateLanguageSection, Severity::Warning, lsPath, ls.loc,
                         "language '" + folded + "' already has a section in this entry");
                }
            }
            check_langset(ls, lsPath);
        }
    }
};

// ---------------------------------------------------------------------------
// Data category pass

class DataCatChecker {
public:
    DataCatChecker(const Registry& reg, std::vector<Diagnostic>& out) : reg_(reg), out_(out) {}

    void run(const Document& doc) {
        Counter c;
        for (const auto& entry : doc.entries) {
            std::string path = child_path("", names::TermEntry, c.next(names::TermEntry));
            Counter ec;
            for (const auto& item : entry.aux) {
                check_aux(item, child_path(path, aux_name(item), ec.next(aux_name(item))),
                          DataCatLevel::Entry);
            }
            for (const auto& ls : entry.langSets) {
                std::string lsPath = child_path(path, names::LangSet, ec.next(names::LangSet));
                Counter lc;
                for (const auto& item : ls.aux) {
                    check_aux(item, child_path(lsPath, aux_name(item), lc.next(aux_name(item))),
                              DataCatLevel::LangSet);
                }
                for (const auto& tig : ls.tigs) {
                    std::string tigPath = child_path(lsPath, names::Tig, lc.next(names::Tig));
                    Counter tc;
                    if (tig.term) tc.next(names::Term);
                    for (const auto& tn : tig.termNotes) {
                        check_typed(names::TermNote, tn.type, tn.content,
                                    child_path(tigPath, names::TermNote, tc.next(names::TermNote)),
                                    tn.loc, DataCatLevel::TermSection);
                    }
                    for (const auto& item : tig.aux) {
                        check_aux(item,
                                  child_path(tigPath, aux_name(item), tc.next(aux_name(item))),
                                  DataCatLevel::TermSection);
                    }
                }
            }
        }
    }

private:
    const Registry& reg_;
    std::vector<Diagnostic>& out_;

    void check_typed(const char* host, const std::string& type, const MixedContent& content,
                     const std::string& path, std::optional<SourceLocation> loc,
                     DataCatLevel level, bool typeRequired = true) {
        if (type.empty()) {
            if (typeRequired) {
                out_.push_back(make_diag(codes::UnknownDataCategory, Severity::Warning, path, loc,
                                         std::string("'") + host +
                                             "' carries no data category (type attribute)"));
            }
            return;
        }
        const DataCatSpec* spec = reg_.find_datacat(host, type);
        if (!spec) {
            out_.push_back(make_diag(codes::UnknownDataCategory, Severity::Warning, path, loc,
                                     "unknown data category '" + type + "' on '" + host + "'"));
            return;
        }
        if (std::find(spec->levels.begin(), spec->levels.end(), level) == spec->levels.end()) {
            out_.push_back(make_diag(
                codes::DataCategoryWrongLevel, Severity::Error, path, loc,
                "data category '" + type + "' is not allowed at " + level_name(level) + " level"));
        }
        if (!spec->picklist.empty()) {
            std::string value = trimmed(concatenated_text(content));
            if (std::find(spec->picklist.begin(), spec->picklist.end(), value) ==
                spec->picklist.end()) {
                std::string allowed;
                for (const auto& p : spec->picklist) {
                    if (!allowed.empty()) allowed += "|";
                    allowed += p;
                }
                out_.push_back(make_diag(codes::PicklistViolation, Severity::Error, path, loc,
                                         "value '" + value + "' of '" + type +
                                             "' is not one of " + allowed));
            }
        }
    }

    void check_aux(const AuxItem& item, const std::string& path, DataCatLevel level) {
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, AdminItem>) {
                    check_typed(names::Admin, v.type, v.content, path, item.loc, level);
                } else if constexpr (std::is_same_v<T, DescripItem>) {
                    check_typed(names::Descrip, v.type, v.content, path, item.loc, level);
                } else if constexpr (std::is_same_v<T, TransacItem>) {
                    check_typed(names::Transac, v.type, v.content, path, item.loc, level);
                } else if constexpr (std::is_same_v<T, TransacNoteItem>) {
                    check_typed(names::TransacNote, v.type, v.content, path, item.loc, level);
                } else if constexpr (std::is_same_v<T, RefItem>) {
                    check_typed(names::Ref, v.type.value_or(""), v.content, path, item.loc,
                                level, false);
                } else if constexpr (std::is_same_v<T, DescripGrpItem>) {
                    Counter c;
                    if (v.descrip) {
                        check_typed(names::Descrip, v.descrip->type, v.descrip->content,
                                    child_path(path, names::Descrip, c.next(names::Descrip)),
                                    item.loc, level);
                    }
                    for (const auto& comp : v.companions) {
                        check_aux(comp, child_path(path, aux_name(comp), c.next(aux_name(comp))),
                                  level);
                    }
                } else if constexpr (std::is_same_v<T, TransacGrpItem>) {
                    Counter c;
                    if (v.transac) {
                        check_typed(names::Transac, v.transac->type, v.transac->content,
                                    child_path(path, names::Transac, c.next(names::Transac)),
                                    item.loc, level);
                    }
                    for (const auto& comp : v.companions) {
                        check_aux(comp, child_path(path, aux_name(comp), c.next(aux_name(comp))),
                                  level);
                    }
                }
                // NoteItem and DateItem carry no data category.
            },
            item.item);
    }
};

}  // namespace

void validate_structure(const Document& doc, const Registry& reg,
                        std::vector<Diagnostic>& out) {
    StructureChecker(reg, out).run(doc);
}

void validate_datacats(const Document& doc, const Registry& reg, std::vector<Diagnostic>& out) {
    DataCatChecker(reg, out).run(doc);
}

void validate_pointers(const Document& doc, std::vector<Diagnostic>& out) {
    IdIndex ids = collect_ids(doc);

    // One report per duplicated id, naming every bearer.
    std::map<std::string, std::vector<std::string>> extras;
    for (const auto& [id, path] : ids.duplicates) extras[id].push_back(path);
    for (const auto& [id, paths] : extras) {
        std::string all = ids.byId.at(id);
        for (const auto& p : paths) all += ", " + p;
        out.push_back(make_diag(codes::DuplicateId, Severity::Error, ids.byId.at(id), std::nullopt,
                                "xml:id '" + id + "' is declared " +
                                    std::to_string(paths.size() + 1) + " times: " + all));
    }

    for_each_node(doc, [&](const NodeRef& node) {
        if (node.target && !node.target->empty()) {
            PointerResult r = resolve_pointer(ids, *node.target);
            switch (r.cls) {
                case PointerClass::Resolved:
                    break;
                case PointerClass::External:
                    out.push_back(make_diag(codes::ExternalPointer, Severity::Info, node.path,
                                            node.loc,
                                            "target '" + *node.target +
                                                "' points outside the document"));
                    break;
                case PointerClass::Dangling:
                    out.push_back(make_diag(codes::DanglingPointer, Severity::Error, node.path,
                                            node.loc,
                                            "target '" + *node.target +
                                                "' does not resolve to any xml:id in the document"));
                    break;
                case PointerClass::Malformed:
                    out.push_back(make_diag(codes::DanglingPointer, Severity::Error, node.path,
                                            node.loc,
                                            "target '" + *node.target +
                                                "' is not a valid URI reference"));
                    break;
            }
        }
        // Legacy hi targets are name references; give them the same
        // treatment as fragment pointers.
        if (!node.legacyHiTarget || node.legacyHiTarget->empty()) return;
        const std::string& t = *node.legacyHiTarget;
        PointerResult r = is_ncname(t) ? resolve_pointer(ids, "#" + t) : resolve_pointer(ids, t);
        switch (r.cls) {
            case PointerClass::Resolved:
                break;
            case PointerClass::External:
                out.push_back(make_diag(codes::ExternalPointer, Severity::Info, node.path,
                                        node.loc,
                                        "target '" + t + "' points outside the document"));
                break;
            case PointerClass::Dangling:
                out.push_back(make_diag(
                    codes::DanglingPointer, Severity::Error, node.path, node.loc,
                    "target '" + t + "' does not resolve to any xml:id in the document"));
                break;
            case PointerClass::Malformed:
                out.push_back(make_diag(codes::DanglingPointer, Severity::Error, node.path,
                                        node.loc,
                                        "target '" + t + "' is not a valid URI reference"));
                break;
        }
    });
}

ValidationReport validate(const Document& doc, const Registry& reg) {
    ValidationReport report;
    validate_structure(doc, reg, report.diagnostics);
    validate_datacats(doc, reg, report.diagnostics);
    validate_pointers(doc, report.diagnostics);
    report.recount();
    return report;
}

}  // namespace termweave
