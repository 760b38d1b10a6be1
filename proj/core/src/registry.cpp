#include "termweave/registry.hpp"

#include <algorithm>
#include <set>

namespace termweave {

const char* level_name(DataCatLevel level) {
    switch (level) {
        case DataCatLevel::Entry: return "entry";
        case DataCatLevel::LangSet: return "langSet";
        case DataCatLevel::TermSection: return "termSection";
    }
    return "?";
}

const ElementSpec* Registry::find_element(std::string_view name) const {
    auto it = elements.find(std::string(name));
    return it == elements.end() ? nullptr : &it->second;
}

const ClassSpec* Registry::find_class(std::string_view name) const {
    auto it = classes.find(std::string(name));
    return it == classes.end() ? nullptr : &it->second;
}

const DataCatSpec* Registry::find_datacat(std::string_view host, std::string_view name) const {
    for (const auto& dc : dataCats) {
        if (dc.host == host && dc.name == name) return &dc;
    }
    return nullptr;
}

namespace {

// Expands a class into the flat list of element names it stands for,
// following nested classes. `trail` detects membership cycles.
void expand_class(const Registry& reg, const std::string& name,
                  std::vector<std::string>& out, std::vector<std::string>& trail) {
    if (std::find(trail.begin(), trail.end(), name) != trail.end()) {
        throw RegistryError("class membership cycle through '" + name + "'");
    }
    const ClassSpec* cls = reg.find_class(name);
    if (!cls) throw RegistryError("reference to unknown class '" + name + "'");
    if (cls->kind != ClassKind::Model) {
        throw RegistryError("attribute class '" + name + "' used in a content model");
    }
    if (cls->members.empty()) {
        throw RegistryError("class '" + name + "' has no members");
    }
    trail.push_back(name);
    for (const auto& member : cls->members) {
        if (member.find('.') != std::string::npos) {
            expand_class(reg, member, out, trail);
        } else {
            if (!reg.find_element(member)) {
                throw RegistryError("class '" + name + "' names unknown element '" + member + "'");
            }
            out.push_back(member);
        }
    }
    trail.pop_back();
}

ContentExprPtr resolve_expr(const Registry& reg, const ContentExprPtr& expr,
                            const std::string& context) {
    using K = ContentExpr::Kind;
    switch (expr->kind) {
        case K::Text:
        case K::Empty:
            return expr;
        case K::ElemRef:
            if (!reg.find_element(expr->name)) {
                throw RegistryError(context + ": reference to unknown element '" + expr->name + "'");
            }
            return expr;
        case K::ClassRef: {
            std::vector<std::string> names;
            std::vector<std::string> trail;
            expand_class(reg, expr->name, names, trail);
            std::vector<ContentExprPtr> alts;
            alts.reserve(names.size());
            for (const auto& n : names) alts.push_back(ContentExpr::elem(n));
            return ContentExpr::choice(std::move(alts));
        }
        case K::Rep:
            return ContentExpr::rep(resolve_expr(reg, expr->child, context), expr->min, expr->max);
        case K::Seq: {
            std::vector<ContentExprPtr> parts;
            parts.reserve(expr->children.size());
            for (const auto& c : expr->children) parts.push_back(resolve_expr(reg, c, context));
            return ContentExpr::seq(std::move(parts));
        }
        case K::Choice: {
            // Choices born from class expansion are spliced into their
            // parent choice so the emitted grammar stays flat.
            std::vector<ContentExprPtr> alts;
            for (const auto& c : expr->children) {
                auto r = resolve_expr(reg, c, context);
                if (r->kind == K::Choice) {
                    alts.insert(alts.end(), r->children.begin(), r->children.end());
                } else {
                    alts.push_back(r);
                }
            }
            return ContentExpr::choice(std::move(alts));
        }
    }
    throw RegistryError(context + ": corrupt content expression");
}

void check_attr_classes(const Registry& reg, const ElementSpec& spec) {
    for (const auto& ac : spec.attrClasses) {
        const ClassSpec* cls = reg.find_class(ac);
        if (!cls) {
            throw RegistryError("element '" + spec.name + "' names unknown attribute class '" + ac + "'");
        }
        if (cls->kind != ClassKind::Attribute) {
            throw RegistryError("element '" + spec.name + "' uses model class '" + ac + "' as an attribute class");
        }
    }
}

}  // namespace

Registry resolve(const Registry& reg) {
    Registry out = reg;
    for (auto& [name, spec] : out.elements) {
        if (!spec.content) {
            throw RegistryError("element '" + name + "' has no content model");
        }
        check_attr_classes(reg, spec);
        spec.content = resolve_expr(reg, spec.content, "element '" + name + "'");
    }
    // Unreferenced classes still get expanded once, so a typo in an overlay
    // cannot hide in a class no content model mentions.
    for (const auto& [cname, cls] : out.classes) {
        if (cls.kind != ClassKind::Model) continue;
        std::vector<std::string> names;
        std::vector<std::string> trail;
        expand_class(reg, cname, names, trail);
    }
    for (const auto& dc : out.dataCats) {
        if (!reg.find_element(dc.host)) {
            throw RegistryError("data category '" + dc.name + "' hosted by unknown element '" + dc.host + "'");
        }
        if (dc.levels.empty()) {
            throw RegistryError("data category '" + dc.name + "' allows no levels");
        }
    }
    return out;
}

std::map<std::string, Matcher> compile_matchers(const Registry& reg) {
    Registry resolved = resolve(reg);
    std::map<std::string, Matcher> out;
    for (const auto& [name, spec] : resolved.elements) {
        out.emplace(name, Matcher::compile(*spec.content));
    }
    return out;
}

}  // namespace termweave
