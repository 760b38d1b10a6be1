#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "termweave/model.hpp"
#include "termweave/registry.hpp"

namespace termweave {

namespace {

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-' ||
           c == ':';
}

struct ExprParser {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw RegistryError(msg + " at offset " + std::to_string(pos) + " in content expression");
    }

    unsigned number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return static_cast<unsigned>(std::stoul(std::string(s.substr(start, pos - start))));
    }

    ContentExprPtr parse() {
        auto e = alt();
        skip_ws();
        if (pos != s.size()) fail("trailing input");
        return e;
    }

    // '|' binds loosest, then ',', then the postfix operators.
    ContentExprPtr alt() {
        std::vector<ContentExprPtr> alts{seqexpr()};
        while (eat('|')) alts.push_back(seqexpr());
        if (alts.size() == 1) return alts[0];
        return ContentExpr::choice(std::move(alts));
    }

    ContentExprPtr seqexpr() {
        std::vector<ContentExprPtr> parts{postfix()};
        while (eat(',')) parts.push_back(postfix());
        if (parts.size() == 1) return parts[0];
        return ContentExpr::seq(std::move(parts));
    }

    ContentExprPtr postfix() {
        auto e = primary();
        for (;;) {
            skip_ws();
            if (pos >= s.size()) break;
            char c = s[pos];
            if (c == '*') {
                ++pos;
                e = ContentExpr::star(e);
            } else if (c == '+') {
                ++pos;
                e = ContentExpr::plus(e);
            } else if (c == '?') {
                ++pos;
                e = ContentExpr::opt(e);
            } else if (c == '{') {
                ++pos;
                unsigned lo = number();
                unsigned hi = lo;
                bool bounded = true;
                if (eat(',')) {
                    skip_ws();
                    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                        hi = number();
                    } else {
                        bounded = false;
                    }
                }
                if (!eat('}')) fail("expected '}'");
                if (bounded && hi < lo) fail("bad repetition bounds");
                e = ContentExpr::rep(e, lo, bounded ? std::optional<unsigned>(hi) : std::nullopt);
            } else {
                break;
            }
        }
        return e;
    }

    ContentExprPtr primary() {
        skip_ws();
        if (pos >= s.size()) fail("expected an expression");
        if (s[pos] == '(') {
            ++pos;
            auto e = alt();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        size_t start = pos;
        while (pos < s.size() && is_name_char(s[pos])) ++pos;
        if (pos == start) fail("unexpected character");
        std::string name(s.substr(start, pos - start));
        if (name == "text") return ContentExpr::text();
        if (name == "empty") return ContentExpr::empty();
        if (name.find('.') != std::string::npos) return ContentExpr::cls(name);
        return ContentExpr::elem(name);
    }
};

std::string_view trim(std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
}

bool plain_name(std::string_view v) {
    if (v.empty()) return false;
    return std::all_of(v.begin(), v.end(), is_name_char);
}

std::optional<DataCatLevel> parse_level(std::string_view v) {
    if (v == "entry") return DataCatLevel::Entry;
    if (v == "langSet") return DataCatLevel::LangSet;
    if (v == "termSection") return DataCatLevel::TermSection;
    return std::nullopt;
}

const char* const kDataCatHosts[] = {"admin", "descrip", "termNote", "transac", "transacNote",
                                     "ref"};

void apply_element(Registry& reg, std::string_view rest) {
    size_t eq = rest.find('=');
    if (eq == std::string_view::npos) throw RegistryError("expected '=' after element name");
    std::string name(trim(rest.substr(0, eq)));
    ElemNs ns = ElemNs::Tbx;
    if (name.rfind("tei:", 0) == 0) {
        ns = ElemNs::Tei;
        name = name.substr(4);
    }
    if (!plain_name(name) || name.find('.') != std::string::npos) {
        throw RegistryError("bad element name '" + name + "'");
    }
    auto content = ExprParser{trim(rest.substr(eq + 1))}.parse();
    auto it = reg.elements.find(name);
    if (it != reg.elements.end()) {
        it->second.content = std::move(content);
    } else {
        ElementSpec spec;
        spec.name = name;
        spec.ns = ns;
        spec.attrClasses = {"att.global"};
        spec.content = std::move(content);
        reg.elements.emplace(name, std::move(spec));
    }
}

void apply_class(Registry& reg, std::string_view rest) {
    size_t op = rest.find("+=");
    bool add = true;
    if (op == std::string_view::npos) {
        op = rest.find("-=");
        add = false;
    }
    if (op == std::string_view::npos) throw RegistryError("expected '+=' or '-=' after class name");
    std::string name(trim(rest.substr(0, op)));
    std::string member(trim(rest.substr(op + 2)));
    if (!plain_name(name)) throw RegistryError("bad class name '" + name + "'");
    if (!plain_name(member)) throw RegistryError("bad member name '" + member + "'");
    auto it = reg.classes.find(name);
    if (add) {
        if (it == reg.classes.end()) {
            it = reg.classes.emplace(name, ClassSpec{name, ClassKind::Model, {}}).first;
        }
        auto& members = it->second.members;
        if (std::find(members.begin(), members.end(), member) == members.end()) {
            members.push_back(member);
        }
    } else {
        if (it == reg.classes.end()) throw RegistryError("unknown class '" + name + "'");
        auto& members = it->second.members;
        auto pos = std::find(members.begin(), members.end(), member);
        if (pos == members.end()) {
            throw RegistryError("'" + member + "' is not a member of '" + name + "'");
        }
        members.erase(pos);
    }
}

void apply_datacat(Registry& reg, std::string_view rest) {
    size_t at = rest.find('@');
    if (at == std::string_view::npos) throw RegistryError("expected '@' after data category name");
    std::string_view left = trim(rest.substr(0, at));
    size_t slash = left.find('/');
    if (slash == std::string_view::npos) throw RegistryError("expected '<host>/<name>'");
    std::string host(trim(left.substr(0, slash)));
    std::string name(trim(left.substr(slash + 1)));
    if (std::find(std::begin(kDataCatHosts), std::end(kDataCatHosts), host) ==
        std::end(kDataCatHosts)) {
        throw RegistryError("'" + host + "' cannot host data categories");
    }
    if (!plain_name(name)) throw RegistryError("bad data category name '" + name + "'");

    std::vector<DataCatLevel> levels;
    std::string levelText(trim(rest.substr(at + 1)));
    std::stringstream ss(levelText);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto level = parse_level(trim(tok));
        if (!level) throw RegistryError("unknown level '" + std::string(trim(tok)) + "'");
        if (std::find(levels.begin(), levels.end(), *level) == levels.end()) {
            levels.push_back(*level);
        }
    }
    if (levels.empty()) throw RegistryError("data category allows no levels");

    for (auto& dc : reg.dataCats) {
        if (dc.host == host && dc.name == name) {
            dc.levels = std::move(levels);
            return;
        }
    }
    reg.dataCats.push_back({name, host, std::move(levels), {}, ""});
}

}  // namespace

ContentExprPtr parse_content_expr(std::string_view text) {
    return ExprParser{text}.parse();
}

Registry load_from_text(std::string_view text, const std::string& sourceName) {
    Registry reg = load_default();
    size_t lineNo = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        std::string_view line = text.substr(
            start, end == std::string_view::npos ? text.size() - start : end - start);
        ++lineNo;
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;

        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        size_t sp = line.find_first_of(" \t");
        std::string_view keyword = line.substr(0, sp);
        std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
        try {
            if (keyword == "element") {
                apply_element(reg, rest);
            } else if (keyword == "class") {
                apply_class(reg, rest);
            } else if (keyword == "datacat") {
                apply_datacat(reg, rest);
            } else {
                throw RegistryError("unknown directive '" + std::string(keyword) + "'");
            }
        } catch (const RegistryError& e) {
            throw RegistryError(sourceName + ":" + std::to_string(lineNo) + ": " + e.what());
        }
    }

    try {
        resolve(reg);
    } catch (const RegistryError& e) {
        throw RegistryError(sourceName + ": " + e.what());
    }
    return reg;
}

Registry load_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RegistryError("cannot read registry file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_from_text(buf.str(), path);
}

std::string emit_schema(const Registry& reg) {
    Registry resolved = resolve(reg);
    std::string out;
    for (const auto& [name, spec] : resolved.elements) {
        out += name;
        out += " = ";
        out += render(*spec.content);
        out += "\n";
    }
    return out;
}

namespace {

void append_datacat_line(std::string& out, const DataCatSpec& dc) {
    out += "- `" + dc.name + "` at ";
    for (size_t i = 0; i < dc.levels.size(); ++i) {
        if (i) out += ", ";
        out += level_name(dc.levels[i]);
    }
    if (!dc.picklist.empty()) {
        out += "; one of ";
        for (size_t i = 0; i < dc.picklist.size(); ++i) {
            if (i) out += " | ";
            out += "`" + dc.picklist[i] + "`";
        }
    }
    if (!dc.note.empty()) {
        out += ". " + dc.note;
    }
    out += "\n";
}

}  // namespace

std::string emit_docs(const Registry& reg) {
    Registry resolved = resolve(reg);
    std::string out;
    out += "# Terminological entry markup\n\n";
    out += "Version " + reg.version +
           ". This reference and the validation schema are generated from the same "
           "element registry, so the two cannot drift apart.\n";

    for (const auto& [name, spec] : resolved.elements) {
        out += "\n## " + name + "\n\n";
        out += (spec.doc.empty() ? std::string("(undocumented)") : spec.doc) + "\n\n";

        out += "- Namespace: `";
        out += (spec.ns == ElemNs::Tei) ? names::TeiNs : names::TbxNs;
        out += "`\n";

        out += "- Content: `" + render(*spec.content) + "`\n";

        std::string attrs;
        for (const auto& a : spec.ownAttrs) {
            if (!attrs.empty()) attrs += ", ";
            attrs += "`" + a + "`";
        }
        for (const auto& acName : spec.attrClasses) {
            const ClassSpec* ac = reg.find_class(acName);
            if (!attrs.empty()) attrs += ", ";
            attrs += acName + " (";
            for (size_t i = 0; ac && i < ac->members.size(); ++i) {
                if (i) attrs += ", ";
                attrs += "`" + ac->members[i] + "`";
            }
            attrs += ")";
        }
        if (!attrs.empty()) out += "- Attributes: " + attrs + "\n";

        std::string membership;
        for (const auto& [clsName, cls] : reg.classes) {
            if (cls.kind != ClassKind::Model) continue;
            if (std::find(cls.members.begin(), cls.members.end(), name) != cls.members.end()) {
                if (!membership.empty()) membership += ", ";
                membership += clsName;
            }
        }
        if (!membership.empty()) out += "- Member of: " + membership + "\n";

        bool anyDc = false;
        for (const auto& dc : reg.dataCats) {
            if (dc.host != name) continue;
            if (!anyDc) {
                out += "\nData categories (`type` values):\n\n";
                anyDc = true;
            }
            append_datacat_line(out, dc);
        }

        for (const auto& ex : spec.examples) {
            out += "\n```xml\n" + ex + "\n```\n";
        }
    }
    return out;
}

}  // namespace termweave
