#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>
#include <string>

#include "termweave/registry.hpp"

using namespace termweave;

namespace {

const char* kDefaultSchema =
    "admin = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "bibl = text*\n"
    "bpt = text*\n"
    "date = text*\n"
    "descrip = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "descripGrp = descrip, (admin|note|ref)*\n"
    "ept = text*\n"
    "foreign = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "hi = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "langSet = (admin|descrip|descripGrp|transacGrp|note|ref)*, tig+\n"
    "note = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "ph = text*\n"
    "ref = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "term = (text|hi)*\n"
    "termEntry = (admin|descrip|descripGrp|transacGrp|note|ref)*, langSet+\n"
    "termNote = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "tig = term, termNote*, (admin|descrip|descripGrp|transacGrp|note|ref)*\n"
    "transac = (text|hi|foreign|ref|bpt|ept|ph)*\n"
    "transacGrp = transac, (transacNote|date|note|ref)*\n"
    "transacNote = (text|hi|foreign|ref|bpt|ept|ph)*\n";

std::set<std::string> schema_rule_names(const std::string& schema) {
    std::set<std::string> names;
    std::istringstream in(schema);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find(" = ");
        if (eq != std::string::npos) names.insert(line.substr(0, eq));
    }
    return names;
}

std::set<std::string> doc_headings(const std::string& docs) {
    std::set<std::string> names;
    std::istringstream in(docs);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("## ", 0) == 0) names.insert(line.substr(3));
    }
    return names;
}

}  // namespace

TEST_CASE("default registry emits the pinned schema") {
    Registry reg = load_default();
    CHECK(emit_schema(reg) == kDefaultSchema);
}

TEST_CASE("schema and docs are deterministic across emissions") {
    Registry reg = load_default();
    CHECK(emit_schema(reg) == emit_schema(reg));
    CHECK(emit_docs(reg) == emit_docs(reg));
    Registry again = load_default();
    CHECK(emit_schema(reg) == emit_schema(again));
    CHECK(emit_docs(reg) == emit_docs(again));
}

TEST_CASE("docs headings mirror schema rule names") {
    Registry reg = load_default();
    auto rules = schema_rule_names(emit_schema(reg));
    auto headings = doc_headings(emit_docs(reg));
    CHECK(rules == headings);
    CHECK(rules.count("tig") == 1);
    CHECK(rules.size() == reg.elements.size());
}

TEST_CASE("docs carry data categories and examples") {
    Registry reg = load_default();
    std::string docs = emit_docs(reg);
    CHECK(docs.find("`partOfSpeech`") != std::string::npos);
    CHECK(docs.find("noun") != std::string::npos);
    CHECK(docs.find("```xml") != std::string::npos);
    CHECK(docs.find("generated from the same element registry") != std::string::npos);
}

TEST_CASE("resolve is idempotent and leaves no class references") {
    Registry reg = resolve(load_default());
    for (const auto& [name, spec] : reg.elements) {
        CAPTURE(name);
        CHECK_FALSE(has_class_refs(*spec.content));
    }
    Registry again = resolve(reg);
    CHECK(emit_schema(again) == emit_schema(reg));
}

TEST_CASE("matchers compile for every default element") {
    Registry reg = load_default();
    auto matchers = compile_matchers(reg);
    CHECK(matchers.size() == reg.elements.size());
    std::vector<std::string> tigKids = {"term", "termNote", "admin"};
    CHECK(matchers.at("tig").accepts(tigKids));
    std::vector<std::string> backwards = {"admin", "term"};
    CHECK_FALSE(matchers.at("tig").accepts(backwards));
}

TEST_CASE("overlay directives reshape the registry") {
    std::string overlay =
        "# comment line\n"
        "element usageNote = text*\n"
        "class model.auxInfo += usageNote\n"
        "class model.limitedPhrase += bibl\n"
        "datacat termNote/register @ termSection\n";
    Registry reg = load_from_text(overlay, "overlay");

    std::string schema = emit_schema(reg);
    CHECK(schema.find("usageNote = text*\n") != std::string::npos);
    CHECK(schema.find("tig = term, termNote*, "
                      "(admin|descrip|descripGrp|transacGrp|note|ref|usageNote)*\n") !=
          std::string::npos);
    CHECK(schema.find("admin = (text|hi|foreign|ref|bibl|bpt|ept|ph)*\n") !=
          std::string::npos);

    auto rules = schema_rule_names(schema);
    auto headings = doc_headings(emit_docs(reg));
    CHECK(rules == headings);
    CHECK(headings.count("usageNote") == 1);
    CHECK(emit_docs(reg).find("`register`") != std::string::npos);

    CHECK(reg.find_datacat("termNote", "register") != nullptr);
}

TEST_CASE("overlay replaces content of existing elements") {
    Registry reg = load_from_text("element term = text\n", "overlay");
    CHECK(emit_schema(reg).find("term = text\n") != std::string::npos);
}

TEST_CASE("overlay removal narrows a class") {
    Registry reg = load_from_text("class model.auxInfo -= ref\n", "overlay");
    CHECK(emit_schema(reg).find(
              "termEntry = (admin|descrip|descripGrp|transacGrp|note)*, langSet+\n") !=
          std::string::npos);
}

TEST_CASE("overlay errors carry source and line") {
    CHECK_THROWS_WITH_AS(load_from_text("frobnicate the registry\n", "ov"),
                         doctest::Contains("ov:1"), RegistryError);
    CHECK_THROWS_WITH_AS(load_from_text("\nelement bad = ,term\n", "ov"),
                         doctest::Contains("ov:2"), RegistryError);
    CHECK_THROWS_AS(load_from_text("class model.auxInfo -= bogus\n", "ov"), RegistryError);
    CHECK_THROWS_AS(load_from_text("class model.extra += ghost\n", "ov"), RegistryError);
    CHECK_THROWS_AS(load_from_text("datacat widget/definition @ entry\n", "ov"), RegistryError);
    CHECK_THROWS_AS(load_from_text("datacat descrip/definition @ shelf\n", "ov"), RegistryError);
    // Unknown element in a content model surfaces at the final consistency check.
    CHECK_THROWS_AS(load_from_text("element tig = ghost+\n", "ov"), RegistryError);
    // Membership cycles are caught.
    CHECK_THROWS_AS(load_from_text("class model.auxInfo += model.auxInfo\n", "ov"),
                    RegistryError);
}

TEST_CASE("parse and render round-trip for expressions") {
    Registry reg = load_default();
    std::string schema = emit_schema(reg);
    std::istringstream in(schema);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find(" = ");
        REQUIRE(eq != std::string::npos);
        std::string expr = line.substr(eq + 3);
        CAPTURE(expr);
        ContentExprPtr parsed = parse_content_expr(expr);
        CHECK(render(*parsed) == expr);
    }
}
