#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/corpus.hpp"
#include "termweave/model.hpp"
#include "termweave/uri.hpp"

using namespace termweave;

namespace {

InlineNode text(std::string s) { return InlineNode{TextNode{std::move(s)}, {}}; }

Document tiny_doc() {
    Document doc;
    TermEntry e;
    e.attrs.id = "e1";
    LangSet ls;
    ls.attrs.lang = "en";
    TermSection t;
    TermNode term;
    term.content.push_back(text("belt"));
    t.term = std::move(term);
    ls.tigs.push_back(std::move(t));
    e.langSets.push_back(std::move(ls));
    doc.entries.push_back(std::move(e));
    return doc;
}

}  // namespace

TEST_CASE("lexical checks") {
    CHECK(is_ncname("belt-1"));
    CHECK(is_ncname("v1.2"));
    CHECK(is_ncname("élément"));
    CHECK_FALSE(is_ncname(""));
    CHECK_FALSE(is_ncname("1belt"));
    CHECK_FALSE(is_ncname("a:b"));
    CHECK_FALSE(is_ncname("a b"));

    CHECK(is_language_tag("en"));
    CHECK(is_language_tag("de-CH"));
    CHECK(is_language_tag("zh-Hant-TW"));
    CHECK_FALSE(is_language_tag(""));
    CHECK_FALSE(is_language_tag("-en"));
    CHECK_FALSE(is_language_tag("en--US"));
    CHECK_FALSE(is_language_tag("en US"));

    CHECK(is_iso_date("2021-04-12"));
    CHECK_FALSE(is_iso_date("2021-4-12"));
    CHECK_FALSE(is_iso_date("12.04.2021"));
    CHECK_FALSE(is_iso_date("2021-13-40"));
}

TEST_CASE("reference classification") {
    CHECK(uri::is_valid_reference("https://example.org/a"));
    CHECK(uri::is_valid_reference("#frag"));
    CHECK(uri::is_valid_reference("relative/path"));
    CHECK_FALSE(uri::is_valid_reference("a b"));
    CHECK_FALSE(uri::is_valid_reference(""));

    CHECK(uri::is_bare_fragment("#x"));
    CHECK_FALSE(uri::is_bare_fragment("x"));
    CHECK_FALSE(uri::is_bare_fragment("a#x"));

    CHECK(uri::looks_like_idref("belt-1"));
    CHECK(uri::looks_like_idref("v1.2"));
    CHECK_FALSE(uri::looks_like_idref("#belt"));
    CHECK_FALSE(uri::looks_like_idref("https://example.org"));
    CHECK_FALSE(uri::looks_like_idref("a/b"));

    CHECK(uri::is_ambiguous_idref("v1.2"));
    CHECK_FALSE(uri::is_ambiguous_idref("belt-1"));
}

TEST_CASE("canonicalize merges and drops text nodes") {
    MixedContent c;
    c.push_back(text("a"));
    c.push_back(text(""));
    c.push_back(text("b"));
    HiNode hi;
    hi.content.push_back(text("x"));
    hi.content.push_back(text("y"));
    c.push_back(InlineNode{std::move(hi), {}});
    c.push_back(text(""));

    MixedContent out = canonicalize(c);
    REQUIRE(out.size() == 2);
    CHECK(std::get<TextNode>(out[0].node).text == "ab");
    const auto& h = std::get<HiNode>(out[1].node);
    REQUIRE(h.content.size() == 1);
    CHECK(std::get<TextNode>(h.content[0].node).text == "xy");

    // Idempotent.
    MixedContent again = canonicalize(out);
    REQUIRE(again.size() == out.size());
    CHECK(std::get<TextNode>(again[0].node).text == "ab");
}

TEST_CASE("structural diff reports first divergence") {
    Document a = tiny_doc();
    Document b = tiny_doc();
    CHECK(structurally_equal(a, b));
    CHECK_FALSE(structural_diff(a, b).has_value());

    b.entries[0].langSets[0].attrs.lang = "de";
    auto where = structural_diff(a, b);
    REQUIRE(where.has_value());
    CHECK(where->find("/termEntry[0]/langSet[0]") == 0);

    Document c = tiny_doc();
    c.entries[0].langSets[0].tigs[0].term->content[0] = text("strap");
    where = structural_diff(a, c);
    REQUIRE(where.has_value());
    CHECK(where->find("/termEntry[0]/langSet[0]/tig[0]/term[0]") == 0);

    // Parse metadata stays out of document identity.
    Document d = tiny_doc();
    d.sourceName = "other.xml";
    d.entries[0].childTokens.push_back("langSet");
    d.entries[0].loc = SourceLocation{3, 1, 40};
    CHECK(structurally_equal(a, d));
}

TEST_CASE("id census and pointer resolution") {
    Document doc = tiny_doc();
    TermEntry e2;
    e2.attrs.id = "e1";  // duplicate
    LangSet ls;
    ls.attrs.lang = "fr";
    TermSection t;
    TermNode tm;
    tm.content.push_back(text("courroie"));
    t.term = std::move(tm);
    t.attrs.id = "t1";
    ls.tigs.push_back(std::move(t));
    e2.langSets.push_back(std::move(ls));
    doc.entries.push_back(std::move(e2));

    IdIndex ids = collect_ids(doc);
    CHECK(ids.byId.size() == 2);
    CHECK(ids.byId.at("e1") == "/termEntry[0]");
    CHECK(ids.byId.at("t1") == "/termEntry[1]/langSet[0]/tig[0]");
    REQUIRE(ids.duplicates.size() == 1);
    CHECK(ids.duplicates[0].first == "e1");
    CHECK(ids.duplicates[0].second == "/termEntry[1]");

    CHECK(resolve_pointer(ids, "#e1").cls == PointerClass::Resolved);
    CHECK(*resolve_pointer(ids, "#t1").path == "/termEntry[1]/langSet[0]/tig[0]");
    CHECK(resolve_pointer(ids, "#gone").cls == PointerClass::Dangling);
    CHECK(resolve_pointer(ids, "https://example.org/x").cls == PointerClass::External);
    CHECK(resolve_pointer(ids, "other.xml#e1").cls == PointerClass::External);
    CHECK(resolve_pointer(ids, "a b").cls == PointerClass::Malformed);
}

TEST_CASE("node walk visits document order with sibling indices") {
    Document doc = tiny_doc();
    NoteItem note;
    HiNode hi;
    hi.legacyTarget = "e1";
    hi.content.push_back(text("x"));
    note.content.push_back(InlineNode{std::move(hi), {}});
    doc.entries[0].aux.push_back(AuxItem{std::move(note), {}});

    std::vector<std::string> paths;
    std::vector<std::string> names;
    const std::string* hiTarget = nullptr;
    for_each_node(doc, [&](const NodeRef& n) {
        paths.push_back(n.path);
        names.push_back(n.name);
        if (n.legacyHiTarget) hiTarget = n.legacyHiTarget;
    });
    REQUIRE(!paths.empty());
    CHECK(paths[0] == "/termEntry[0]");
    CHECK(names[0] == "termEntry");
    REQUIRE(hiTarget != nullptr);
    CHECK(*hiTarget == "e1");
    bool sawTerm = false;
    for (std::size_t i = 0; i < paths.size(); ++i)
        if (paths[i] == "/termEntry[0]/langSet[0]/tig[0]/term[0]") sawTerm = true;
    CHECK(sawTerm);
}

TEST_CASE("concatenated text covers every content holder") {
    Document doc = tiny_doc();
    NoteItem note;
    note.content.push_back(text("see "));
    HiNode hi;
    hi.content.push_back(text("inner"));
    note.content.push_back(InlineNode{std::move(hi), {}});
    doc.entries[0].aux.push_back(AuxItem{std::move(note), {}});
    std::string all = concatenated_text(doc);
    CHECK(all.find("belt") != std::string::npos);
    CHECK(all.find("see inner") != std::string::npos);
}

TEST_CASE("generated corpus documents are self-consistent") {
    for (std::uint32_t seed = 1; seed <= 10; ++seed) {
        Document doc = testsupport::random_document(seed);
        REQUIRE(!doc.entries.empty());
        CHECK(structurally_equal(doc, canonicalize(doc)));
        IdIndex ids = collect_ids(doc);
        CHECK(ids.duplicates.empty());
        // Same seed, same document.
        CHECK(structurally_equal(doc, testsupport::random_document(seed)));
    }
}
