#include "termweave/registry.hpp"

namespace termweave {

namespace {

using CE = ContentExpr;

ContentExprPtr mixed_model() {
    return CE::star(CE::choice({CE::text(), CE::cls("model.limitedPhrase"), CE::cls("model.metaMarkup")}));
}

ElementSpec elem_spec(std::string name, ElemNs ns, ContentExprPtr content, std::string doc,
                      std::vector<std::string> ownAttrs = {},
                      std::vector<std::string> attrClasses = {"att.global"},
                      std::vector<std::string> examples = {}) {
    ElementSpec e;
    e.name = std::move(name);
    e.ns = ns;
    e.content = std::move(content);
    e.doc = std::move(doc);
    e.ownAttrs = std::move(ownAttrs);
    e.attrClasses = std::move(attrClasses);
    e.examples = std::move(examples);
    return e;
}

}  // namespace

Registry load_default() {
    Registry reg;
    reg.version = "1.0.0";

    auto add = [&reg](ElementSpec e) { reg.elements.emplace(e.name, std::move(e)); };

    add(elem_spec("termEntry", ElemNs::Tbx,
                  CE::seq({CE::star(CE::cls("model.auxInfo")), CE::plus(CE::elem("langSet"))}),
                  "One terminological concept: entry-level descriptions followed by one "
                  "section per language.",
                  {}, {"att.global"},
                  {"<termEntry xml:id=\"c5\">\n"
                   "  <descrip type=\"subjectField\">manufacturing</descrip>\n"
                   "  <langSet xml:lang=\"en\">...</langSet>\n"
                   "</termEntry>"}));

    add(elem_spec("langSet", ElemNs::Tbx,
                  CE::seq({CE::star(CE::cls("model.auxInfo")), CE::plus(CE::elem("tig"))}),
                  "All information for one language: language-level descriptions followed "
                  "by one tig per term. Requires xml:lang."));

    add(elem_spec("tig", ElemNs::Tbx,
                  CE::seq({CE::elem("term"), CE::star(CE::elem("termNote")),
                           CE::star(CE::cls("model.auxInfo"))}),
                  "Term information group: the term itself, notes on the term, then any "
                  "further descriptions."));

    add(elem_spec("term", ElemNs::Tei, CE::star(CE::choice({CE::text(), CE::elem("hi")})),
                  "The term proper. Only text and highlighting are allowed inside."));

    add(elem_spec("termNote", ElemNs::Tbx, mixed_model(),
                  "A property of the term it sits next to, such as part of speech or "
                  "grammatical gender.",
                  {"type"}));

    add(elem_spec("admin", ElemNs::Tbx, mixed_model(),
                  "Administrative information, such as the source of a description or a "
                  "responsibility note.",
                  {"type"}));

    add(elem_spec("descrip", ElemNs::Tbx, mixed_model(),
                  "A description of the concept, such as a definition or its subject field.",
                  {"type"},
                  {"att.global"},
                  {"<descrip type=\"definition\">endless belt of trapezoid "
                   "cross-section</descrip>"}));

    add(elem_spec("descripGrp", ElemNs::Tbx,
                  CE::seq({CE::elem("descrip"),
                           CE::star(CE::choice({CE::elem("admin"), CE::elem("note"), CE::elem("ref")}))}),
                  "A description bundled with the administrative information that "
                  "qualifies it, typically a definition plus its source."));

    add(elem_spec("transacGrp", ElemNs::Tbx,
                  CE::seq({CE::elem("transac"),
                           CE::star(CE::choice({CE::elem("transacNote"), CE::elem("date"),
                                                CE::elem("note"), CE::elem("ref")}))}),
                  "A transaction bundled with its qualifiers: who was responsible and "
                  "when it happened."));

    add(elem_spec("transac", ElemNs::Tbx, mixed_model(),
                  "The kind of event in the entry's life cycle being recorded.", {"type"}));

    add(elem_spec("transacNote", ElemNs::Tbx, mixed_model(),
                  "A note qualifying a transaction, typically naming the responsible "
                  "person or process.",
                  {"type"}));

    add(elem_spec("date", ElemNs::Tbx, CE::star(CE::text()),
                  "The date of a transaction, written as YYYY-MM-DD."));

    add(elem_spec("note", ElemNs::Tbx, mixed_model(),
                  "A free-form remark at any level."));

    add(elem_spec("ref", ElemNs::Tei, mixed_model(),
                  "A pointer to related material, either another entry (as a fragment "
                  "reference) or an external resource.",
                  {"type"}, {"att.global", "att.pointing"}));

    add(elem_spec("hi", ElemNs::Tei, mixed_model(),
                  "Graphically highlighted text.", {}, {"att.global"}));

    add(elem_spec("foreign", ElemNs::Tei, mixed_model(),
                  "A stretch of text in another language; give it an xml:lang."));

    add(elem_spec("bpt", ElemNs::Tbx, CE::star(CE::text()),
                  "Begin tag of a paired native-markup span carried over from source "
                  "material.",
                  {"i"}));

    add(elem_spec("ept", ElemNs::Tbx, CE::star(CE::text()),
                  "End tag matching a bpt with the same pairing index.", {"i"}));

    add(elem_spec("ph", ElemNs::Tbx, CE::star(CE::text()),
                  "A standalone placeholder for native markup carried over from source "
                  "material."));

    add(elem_spec("bibl", ElemNs::Tei, CE::star(CE::text()),
                  "A loosely structured bibliographic citation. Not reachable from the "
                  "default content models; enable it through a customization."));

    reg.classes.emplace("model.auxInfo",
                        ClassSpec{"model.auxInfo", ClassKind::Model,
                                  {"admin", "descrip", "descripGrp", "transacGrp", "note", "ref"}});
    reg.classes.emplace("model.metaMarkup",
                        ClassSpec{"model.metaMarkup", ClassKind::Model, {"bpt", "ept", "ph"}});
    reg.classes.emplace("model.limitedPhrase",
                        ClassSpec{"model.limitedPhrase", ClassKind::Model, {"hi", "foreign", "ref"}});
    reg.classes.emplace("att.global",
                        ClassSpec{"att.global", ClassKind::Attribute,
                                  {"xml:id", "xml:lang", "xml:base", "xml:space", "n", "rend"}});
    reg.classes.emplace("att.pointing",
                        ClassSpec{"att.pointing", ClassKind::Attribute, {"target"}});

    auto allLevels = std::vector<DataCatLevel>{DataCatLevel::Entry, DataCatLevel::LangSet,
                                               DataCatLevel::TermSection};

    reg.dataCats.push_back({"definition", "descrip",
                            {DataCatLevel::Entry, DataCatLevel::LangSet}, {},
                            "Prefer the language section so translations can differ."});
    reg.dataCats.push_back({"subjectField", "descrip", {DataCatLevel::Entry}, {}, ""});
    reg.dataCats.push_back({"source", "admin", allLevels, {}, ""});
    reg.dataCats.push_back({"responsibility", "admin", allLevels, {}, ""});
    reg.dataCats.push_back({"projectSubset", "admin", {DataCatLevel::Entry}, {},
                            "Industrial practice favours recording this once per entry."});
    reg.dataCats.push_back({"partOfSpeech", "termNote", {DataCatLevel::TermSection},
                            {"noun", "verb", "adjective", "adverb", "properNoun", "other"},
                            ""});
    reg.dataCats.push_back({"grammaticalGender", "termNote", {DataCatLevel::TermSection},
                            {"masculine", "feminine", "neuter", "other"}, ""});
    reg.dataCats.push_back({"transaction", "transac", allLevels,
                            {"origination", "input", "modification", "check", "importation",
                             "withdrawal"},
                            ""});
    reg.dataCats.push_back({"responsibility", "transacNote", allLevels, {}, ""});

    return reg;
}

}  // namespace termweave
