#include "support/corpus.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "termweave/xml_io.hpp"

namespace testsupport {

using namespace termweave;

// ---------------------------------------------------------------------------
// Content expressions

ContentExprPtr random_expr(std::mt19937& rng, int maxDepth) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    if (maxDepth <= 0) {
        switch (pick(0, 9)) {
            case 0: return ContentExpr::text();
            case 1: return ContentExpr::empty();
            case 2: return ContentExpr::elem("d");
            default: {
                const char* names[] = {"a", "b", "c"};
                return ContentExpr::elem(names[pick(0, 2)]);
            }
        }
    }
    switch (pick(0, 9)) {
        case 0:
        case 1: {
            std::vector<ContentExprPtr> parts;
            int n = pick(2, 3);
            for (int i = 0; i < n; ++i) parts.push_back(random_expr(rng, maxDepth - 1));
            return ContentExpr::seq(std::move(parts));
        }
        case 2:
        case 3: {
            std::vector<ContentExprPtr> parts;
            int n = pick(2, 3);
            for (int i = 0; i < n; ++i) parts.push_back(random_expr(rng, maxDepth - 1));
            return ContentExpr::choice(std::move(parts));
        }
        case 4:
            return ContentExpr::star(random_expr(rng, maxDepth - 1));
        case 5:
            return ContentExpr::plus(random_expr(rng, maxDepth - 1));
        case 6:
            return ContentExpr::opt(random_expr(rng, maxDepth - 1));
        case 7: {
            std::size_t lo = static_cast<std::size_t>(pick(0, 2));
            std::optional<std::size_t> hi;
            if (pick(0, 1) == 1) hi = lo + static_cast<std::size_t>(pick(0, 2));
            return ContentExpr::rep(random_expr(rng, maxDepth - 1), lo, hi);
        }
        default:
            return random_expr(rng, 0);
    }
}

std::vector<std::string> random_tokens(std::mt19937& rng, std::size_t maxLen) {
    static const std::array<const char*, 5> alphabet = {"a", "b", "c", "d", "#text"};
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    std::vector<std::string> out;
    std::size_t n = static_cast<std::size_t>(pick(0, static_cast<int>(maxLen)));
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(alphabet[static_cast<std::size_t>(pick(0, 4))]);
    return out;
}

std::vector<std::string> sample_member(std::mt19937& rng, const ContentExpr& e) {
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };
    using Kind = ContentExpr::Kind;
    std::vector<std::string> out;
    switch (e.kind) {
        case Kind::Empty:
            break;
        case Kind::Text:
            out.emplace_back("#text");
            break;
        case Kind::ElemRef:
            out.push_back(e.name);
            break;
        case Kind::Seq:
            for (const auto& c : e.children) {
                auto part = sample_member(rng, *c);
                out.insert(out.end(), part.begin(), part.end());
            }
            break;
        case Kind::Choice: {
            int i = pick(0, static_cast<int>(e.children.size()) - 1);
            out = sample_member(rng, *e.children[static_cast<std::size_t>(i)]);
            break;
        }
        case Kind::Rep: {
            std::size_t count = e.min + static_cast<std::size_t>(pick(0, 2));
            if (e.max && count > *e.max) count = *e.max;
            for (std::size_t i = 0; i < count; ++i) {
                auto part = sample_member(rng, *e.child);
                out.insert(out.end(), part.begin(), part.end());
            }
            break;
        }
        case Kind::ClassRef:
            throw std::logic_error("cannot sample an unresolved expression");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Documents

namespace {

class Gen {
  public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    Document document() {
        Document doc;
        doc.dialect = Dialect::MainstreamTbx;
        int entries = pick(1, 5);
        for (int i = 0; i < entries; ++i)
            entryIds_.push_back("e" + std::to_string(i + 1));
        for (int i = 0; i < entries; ++i) doc.entries.push_back(entry(i));
        return doc;
    }

  private:
    std::mt19937 rng_;
    std::vector<std::string> entryIds_;
    int nextTigId_ = 1;

    int pick(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }
    bool chance(int percent) { return pick(1, 100) <= percent; }

    std::string word() {
        static const std::array<const char*, 14> words = {
            "belt",       "drive",     "pulley",        "tension",
            "groove",     "Keilriemen", "courroie",     "säure",
            "alternator", "gain & phase", "a<b",        "\"cited\"",
            "π-ratio", "encyclopædia",
        };
        return words[static_cast<std::size_t>(pick(0, 13))];
    }

    std::string sentence(int lo, int hi) {
        int n = pick(lo, hi);
        std::string s;
        for (int i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += word();
        }
        return s;
    }

    std::string source_string() {
        static const std::array<const char*, 3> sources = {
            "De Coster, dictionary of automotive engineering, 1982",
            "in-house terminology board, release 7",
            "ISO vocabulary card V-114",
        };
        return sources[static_cast<std::size_t>(pick(0, 2))];
    }

    static InlineNode text(std::string s) {
        return InlineNode{TextNode{std::move(s)}, {}};
    }

    MixedContent plain(std::string s) {
        MixedContent c;
        c.push_back(text(std::move(s)));
        return c;
    }

    std::string any_entry_id() {
        return entryIds_[static_cast<std::size_t>(
            pick(0, static_cast<int>(entryIds_.size()) - 1))];
    }

    MixedContent note_content() {
        if (chance(35)) {
            // Legacy pointer idiom: hi with a bare IDREF target.
            MixedContent c;
            c.push_back(text("see "));
            HiNode hi;
            hi.legacyTarget = any_entry_id();
            hi.content = plain(word());
            c.push_back(InlineNode{std::move(hi), {}});
            c.push_back(text(" for context"));
            return c;
        }
        return plain(sentence(2, 6));
    }

    MixedContent term_content() {
        if (chance(25)) {
            MixedContent c;
            c.push_back(text(word() + " "));
            HiNode hi;
            if (chance(50)) hi.attrs.rend = "italic";
            hi.content = plain(word());
            c.push_back(InlineNode{std::move(hi), {}});
            return c;
        }
        return plain(word());
    }

    MixedContent markup_pair_content() {
        MixedContent c;
        c.push_back(text("weight "));
        c.push_back(InlineNode{BptNode{{}, "1", "<b>"}, {}});
        c.push_back(text("bold"));
        c.push_back(InlineNode{EptNode{{}, "1", "</b>"}, {}});
        c.push_back(text(" rest"));
        return c;
    }

    AuxItem entry_aux() {
        switch (pick(0, 5)) {
            case 0:
                return AuxItem{DescripItem{"subjectField", {}, plain(sentence(1, 3))}, {}};
            case 1:
                return AuxItem{AdminItem{"projectSubset", {}, plain(word())}, {}};
            case 2:
                return AuxItem{AdminItem{"source", {}, plain(source_string())}, {}};
            case 3:
                return AuxItem{NoteItem{{}, note_content()}, {}};
            case 4: {
                RefItem r;
                r.target = any_entry_id();
                r.content = plain("see also");
                return AuxItem{std::move(r), {}};
            }
            default: {
                RefItem x;
                x.kind = RefKind::Xref;
                x.target = "https://termbank.example/records/" + std::to_string(pick(1, 99));
                x.content = plain("external record");
                return AuxItem{std::move(x), {}};
            }
        }
    }

    AuxItem descrip_grp() {
        DescripGrpItem g;
        g.descrip = DescripItem{"definition", {}, plain(sentence(3, 8))};
        g.companions.push_back(AuxItem{AdminItem{"source", {}, plain(source_string())}, {}});
        return AuxItem{std::move(g), {}};
    }

    AuxItem transac_grp() {
        static const std::array<const char*, 6> actions = {
            "origination", "input", "modification", "check", "importation", "withdrawal"};
        TransacGrpItem g;
        g.transac = TransacItem{
            "transaction", {}, plain(actions[static_cast<std::size_t>(pick(0, 5))])};
        char date[16];
        std::snprintf(date, sizeof date, "%04d-%02d-%02d", pick(2019, 2025), pick(1, 12),
                      pick(1, 28));
        g.companions.push_back(AuxItem{DateItem{{}, date}, {}});
        if (chance(50))
            g.companions.push_back(
                AuxItem{TransacNoteItem{"responsibility", {}, plain(word())}, {}});
        return AuxItem{std::move(g), {}};
    }

    TermSection tig() {
        TermSection t;
        if (chance(15)) t.attrs.id = "t" + std::to_string(nextTigId_++);
        TermNode term;
        term.content = term_content();
        t.term = std::move(term);

        static const std::array<const char*, 6> pos = {"noun",      "verb",  "adjective",
                                                       "adverb",    "properNoun", "other"};
        static const std::array<const char*, 4> gender = {"masculine", "feminine", "neuter",
                                                          "other"};
        int notes = pick(0, 2);
        for (int i = 0; i < notes; ++i) {
            if (i == 0)
                t.termNotes.push_back(TermNoteItem{
                    "partOfSpeech", {}, plain(pos[static_cast<std::size_t>(pick(0, 5))]), {}});
            else
                t.termNotes.push_back(TermNoteItem{
                    "grammaticalGender", {}, plain(gender[static_cast<std::size_t>(pick(0, 3))]),
                    {}});
        }
        int nAux = pick(0, 2);
        for (int i = 0; i < nAux; ++i) {
            switch (pick(0, 3)) {
                case 0:
                    t.aux.push_back(AuxItem{AdminItem{"source", {}, plain(source_string())}, {}});
                    break;
                case 1:
                    t.aux.push_back(transac_grp());
                    break;
                case 2:
                    t.aux.push_back(AuxItem{NoteItem{{}, markup_pair_content()}, {}});
                    break;
                default:
                    t.aux.push_back(AuxItem{NoteItem{{}, note_content()}, {}});
                    break;
            }
        }
        return t;
    }

    LangSet lang_set(const char* lang) {
        LangSet ls;
        ls.attrs.lang = lang;
        if (chance(40)) ls.aux.push_back(descrip_grp());
        else if (chance(40))
            ls.aux.push_back(AuxItem{DescripItem{"definition", {}, plain(sentence(3, 8))}, {}});
        if (chance(20)) ls.aux.push_back(AuxItem{NoteItem{{}, note_content()}, {}});
        int tigs = pick(1, 3);
        for (int i = 0; i < tigs; ++i) ls.tigs.push_back(tig());
        return ls;
    }

    TermEntry entry(int index) {
        TermEntry e;
        e.attrs.id = entryIds_[static_cast<std::size_t>(index)];
        int nAux = pick(0, 2);
        for (int i = 0; i < nAux; ++i) e.aux.push_back(entry_aux());

        std::array<const char*, 6> pool = {"de", "fr", "en", "es", "it", "pt"};
        std::shuffle(pool.begin(), pool.end(), rng_);
        int n = pick(1, 3);
        for (int i = 0; i < n; ++i)
            e.langSets.push_back(lang_set(pool[static_cast<std::size_t>(i)]));
        return e;
    }
};

}  // namespace

Document random_document(std::uint32_t seed) { return Gen(seed).document(); }

std::string corpus_xml(std::uint32_t seed) { return serialize(random_document(seed)); }

}  // namespace testsupport
