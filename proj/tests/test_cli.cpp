#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "support/proc.hpp"

using testsupport::ProcResult;
using testsupport::run_process;

namespace {

std::string fixture(const std::string& name) {
    return std::string(TERMWEAVE_FIXTURES_DIR) + "/" + name;
}

ProcResult cli(const std::vector<std::string>& args,
               const std::map<std::string, std::string>& env = {}) {
    return run_process(TERMWEAVE_BIN, args, env);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("validate exits zero on a clean document") {
    ProcResult r = cli({"validate", fixture("keilriemen.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("keilriemen.xml: valid") != std::string::npos);
}

TEST_CASE("validate reports errors with exit one") {
    ProcResult r = cli({"validate", fixture("mutants/tbx030.xml")});
    CHECK(r.exitCode == 1);
    CHECK(r.out.find("INVALID") != std::string::npos);
    CHECK(r.out.find("TBX030") != std::string::npos);
}

TEST_CASE("warnings alone keep the exit at zero") {
    ProcResult r = cli({"validate", fixture("mutants/tbx040.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("TBX040") != std::string::npos);
}

TEST_CASE("line format carries seven tab-separated fields") {
    ProcResult r = cli({"validate", "--format", "lines", fixture("mutants/tbx010.xml")});
    CHECK(r.exitCode == 1);
    auto rows = lines_of(r.out);
    REQUIRE(!rows.empty());
    bool sawCode = false;
    for (const auto& row : rows) {
        auto fields = split(row, '\t');
        REQUIRE(fields.size() == 7);
        if (fields[1] == "TBX010") {
            sawCode = true;
            CHECK(fields[0].find("tbx010.xml") != std::string::npos);
            CHECK(fields[2] == "error");
            CHECK(fields[3] == "/termEntry[0]/langSet[0]");
            CHECK(fields[6].find("children of 'langSet'") != std::string::npos);
        }
    }
    CHECK(sawCode);
}

TEST_CASE("several inputs aggregate into the worst exit code") {
    ProcResult r =
        cli({"validate", fixture("keilriemen.xml"), fixture("mutants/tbx022.xml")});
    CHECK(r.exitCode == 1);
    CHECK(r.out.find("keilriemen.xml: valid") != std::string::npos);
    CHECK(r.out.find("tbx022.xml: INVALID") != std::string::npos);
}

TEST_CASE("directories expand to their xml files") {
    ProcResult r = cli({"validate", fixture("corpusdir")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("a.xml: valid") != std::string::npos);
    CHECK(r.out.find("b.xml: valid") != std::string::npos);
}

TEST_CASE("unreadable input is fatal") {
    ProcResult r = cli({"validate", fixture("no-such-file.xml")});
    CHECK(r.exitCode == 3);
    CHECK(r.out.find("XML000") != std::string::npos);
}

TEST_CASE("usage problems exit four") {
    CHECK(cli({"validate"}).exitCode == 4);
    CHECK(cli({"validate", "--format", "bogus", fixture("keilriemen.xml")}).exitCode == 4);
    CHECK(cli({"frobnicate"}).exitCode == 4);
    CHECK(cli({"convert", fixture("keilriemen.xml")}).exitCode == 4);  // --to missing
    CHECK(cli({"convert", "--to", "tei", fixture("keilriemen.xml"), fixture("mainstream.xml")})
              .exitCode == 4);
}

TEST_CASE("version and help exit zero") {
    ProcResult v = cli({"--version"});
    CHECK(v.exitCode == 0);
    CHECK(v.out.find("termweave") != std::string::npos);
    CHECK(cli({"--help"}).exitCode == 0);
    CHECK(cli({"validate", "--help"}).exitCode == 0);
}

TEST_CASE("convert to the blend rewrites the namespaces") {
    ProcResult r = cli({"convert", "--to", "tei", fixture("xref-rule.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("<tei:ref") != std::string::npos);
    CHECK(r.out.find("xref") == std::string::npos);
    CHECK(r.out.find("xmlns:tei=") != std::string::npos);
}

TEST_CASE("convert writes to a file when asked") {
    std::string outPath = testsupport::write_temp_file("convert-out.xml", "");
    ProcResult r = cli({"convert", "--to", "tei", "--out", outPath, fixture("hi-rule.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.empty());
    CHECK(r.err.find("TBX050") != std::string::npos);
    std::ifstream in(outPath);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("rend=\"hi\"") != std::string::npos);
}

TEST_CASE("convert into the same dialect passes the document through") {
    ProcResult r = cli({"convert", "--to", "tbx", fixture("keilriemen.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("<termEntry") != std::string::npos);
    CHECK(r.err.find("already in the target dialect") != std::string::npos);
}

TEST_CASE("loss handling distinguishes reporting from refusing") {
    ProcResult soft =
        cli({"convert", "--to", "tbx", "--strict-legacy", fixture("blend-inline-ref.xml")});
    CHECK(soft.exitCode == 0);
    CHECK(soft.err.find("LOSS") != std::string::npos);
    CHECK(soft.out.find("kept text") != std::string::npos);

    ProcResult hard = cli({"convert", "--to", "tbx", "--strict-legacy", "--fail-on-loss",
                           fixture("blend-inline-ref.xml")});
    CHECK(hard.exitCode == 2);
    CHECK(hard.out.empty());

    ProcResult lax = cli({"convert", "--to", "tbx", fixture("blend-inline-ref.xml")});
    CHECK(lax.exitCode == 0);
    CHECK(lax.err.find("LOSS") == std::string::npos);
}

TEST_CASE("roundtrip subcommand reports equality") {
    ProcResult r = cli({"roundtrip", fixture("mainstream.xml"), fixture("hi-rule.xml")});
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("mainstream.xml: round-trip OK") != std::string::npos);
    CHECK(r.out.find("hi-rule.xml: round-trip OK") != std::string::npos);
}

TEST_CASE("schema output is stable and matches the registry") {
    ProcResult a = cli({"schema"});
    ProcResult b = cli({"schema"});
    CHECK(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("tig = term, termNote*, "
                     "(admin|descrip|descripGrp|transacGrp|note|ref)*\n") !=
          std::string::npos);
}

TEST_CASE("docs output is stable") {
    ProcResult a = cli({"docs"});
    ProcResult b = cli({"docs"});
    CHECK(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("# Terminological entry markup", 0) == 0);
}

TEST_CASE("overlay registries apply through flag and environment") {
    ProcResult flag = cli({"schema", "--registry", fixture("registry/overlay.txt")});
    CHECK(flag.exitCode == 0);
    CHECK(flag.out.find("usageNote = text*\n") != std::string::npos);

    ProcResult env = cli({"schema"}, {{"TERMWEAVE_REGISTRY", fixture("registry/overlay.txt")}});
    CHECK(env.exitCode == 0);
    CHECK(env.out == flag.out);

    ProcResult broken = cli({"schema", "--registry", fixture("no-such-registry.txt")});
    CHECK(broken.exitCode == 3);

    ProcResult validate = cli({"validate", "--registry", fixture("registry/overlay.txt"),
                               fixture("keilriemen.xml")});
    CHECK(validate.exitCode == 0);
}
