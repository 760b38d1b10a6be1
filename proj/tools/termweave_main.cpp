#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "termweave/registry.hpp"
#include "termweave/transformer.hpp"
#include "termweave/validator.hpp"
#include "termweave/xml_io.hpp"

namespace fs = std::filesystem;
namespace tw = termweave;

namespace {

// Exit codes: 0 clean, 1 error diagnostics, 2 refused lossy conversion,
// 3 unusable input or registry, 4 bad usage. A run reports the worst one.
constexpr int kOk = 0;
constexpr int kErrors = 1;
constexpr int kLossRefused = 2;
constexpr int kFatal = 3;
constexpr int kUsage = 4;

std::string sanitize(std::string s) {
    for (auto& c : s) {
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

void print_lines(std::ostream& os, const std::string& file,
                 const std::vector<tw::Diagnostic>& diags) {
    for (const auto& d : diags) {
        os << file << '\t' << d.code << '\t' << tw::severity_name(d.severity) << '\t'
           << (d.path.empty() ? "-" : d.path) << '\t'
           << (d.location ? std::to_string(d.location->line) : "-") << '\t'
           << (d.location ? std::to_string(d.location->column) : "-") << '\t'
           << sanitize(d.message) << '\n';
    }
}

void print_text(std::ostream& os, const std::string& file,
                const std::vector<tw::Diagnostic>& diags) {
    for (const auto& d : diags) {
        os << file;
        if (d.location) os << ':' << d.location->line << ':' << d.location->column;
        os << ": " << tw::severity_name(d.severity) << ' ' << d.code << ": " << d.message;
        if (!d.path.empty() && d.path != "/") os << " [" << d.path << "]";
        os << '\n';
    }
}

bool any_error(const std::vector<tw::Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const tw::Diagnostic& d) {
        return d.severity == tw::Severity::Error;
    });
}

// Directories expand to every *.xml beneath them, in lexicographic order;
// plain paths pass through as given.
std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::recursive_directory_iterator(input, ec)) {
                if (entry.is_regular_file() && entry.path().extension() == ".xml") {
                    found.push_back(entry.path().generic_string());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(input);
        }
    }
    return files;
}

bool load_registry(const std::string& path, tw::Registry& reg) {
    try {
        reg = path.empty() ? tw::load_default() : tw::load_from_file(path);
        return true;
    } catch (const tw::RegistryError& e) {
        std::cerr << "termweave: " << e.what() << '\n';
        return false;
    }
}

int run_validate(const std::vector<std::string>& inputs, const std::string& regPath,
                 const std::string& format) {
    tw::Registry reg;
    if (!load_registry(regPath, reg)) return kFatal;

    int exit = kOk;
    for (const auto& file : expand_inputs(inputs)) {
        tw::ParseResult pr = tw::parse_file(file);
        std::vector<tw::Diagnostic> diags = pr.diagnostics;
        std::size_t errors = 0, warnings = 0, infos = 0;
        if (pr.document) {
            tw::ValidationReport report = tw::validate(*pr.document, reg);
            diags.insert(diags.end(), report.diagnostics.begin(), report.diagnostics.end());
        } else {
            exit = std::max(exit, kFatal);
        }
        for (const auto& d : diags) {
            if (d.severity == tw::Severity::Error) ++errors;
            else if (d.severity == tw::Severity::Warning) ++warnings;
            else ++infos;
        }
        if (errors > 0) exit = std::max(exit, kErrors);

        if (format == "lines") {
            print_lines(std::cout, file, diags);
        } else {
            print_text(std::cout, file, diags);
            std::cout << file << ": " << (errors ? "INVALID" : "valid") << " (" << errors
                      << " errors, " << warnings << " warnings, " << infos << " infos)\n";
        }
    }
    return exit;
}

int run_convert(const std::vector<std::string>& inputs, const std::string& to, bool strict,
                bool wrap, bool failOnLoss, const std::string& outPath) {
    std::vector<std::string> files = expand_inputs(inputs);
    if (files.size() != 1) {
        std::cerr << "termweave: convert takes exactly one input document\n";
        return kUsage;
    }
    const std::string& file = files[0];

    tw::ParseResult pr = tw::parse_file(file);
    print_lines(std::cerr, file, pr.diagnostics);
    if (!pr.document) return kFatal;
    int exit = any_error(pr.diagnostics) ? kErrors : kOk;

    tw::ConvertOptions opts;
    opts.wrapSourcesAsBibl = wrap;
    opts.strictLegacy = strict;
    opts.failOnLoss = failOnLoss;

    tw::ConvertResult res;
    bool passthrough = (to == "tei" && pr.document->dialect == tw::Dialect::TeiBlend) ||
                       (to == "tbx" && pr.document->dialect == tw::Dialect::MainstreamTbx);
    if (passthrough) {
        res.document = std::move(*pr.document);
        std::cerr << file << "\tNOTE\tinfo\t-\t-\t-\tinput is already in the target dialect\n";
    } else if (to == "tei") {
        res = tw::to_tei(*pr.document, opts);
    } else {
        res = tw::to_tbx(*pr.document, opts);
    }

    print_lines(std::cerr, file, res.diagnostics);
    if (any_error(res.diagnostics)) exit = std::max(exit, kErrors);
    for (const auto& loss : res.losses) {
        std::cerr << file << "\tLOSS\t" << (res.failedOnLoss ? "error" : "info") << "\t"
                  << (loss.path.empty() ? "-" : loss.path) << "\t-\t-\t"
                  << sanitize(loss.description) << '\n';
    }
    if (res.failedOnLoss) return std::max(exit, kLossRefused);

    std::string xml;
    try {
        xml = tw::serialize(res.document);
    } catch (const std::invalid_argument& e) {
        std::cerr << "termweave: " << e.what() << '\n';
        return kFatal;
    }
    if (outPath.empty()) {
        std::cout << xml;
    } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) {
            std::cerr << "termweave: cannot write '" << outPath << "'\n";
            return kFatal;
        }
        out << xml;
    }
    return exit;
}

int run_roundtrip(const std::vector<std::string>& inputs, bool wrap) {
    int exit = kOk;
    for (const auto& file : expand_inputs(inputs)) {
        tw::ParseResult pr = tw::parse_file(file);
        print_lines(std::cerr, file, pr.diagnostics);
        if (!pr.document) {
            exit = std::max(exit, kFatal);
            continue;
        }
        if (any_error(pr.diagnostics)) exit = std::max(exit, kErrors);
        tw::ConvertOptions opts;
        opts.wrapSourcesAsBibl = wrap;
        tw::RoundTripReport report = tw::check_roundtrip(*pr.document, opts);
        print_lines(std::cerr, file, report.diagnostics);
        if (report.equal) {
            std::cout << file << ": round-trip OK\n";
        } else {
            std::cout << file << ": round-trip DIFF at " << *report.firstDivergence << '\n';
            exit = std::max(exit, kErrors);
        }
    }
    return exit;
}

int run_emit(const std::string& regPath, bool docs) {
    tw::Registry reg;
    if (!load_registry(regPath, reg)) return kFatal;
    try {
        std::cout << (docs ? tw::emit_docs(reg) : tw::emit_schema(reg));
    } catch (const tw::RegistryError& e) {
        std::cerr << "termweave: " << e.what() << '\n';
        return kFatal;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "termweave: validate and convert terminological entries between the\n"
        "mainstream TBX dialect and its TEI blend"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "termweave 1.0.0");

    std::vector<std::string> files;
    std::string regPath;
    std::string format = "text";
    std::string to;
    std::string outPath;
    bool strict = false, wrap = false, failOnLoss = false;

    CLI::App* validate = app.add_subcommand("validate", "Check documents and report diagnostics");
    validate->add_option("files", files, "Documents or directories of *.xml")->required();
    validate->add_option("--registry", regPath, "Customization overlay file")
        ->envname("TERMWEAVE_REGISTRY");
    validate->add_option("--format", format, "Diagnostic format: text or lines")
        ->check(CLI::IsMember({"text", "lines"}));

    CLI::App* convert = app.add_subcommand("convert", "Rewrite a document in the other dialect");
    convert->add_option("files", files, "One input document")->required();
    convert->add_option("--to", to, "Target dialect: tei or tbx")
        ->required()
        ->check(CLI::IsMember({"tei", "tbx"}));
    convert->add_flag("--strict-legacy", strict,
                      "Restore mainstream idioms (xref, hi targets) when writing TBX");
    convert->add_flag("--wrap-bibl", wrap,
                      "Wrap admin[type=source] content in tei:bibl when writing TEI");
    convert->add_flag("--fail-on-loss", failOnLoss,
                      "Refuse to write output when a rewrite loses information");
    convert->add_option("--out", outPath, "Output file (default: stdout)");

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "Convert there and back, compare with the input");
    roundtrip->add_option("files", files, "Documents or directories of *.xml")->required();
    roundtrip->add_flag("--wrap-bibl", wrap, "Exercise the bibl wrapping rule on the way out");

    CLI::App* schema = app.add_subcommand("schema", "Print the validation grammar");
    schema->add_option("--registry", regPath, "Customization overlay file")
        ->envname("TERMWEAVE_REGISTRY");

    CLI::App* docs = app.add_subcommand("docs", "Print the element reference (markdown)");
    docs->add_option("--registry", regPath, "Customization overlay file")
        ->envname("TERMWEAVE_REGISTRY");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*validate) return run_validate(files, regPath, format);
    if (*convert) return run_convert(files, to, strict, wrap, failOnLoss, outPath);
    if (*roundtrip) return run_roundtrip(files, wrap);
    if (*schema) return run_emit(regPath, false);
    if (*docs) return run_emit(regPath, true);
    return kUsage;
}
