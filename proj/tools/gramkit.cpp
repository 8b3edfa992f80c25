// gramkit command-line driver: parse -> resolve imports -> weave aspects ->
// check constraints -> query or export.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gramkit/aspect.hpp"
#include "gramkit/parser.hpp"
#include "gramkit/printer.hpp"
#include "gramkit/templates.hpp"
#include "gramkit/yacc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;

struct IoError {
    std::string message;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError{"cannot read '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError{"cannot write '" + path + "'"};
    out << text;
}

class DiagnosticSink {
public:
    void report(const std::vector<gramkit::Diagnostic>& diags) {
        for (const auto& d : diags) {
            std::cerr << gramkit::formatDiagnostic(d) << "\n";
            if (d.severity == gramkit::Severity::Error) sawError_ = true;
        }
    }

    bool sawError() const { return sawError_; }
    int exitCode() const { return sawError_ ? kExitDiagnostics : kExitOk; }

private:
    bool sawError_ = false;
};

struct PipelineOptions {
    std::string grammarPath;
    std::vector<std::string> templatePaths;
    std::vector<std::string> aspectPaths;
};

// Parse the grammar, expand imports and apply aspects in command-line order.
// Returns nothing when an error diagnostic made the result unusable.
std::optional<gramkit::Grammar> loadPipeline(const PipelineOptions& opt, DiagnosticSink& sink) {
    auto parsed = gramkit::parseGrammar(readFile(opt.grammarPath), opt.grammarPath);
    sink.report(parsed.diagnostics);
    if (!parsed.value) return std::nullopt;
    gramkit::Grammar grammar = std::move(*parsed.value);

    if (!grammar.imports.empty() || !opt.templatePaths.empty()) {
        gramkit::TemplateLibrary library;
        for (const auto& path : opt.templatePaths) {
            auto lib = gramkit::parseTemplates(readFile(path), path);
            sink.report(lib.diagnostics);
            if (!lib.value) return std::nullopt;
            for (auto& [name, tmpl] : lib.value->templates) {
                if (!library.templates.emplace(name, std::move(tmpl)).second) {
                    sink.report({{gramkit::Severity::Error,
                                  "template '" + name + "' defined in more than one library",
                                  tmpl.span,
                                  {}}});
                    return std::nullopt;
                }
            }
        }
        if (!grammar.imports.empty()) {
            auto resolved = gramkit::resolveImports(grammar, library);
            sink.report(resolved.diagnostics);
            if (!resolved.value) return std::nullopt;
            grammar = std::move(*resolved.value);
        }
    }

    if (!opt.aspectPaths.empty()) {
        std::vector<gramkit::Aspect> aspects;
        for (const auto& path : opt.aspectPaths) {
            auto parsedAspect = gramkit::parseAspect(readFile(path), path);
            sink.report(parsedAspect.diagnostics);
            if (!parsedAspect.value) return std::nullopt;
            aspects.push_back(std::move(*parsedAspect.value));
        }
        auto woven = gramkit::applyAspects(aspects, grammar);
        sink.report(woven.diagnostics);
        grammar = std::move(woven.grammar);
    }
    return grammar;
}

void emitOutput(const std::string& outPath, const std::string& text) {
    if (outPath.empty())
        std::cout << text;
    else
        writeFile(outPath, text);
}

std::string describeTarget(const gramkit::Grammar& g, const gramkit::BoundTarget& t) {
    if (t.nodes.empty()) {
        std::string parent = gramkit::nodePath(g, t.parent);
        return parent + "[" + std::to_string(t.first) + ".." + std::to_string(t.first - 1) + "]";
    }
    if (t.nodes.size() == 1) return gramkit::nodePath(g, t.nodes.front());
    std::string parent = gramkit::nodePath(g, t.parent);
    return parent + "[" + std::to_string(t.first) + ".." +
           std::to_string(t.first + static_cast<int>(t.nodes.size()) - 1) + "]";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grammar definition and annotation toolkit"};
    app.require_subcommand(1);

    PipelineOptions opt;
    std::string queryFile;
    std::string outPath;

    auto addGrammarArg = [&](CLI::App* cmd) {
        cmd->add_option("grammar", opt.grammarPath, "grammar file (.grammar)")->required();
        cmd->add_option("--templates", opt.templatePaths, "template library (.templates)");
    };

    CLI::App* check = app.add_subcommand("check", "parse, resolve and weave; report diagnostics");
    addGrammarArg(check);
    check->add_option("--aspect", opt.aspectPaths, "aspect file (.aspect), applied in order");

    CLI::App* query = app.add_subcommand("query", "print the bindings of each query in a file");
    addGrammarArg(query);
    query->add_option("--query-file", queryFile, "aspect file holding the queries")->required();

    CLI::App* weave = app.add_subcommand("weave", "apply aspects and print the annotated grammar");
    addGrammarArg(weave);
    weave->add_option("--aspect", opt.aspectPaths, "aspect file (.aspect), applied in order");
    weave->add_option("--out", outPath, "output file (default: stdout)");

    CLI::App* inst = app.add_subcommand("instantiate", "expand imports and print the grammar");
    addGrammarArg(inst);
    inst->add_option("--out", outPath, "output file (default: stdout)");

    CLI::App* exportYacc = app.add_subcommand("export-yacc", "emit a Yacc-style .y file");
    addGrammarArg(exportYacc);
    exportYacc->add_option("--aspect", opt.aspectPaths, "aspect file (.aspect), applied in order");
    exportYacc->add_option("--out", outPath, "output .y file")->required();

    CLI::App* format = app.add_subcommand("format", "print the canonical form");
    addGrammarArg(format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    DiagnosticSink sink;
    try {
        if (format->parsed()) {
            auto parsed = gramkit::parseGrammar(readFile(opt.grammarPath), opt.grammarPath);
            sink.report(parsed.diagnostics);
            if (!parsed.value) return kExitDiagnostics;
            std::cout << gramkit::printGrammar(*parsed.value);
            return sink.exitCode();
        }

        if (query->parsed()) {
            auto grammar = loadPipeline(opt, sink);
            if (!grammar) return kExitDiagnostics;
            auto aspect = gramkit::parseAspect(readFile(queryFile), queryFile);
            sink.report(aspect.diagnostics);
            if (!aspect.value) return kExitDiagnostics;
            bool firstBinding = true;
            for (const auto& rule : aspect.value->rules) {
                for (const auto& binding : gramkit::matchQuery(rule.query, *grammar)) {
                    if (!firstBinding) std::cout << "\n";
                    firstBinding = false;
                    for (const auto& [var, target] : binding)
                        std::cout << var << " = " << describeTarget(*grammar, target) << "\n";
                }
            }
            return sink.exitCode();
        }

        auto grammar = loadPipeline(opt, sink);
        if (!grammar) return kExitDiagnostics;

        if (check->parsed()) return sink.exitCode();

        if (weave->parsed()) {
            std::string text = gramkit::printGrammar(*grammar);
            std::string annotations = gramkit::printAnnotationsSection(*grammar);
            if (!annotations.empty()) text += "@annotations\n" + annotations;
            emitOutput(outPath, text);
            return sink.exitCode();
        }

        if (inst->parsed()) {
            emitOutput(outPath, gramkit::printGrammar(*grammar));
            return sink.exitCode();
        }

        if (exportYacc->parsed()) {
            auto emitted = gramkit::exportYacc(*grammar);
            sink.report(emitted.diagnostics);
            if (!emitted.value) return kExitDiagnostics;
            writeFile(outPath, *emitted.value);
            return sink.exitCode();
        }
    } catch (const IoError& e) {
        std::cerr << "gramkit: " << e.message << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
