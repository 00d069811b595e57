#include "bitml/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bitml/export/export.hpp"
#include "bitml/pipeline.hpp"
#include "cli_internal.hpp"

namespace bitml::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return ss.str();
}

struct FileReport {
    std::string path;
    bool readable = true;
    std::vector<Diagnostic> diagnostics;
};

struct CheckArgs {
    std::vector<std::string> paths;
    std::string constraints;
    bool verify_crypto = false;
    std::string format = "human";
    bool deny_warnings = false;
};

struct ExportArgs {
    std::string path;
    std::string format;
    std::string out = "-";
    std::string diagram;
    bool include_values = false;
};

void report(const std::vector<Diagnostic>& diags, const std::string& format, Streams io) {
    if (format == "json") {
        io.err << format_json(diags) << "\n";
        return;
    }
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& d : diags) {
        io.err << format_human(d, io.color) << "\n";
        ++counts[static_cast<int>(d.severity)];
    }
    if (!diags.empty()) {
        io.err << counts[0] << " error(s), " << counts[1] << " warning(s), " << counts[2] << " lint(s)\n";
    }
}

int cmd_check(const CheckArgs& a, Streams io) {
    CheckOptions opts;
    opts.verify_crypto = a.verify_crypto;
    std::vector<Diagnostic> sidecar;
    if (!a.constraints.empty()) {
        const auto text = read_file(a.constraints);
        if (!text) {
            io.err << "bitml: cannot read constraints file '" << a.constraints << "'\n";
            return kUsage;
        }
        opts.extra_invariants = load_invariants(*text, a.constraints, sidecar);
    }

    std::vector<std::string> paths = a.paths;
    std::sort(paths.begin(), paths.end());
    paths.erase(std::unique(paths.begin(), paths.end()), paths.end());

    std::vector<std::future<FileReport>> jobs;
    for (const auto& p : paths) {
        jobs.push_back(std::async(std::launch::async, [p, &opts] {
            FileReport r{p, true, {}};
            const auto text = read_file(p);
            if (!text) {
                r.readable = false;
                return r;
            }
            r.diagnostics = check_source(*text, p, opts).diagnostics;
            return r;
        }));
    }

    std::vector<Diagnostic> all = sidecar;
    bool io_error = false;
    for (auto& job : jobs) {
        FileReport r = job.get();
        if (!r.readable) {
            io.err << "bitml: cannot read '" << r.path << "'\n";
            io_error = true;
            continue;
        }
        all.insert(all.end(), r.diagnostics.begin(), r.diagnostics.end());
    }
    report(all, a.format, io);
    if (io_error) return kUsage;
    const bool warned = std::any_of(all.begin(), all.end(), [](const Diagnostic& d) {
        return d.severity == Severity::Warning;
    });
    if (has_errors(all) || (a.deny_warnings && warned)) return kModelErrors;
    return kClean;
}

int cmd_export(const ExportArgs& a, Streams io) {
    const auto format = exporter::format_from_name(a.format);
    if (!format) {
        io.err << "bitml: unknown export format '" << a.format << "' (expected dot, json or mdg-xml)\n";
        return kUsage;
    }
    exporter::ExportOptions opts;
    opts.format = *format;
    opts.include_values = a.include_values;
    if (!a.diagram.empty()) opts.diagram_filter = a.diagram;

    std::string text;
    if (*format == exporter::Format::MdgXml) {
        text = exporter::profile_to_mdg_xml();
    } else {
        const auto source = read_file(a.path);
        if (!source) {
            io.err << "bitml: cannot read '" << a.path << "'\n";
            return kUsage;
        }
        const CheckResult result = check_source(*source, a.path);
        if (has_errors(result.diagnostics)) {
            report(result.diagnostics, "human", io);
            return kModelErrors;
        }
        try {
            text = exporter::export_model(result.model, opts);
        } catch (const exporter::ExportError& e) {
            io.err << "bitml: " << e.what() << "\n";
            return kUsage;
        }
    }

    if (a.out == "-") {
        io.out << text;
        return kClean;
    }
    std::ofstream file(a.out, std::ios::binary);
    file << text;
    if (!file) {
        io.err << "bitml: cannot write '" << a.out << "'\n";
        return kUsage;
    }
    return kClean;
}

}  // namespace

std::string format_human(const Diagnostic& d, bool color) {
    std::string sev(to_string(d.severity));
    if (color) {
        const char* code = d.severity == Severity::Error ? "31" : d.severity == Severity::Warning ? "33" : "36";
        sev = std::string("\x1b[1;") + code + "m" + sev + "\x1b[0m";
    }
    return sev + "[" + d.rule_id + "] " + d.span.file + ":" + std::to_string(d.span.start_line) + ":" +
           std::to_string(d.span.start_col) + " " + d.message;
}

std::string format_json(const std::vector<Diagnostic>& diags) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : diags) {
        arr.push_back({{"severity", std::string(to_string(d.severity))},
                       {"rule", d.rule_id},
                       {"message", d.message},
                       {"file", d.span.file},
                       {"line", d.span.start_line},
                       {"col", d.span.start_col}});
    }
    return arr.dump();
}

int run(const std::vector<std::string>& args, Streams io) {
    CLI::App app{"BitML model checker and exporter", "bitml"};
    app.require_subcommand(1);

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "Validate one or more .bitml models");
    check_cmd->add_option("paths", check.paths, "Model files")->required();
    check_cmd->add_option("--constraints", check.constraints, "Sidecar file with inv statements");
    check_cmd->add_flag("--verify-crypto", check.verify_crypto, "Recompute key-derivation connectors");
    check_cmd->add_option("--format", check.format, "Diagnostic format")
        ->check(CLI::IsMember({"human", "json"}));
    check_cmd->add_flag("--deny-warnings", check.deny_warnings, "Treat warnings as errors");

    ExportArgs exp;
    auto* export_cmd = app.add_subcommand("export", "Export a model or the profile");
    export_cmd->add_option("path", exp.path, "Model file")->required();
    export_cmd->add_option("--format", exp.format, "dot, json or mdg-xml")->required();
    export_cmd->add_option("--out", exp.out, "Output file, - for standard output");
    export_cmd->add_option("--diagram", exp.diagram, "Export a single diagram");
    export_cmd->add_flag("--include-values", exp.include_values, "Keep key material in the output");

    std::string vectors_file = default_vectors_path();
    bool list_only = false;
    auto* vectors_cmd = app.add_subcommand("vectors", "Run the built-in crypto test vectors");
    vectors_cmd->add_flag("--list", list_only, "List vector names only");
    vectors_cmd->add_option("--file", vectors_file, "Vectors file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return kClean;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kClean;
    } catch (const CLI::ParseError& e) {
        io.err << "bitml: " << e.what() << "\n";
        const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        io.err << sub->help();
        return kUsage;
    }

    try {
        if (check_cmd->parsed()) return cmd_check(check, io);
        if (export_cmd->parsed()) return cmd_export(exp, io);
        return run_vectors(vectors_file, list_only, io);
    } catch (const std::exception& e) {
        io.err << "bitml: internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace bitml::cli
