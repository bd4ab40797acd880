#ifndef TLSQL_TOOLS_CLI_HPP
#define TLSQL_TOOLS_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tlsql/compiler.hpp"
#include "tlsql/executor.hpp"

namespace tlsql::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_syntax = 2,
    exit_semantic = 3,
    exit_execution = 4,
};

inline int exit_code_for(const Diagnostic& d)
{
    switch (d.kind()) {
    case DiagnosticKind::lex:
    case DiagnosticKind::parse: return exit_syntax;
    case DiagnosticKind::semantic: return exit_semantic;
    case DiagnosticKind::execution: return exit_execution;
    }
    return exit_usage;
}

enum class Format { pretty, json };

struct Config {
    std::string command;
    std::string input_path;
    std::string inline_text;
    std::string out_dir = "tlsql_out";
    Dialect dialect = Dialect::ansi;
    std::string db_url;
    Format format = Format::pretty;
    std::vector<std::string> primary_key;
};

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

namespace detail {

struct Source {
    std::string name;
    std::string text;
};

inline bool read_source(const Config& cfg, Streams io, Source& src)
{
    if (!cfg.inline_text.empty()) {
        src = {"<inline>", cfg.inline_text};
        return true;
    }
    if (cfg.input_path.empty()) {
        io.err << "tlsqlc: error: no input; pass a file or -e TEXT\n";
        return false;
    }
    if (cfg.input_path == "-") {
        std::ostringstream ss;
        ss << io.in.rdbuf();
        src = {"<stdin>", ss.str()};
        return true;
    }
    std::ifstream f(cfg.input_path, std::ios::binary);
    if (!f) {
        io.err << "tlsqlc: error: cannot read '" << cfg.input_path << "'\n";
        return false;
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    src = {cfg.input_path, ss.str()};
    return true;
}

inline void print_warnings(const Source& src, const std::vector<Diagnostic>& warnings, std::ostream& err)
{
    for (const auto& w : warnings) err << format_diagnostic(src.name, src.text, w);
}

inline std::string columns_text(const ManifestTable& t)
{
    if (t.all_columns) return "*";
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    return out;
}

inline std::string split_text(const TaskManifest& m)
{
    return m.holdout() ? "holdout" : "cv(" + std::to_string(m.folds) + ")";
}

inline nlohmann::ordered_json warnings_json(const std::vector<Diagnostic>& warnings)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : warnings) {
        arr.push_back({{"code", code_name(w.code)},
                       {"message", w.message},
                       {"line", w.pos.line},
                       {"column", w.pos.column}});
    }
    return arr;
}

/// Machine-readable compile output: queries, manifest, positioned warnings.
inline nlohmann::ordered_json conversion_json(const ConversionResult& r)
{
    nlohmann::ordered_json doc;
    auto queries = nlohmann::ordered_json::array();
    for (const auto& q : r.queries) {
        queries.push_back({{"table", q.table}, {"role", std::string(name_of(q.role))}, {"file", q.file_name()},
                           {"sql", q.sql}});
    }
    doc["queries"] = std::move(queries);
    doc["manifest"] = nlohmann::ordered_json::parse(manifest_to_json(r.manifest));
    doc["warnings"] = warnings_json(r.warnings);
    return doc;
}

inline void print_summary(const ConversionResult& r, std::ostream& out)
{
    const auto& m = r.manifest;
    std::size_t wt = 5;
    std::size_t wc = 7;
    for (const auto& t : m.tables) {
        wt = std::max(wt, t.table.size());
        wc = std::max(wc, columns_text(t).size());
    }
    out << std::left << std::setw(10) << "role" << std::setw(static_cast<int>(wt + 2)) << "table"
        << std::setw(static_cast<int>(wc + 2)) << "columns"
        << "file\n";
    for (std::size_t i = 0; i < m.tables.size(); ++i) {
        const auto& t = m.tables[i];
        out << std::left << std::setw(10) << name_of(t.role) << std::setw(static_cast<int>(wt + 2)) << t.table
            << std::setw(static_cast<int>(wc + 2)) << columns_text(t) << r.queries[i].file_name() << "\n";
    }
    out << "level " << level_name(m.level) << ", " << task_type_name(m.task_type) << " on " << m.target_table << "."
        << m.target_column << ", split " << split_text(m) << (m.label_autoincluded ? ", label auto-included" : "")
        << "\n";
}

inline bool write_text(const std::filesystem::path& path, const std::string& text, std::ostream& err)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    if (!f) {
        err << "tlsqlc: error[" << code_name(Code::io_failed) << "]: cannot write '" << path.string() << "'\n";
        return false;
    }
    return true;
}

/// Writes `<role>_<table>.sql` files and task.json. Returns false on I/O error.
inline bool write_artifacts(const ConversionResult& r, const std::filesystem::path& dir, std::ostream& err)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        err << "tlsqlc: error[" << code_name(Code::io_failed) << "]: cannot create '" << dir.string()
            << "': " << ec.message() << "\n";
        return false;
    }
    for (const auto& q : r.queries)
        if (!write_text(dir / q.file_name(), q.sql + "\n", err)) return false;
    return write_text(dir / "task.json", manifest_to_json(r.manifest), err);
}

// Compiles `src`, printing diagnostics. Returns the exit code on failure.
inline std::optional<int> compile_source(const Config& cfg, const Source& src, std::ostream& err,
                                         ConversionResult& out)
{
    auto result = convert(src.text, cfg.dialect);
    if (!result) {
        err << format_diagnostic(src.name, src.text, result.error());
        return exit_code_for(result.error());
    }
    print_warnings(src, result->warnings, err);
    out = std::move(result).value();
    return std::nullopt;
}

inline int cmd_compile(const Config& cfg, Streams io)
{
    Source src;
    if (!read_source(cfg, io, src)) return exit_usage;
    ConversionResult r;
    if (auto code = compile_source(cfg, src, io.err, r)) return *code;
    if (!write_artifacts(r, cfg.out_dir, io.err)) return exit_execution;
    if (cfg.format == Format::json) {
        io.out << conversion_json(r).dump(2) << "\n";
    }
    else {
        print_summary(r, io.out);
        io.out << "wrote " << r.queries.size() + 1 << " files to " << cfg.out_dir << "\n";
    }
    return exit_ok;
}

inline int cmd_check(const Config& cfg, Streams io)
{
    Source src;
    if (!read_source(cfg, io, src)) return exit_usage;
    ConversionResult r;
    if (auto code = compile_source(cfg, src, io.err, r)) return *code;
    return exit_ok;
}

inline void print_report(const RunReport& report, Format format, std::ostream& out)
{
    if (format == Format::json) {
        nlohmann::ordered_json doc;
        auto queries = nlohmann::ordered_json::array();
        for (const auto& q : report.queries) {
            queries.push_back({{"table", q.table}, {"role", std::string(name_of(q.role))}, {"file", q.file},
                               {"row_count", q.row_count}, {"elapsed_ms", q.elapsed_ms}});
        }
        doc["queries"] = std::move(queries);
        if (report.test_validate_shared_rows) doc["overlap"] = {{"test_validate_shared_rows", *report.test_validate_shared_rows}};
        else doc["overlap"] = {{"test_validate_shared_rows", "unknown"}};
        auto warnings = nlohmann::ordered_json::array();
        for (const auto& w : report.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
        doc["warnings"] = std::move(warnings);
        out << doc.dump(2) << "\n";
        return;
    }
    out << std::left << std::setw(10) << "role" << std::setw(16) << "table" << std::setw(10) << "rows"
        << "elapsed_ms\n";
    for (const auto& q : report.queries) {
        std::ostringstream ms;
        ms << std::fixed << std::setprecision(3) << q.elapsed_ms;
        out << std::left << std::setw(10) << name_of(q.role) << std::setw(16) << q.table << std::setw(10)
            << q.row_count << ms.str() << "\n";
    }
    out << "test/validate shared rows: "
        << (report.test_validate_shared_rows ? std::to_string(*report.test_validate_shared_rows) : "unknown") << "\n";
}

inline int cmd_run(const Config& cfg, Streams io)
{
    std::string url = cfg.db_url;
    if (url.empty()) {
        if (const char* env = std::getenv("TLSQL_DB_URL")) url = env;
    }
    if (url.empty()) {
        io.err << "tlsqlc: error: run requires --db URL or TLSQL_DB_URL\n";
        return exit_usage;
    }
    Source src;
    if (!read_source(cfg, io, src)) return exit_usage;
    ConversionResult r;
    if (auto code = compile_source(cfg, src, io.err, r)) return *code;

    auto report = run(r, db::ConnectionTarget::parse(url), cfg.out_dir, RunOptions{cfg.primary_key});
    if (!report) {
        io.err << "tlsqlc: error[" << code_name(report.error().code) << "]: " << report.error().message << "\n";
        return exit_execution;
    }
    print_report(*report, cfg.format, io.out);
    return exit_ok;
}

inline bool is_terminator(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t\r");
    const auto last = line.find_last_not_of(" \t\r");
    return first != std::string::npos && line.substr(first, last - first + 1) == ";;";
}

// Reads programs terminated by a lone `;;` line; compiles and echoes each.
inline int cmd_repl(const Config& cfg, Streams io)
{
    std::string buffer;
    std::string line;
    auto flush = [&] {
        if (buffer.find_first_not_of(" \t\r\n") == std::string::npos) {
            buffer.clear();
            return;
        }
        const Source src{"<repl>", buffer};
        ConversionResult r;
        if (!compile_source(cfg, src, io.err, r)) {
            for (const auto& q : r.queries) io.out << "-- " << name_of(q.role) << " " << q.table << "\n" << q.sql << ";\n";
            io.out << manifest_to_json(r.manifest);
        }
        io.out.flush();
        buffer.clear();
    };
    while (std::getline(io.in, line)) {
        if (is_terminator(line)) {
            flush();
            continue;
        }
        buffer += line;
        buffer += '\n';
    }
    flush();
    return exit_ok;
}

} // namespace detail

/// Entry point shared by the tlsqlc binary and the tests.
inline int main(int argc, const char* const* argv, Streams io)
{
    CLI::App app{"tlsqlc: compile TLSQL programs into per-table SQL and a task manifest"};
    app.require_subcommand(1);
    Config cfg;

    const std::map<std::string, Dialect> dialects{{"ansi", Dialect::ansi}, {"mysql", Dialect::mysql}};
    const std::map<std::string, Format> formats{{"pretty", Format::pretty}, {"json", Format::json}};

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", cfg.input_path, "TLSQL source file ('-' for stdin)");
        sub->add_option("-e,--eval", cfg.inline_text, "TLSQL program text");
    };
    auto add_dialect = [&](CLI::App* sub) {
        sub->add_option("--dialect", cfg.dialect, "SQL identifier quoting (ansi|mysql)")
            ->transform(CLI::CheckedTransformer(dialects, CLI::ignore_case));
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "summary format (pretty|json)")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    auto* compile = app.add_subcommand("compile", "write <role>_<table>.sql files and task.json");
    add_input(compile);
    add_dialect(compile);
    add_format(compile);
    compile->add_option("-o,--out", cfg.out_dir, "output directory");

    auto* check = app.add_subcommand("check", "report diagnostics only");
    add_input(check);

    auto* runcmd = app.add_subcommand("run", "compile, execute against a database, write CSV datasets");
    add_input(runcmd);
    add_dialect(runcmd);
    add_format(runcmd);
    runcmd->add_option("-o,--out", cfg.out_dir, "output directory");
    runcmd->add_option("--db", cfg.db_url, "connection URL (default: $TLSQL_DB_URL)");
    runcmd->add_option("--primary-key", cfg.primary_key, "primary-key column(s) of the target table")
        ->delimiter(',');

    auto* repl = app.add_subcommand("repl", "interactive loop; end each program with a line containing ;;");
    add_dialect(repl);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e, io.out, io.err);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, io.out, io.err);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e, io.out, io.err);
        return exit_usage;
    }

    if (compile->parsed()) return detail::cmd_compile(cfg, io);
    if (check->parsed()) return detail::cmd_check(cfg, io);
    if (runcmd->parsed()) return detail::cmd_run(cfg, io);
    return detail::cmd_repl(cfg, io);
}

} // namespace tlsql::cli

#endif
