#ifndef TLSQL_EXECUTOR_HPP
#define TLSQL_EXECUTOR_HPP

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tlsql/codegen.hpp"
#include "tlsql/csv.hpp"
#include "tlsql/database.hpp"
#include "tlsql/manifest.hpp"

namespace tlsql {

struct QueryStats {
    std::string table;
    QueryRole role = QueryRole::train;
    std::size_t row_count = 0;
    double elapsed_ms = 0.0;
    std::string file; // CSV file name inside the output directory
};

struct RunReport {
    std::vector<QueryStats> queries;
    // Rows shared by the test and validate sets; nullopt when unknown.
    std::optional<std::size_t> test_validate_shared_rows;
    std::vector<ManifestWarning> warnings;

    const QueryStats* find(QueryRole role, std::string_view table) const
    {
        for (const auto& q : queries)
            if (q.role == role && q.table == table) return &q;
        return nullptr;
    }
};

struct RunOptions {
    // Primary-key columns of the target table; enables the overlap count.
    std::vector<std::string> primary_key;
};

/// True when `sql` is a single SELECT statement.
inline bool is_select_only(std::string_view sql)
{
    while (!sql.empty() && std::isspace(static_cast<unsigned char>(sql.front()))) sql.remove_prefix(1);
    if (sql.size() < 7) return false;
    for (std::size_t i = 0; i < 6; ++i)
        if (std::toupper(static_cast<unsigned char>(sql[i])) != "SELECT"[i]) return false;
    if (!std::isspace(static_cast<unsigned char>(sql[6]))) return false;
    // Generated SQL never carries a ';' outside string literals.
    bool in_string = false;
    for (char c : sql) {
        if (c == '\'') in_string = !in_string;
        else if (c == ';' && !in_string) return false;
    }
    return true;
}

namespace detail {

inline Diagnostic execution_error(Code code, std::string message)
{
    return Diagnostic{code, SourcePos{}, std::move(message), {}, {}};
}

inline std::optional<std::size_t> shared_rows(const db::QueryResult& a, const db::QueryResult& b,
                                              const std::vector<std::string>& key)
{
    if (key.empty()) return std::nullopt;
    auto indices = [&](const db::QueryResult& r) -> std::optional<std::vector<std::size_t>> {
        std::vector<std::size_t> idx;
        for (const auto& k : key) {
            auto it = std::find(r.columns.begin(), r.columns.end(), k);
            if (it == r.columns.end()) return std::nullopt;
            idx.push_back(static_cast<std::size_t>(it - r.columns.begin()));
        }
        return idx;
    };
    const auto ia = indices(a);
    const auto ib = indices(b);
    if (!ia || !ib) return std::nullopt;

    auto key_of = [](const db::Row& row, const std::vector<std::size_t>& idx) {
        std::string k;
        for (auto i : idx) {
            k += row[i] ? "v" + *row[i] : "n";
            k += '\x1f';
        }
        return k;
    };
    std::set<std::string> left;
    for (const auto& row : a.rows) left.insert(key_of(row, *ia));
    std::set<std::string> shared;
    for (const auto& row : b.rows) {
        auto k = key_of(row, *ib);
        if (left.count(k)) shared.insert(std::move(k));
    }
    return shared.size();
}

} // namespace detail

/// Executes every query of `result` on `conn`, writing `<role>_<table>.csv`
/// files plus `task.json` into `out_dir`. Only SELECT statements are issued.
inline Result<RunReport> run(const ConversionResult& result, db::Connection& conn,
                             const std::filesystem::path& out_dir, const RunOptions& options = {})
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) return detail::execution_error(Code::io_failed, "cannot create '" + out_dir.string() + "': " + ec.message());

    RunReport report;
    report.warnings = result.manifest.warnings;
    std::optional<db::QueryResult> test_rows;
    std::optional<db::QueryResult> validate_rows;

    for (const auto& q : result.queries) {
        if (!is_select_only(q.sql)) {
            return detail::execution_error(Code::query_failed, "refusing to execute non-SELECT statement\n  " + q.sql);
        }
        const auto start = std::chrono::steady_clock::now();
        db::QueryResult rows;
        try {
            rows = conn.query(q.sql);
        }
        catch (const db::DatabaseError& e) {
            return detail::execution_error(Code::query_failed, std::string(e.what()) + "\n  " + q.sql);
        }
        const auto stop = std::chrono::steady_clock::now();

        const std::string file = q.file_name(".csv");
        std::ofstream os(out_dir / file, std::ios::binary);
        csv::write_record(os, rows.columns);
        for (const auto& row : rows.rows) csv::write_record(os, row);
        os.close();
        if (!os) return detail::execution_error(Code::io_failed, "cannot write '" + (out_dir / file).string() + "'");

        report.queries.push_back(QueryStats{q.table, q.role, rows.rows.size(),
                                            std::chrono::duration<double, std::milli>(stop - start).count(), file});
        if (q.role == QueryRole::test) test_rows = std::move(rows);
        else if (q.role == QueryRole::validate) validate_rows = std::move(rows);
    }

    if (test_rows && validate_rows) {
        const auto test = std::find_if(result.queries.begin(), result.queries.end(),
                                        [](const SqlQuery& q) { return q.role == QueryRole::test; });
        const auto* val = result.find(QueryRole::validate, test->table);
        if (val) report.test_validate_shared_rows = detail::shared_rows(*test_rows, *validate_rows, options.primary_key);
    }

    std::ofstream manifest(out_dir / "task.json", std::ios::binary);
    manifest << manifest_to_json(result.manifest);
    manifest.close();
    if (!manifest) return detail::execution_error(Code::io_failed, "cannot write '" + (out_dir / "task.json").string() + "'");
    return report;
}

/// Opens `target` read-only and runs `result` against it.
inline Result<RunReport> run(const ConversionResult& result, const db::ConnectionTarget& target,
                             const std::filesystem::path& out_dir, const RunOptions& options = {})
{
    std::unique_ptr<db::Connection> conn;
    try {
        conn = db::connect(target);
    }
    catch (const db::DatabaseError& e) {
        return detail::execution_error(Code::connection_failed, e.what());
    }
    return run(result, *conn, out_dir, options);
}

} // namespace tlsql

#endif
