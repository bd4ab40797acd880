#ifndef TLSQL_CODEGEN_HPP
#define TLSQL_CODEGEN_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tlsql/render.hpp"
#include "tlsql/semantics.hpp"

namespace tlsql {

enum class Dialect : std::uint8_t { ansi, mysql };

enum class QueryRole : std::uint8_t { train, test, validate };

constexpr std::string_view name_of(QueryRole r)
{
    switch (r) {
    case QueryRole::train: return "train";
    case QueryRole::test: return "test";
    case QueryRole::validate: return "validate";
    }
    return "";
}

struct SqlQuery {
    std::string table;
    QueryRole role = QueryRole::train;
    std::string sql; // one SELECT, no trailing semicolon

    /// `<role>_<table>.sql`
    std::string file_name(std::string_view extension = ".sql") const
    {
        return std::string(name_of(role)) + "_" + table + std::string(extension);
    }

    friend bool operator==(const SqlQuery&, const SqlQuery&) = default;
};

struct ManifestTable {
    std::string table;
    QueryRole role = QueryRole::train;
    bool all_columns = false;
    std::vector<std::string> columns;

    friend bool operator==(const ManifestTable&, const ManifestTable&) = default;
};

struct ManifestWarning {
    std::string code;
    std::string message;

    friend bool operator==(const ManifestWarning&, const ManifestWarning&) = default;
};

struct TaskManifest {
    TaskType task_type = TaskType::clf;
    std::string target_table;
    std::string target_column;
    Level level = Level::I;
    // folds == 0 means holdout.
    int folds = default_folds;
    bool label_autoincluded = false;
    std::vector<ManifestWarning> warnings;
    std::vector<ManifestTable> tables;

    bool holdout() const { return folds == 0; }

    friend bool operator==(const TaskManifest&, const TaskManifest&) = default;
};

struct ConversionResult {
    std::vector<SqlQuery> queries;
    TaskManifest manifest;
    // Full warnings with source positions; the manifest keeps code and message.
    std::vector<Diagnostic> warnings;

    const SqlQuery* find(QueryRole role, std::string_view table) const
    {
        for (const auto& q : queries)
            if (q.role == role && q.table == table) return &q;
        return nullptr;
    }
};

inline bool is_plain_identifier(std::string_view name)
{
    if (name.empty()) return false;
    auto start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!start(name.front())) return false;
    for (char c : name)
        if (!start(c) && !(c >= '0' && c <= '9')) return false;
    return true;
}

/// Bare when the name is a plain identifier; otherwise quoted with `"` (ansi)
/// or a backtick (mysql), doubling embedded quote characters.
inline std::string quote_identifier(std::string_view name, Dialect dialect)
{
    if (is_plain_identifier(name)) return std::string(name);
    const char q = dialect == Dialect::ansi ? '"' : '`';
    std::string out(1, q);
    for (char c : name) {
        if (c == q) out += q;
        out += c;
    }
    out += q;
    return out;
}

/// SQL text for a condition: `<>` for inequality, NOT always parenthesized.
inline std::string render_sql(const Condition& c, Dialect dialect)
{
    return render_condition(
        c,
        [dialect](const ColumnRef& r) {
            std::string out;
            if (r.table) out = quote_identifier(*r.table, dialect) + ".";
            return out + quote_identifier(r.column, dialect);
        },
        NotStyle::parenthesized);
}

namespace detail {

inline std::string select_sql(const TableSpec& spec, Dialect dialect)
{
    std::string sql = "SELECT ";
    if (spec.all_columns) {
        sql += "*";
    }
    else {
        for (std::size_t i = 0; i < spec.columns.size(); ++i) {
            if (i > 0) sql += ", ";
            sql += quote_identifier(spec.columns[i], dialect);
        }
    }
    sql += " FROM " + quote_identifier(spec.table, dialect);
    if (spec.routed_where) sql += " WHERE " + render_sql(*spec.routed_where, dialect);
    return sql;
}

inline ManifestTable manifest_entry(const TableSpec& spec, QueryRole role)
{
    return ManifestTable{spec.table, role, spec.all_columns, spec.columns};
}

} // namespace detail

/// Lowers a resolved plan to SQL. Query order: train queries in TRAIN FROM
/// order, then the test query, then the validate query when present.
inline ConversionResult generate(const TaskPlan& plan, Dialect dialect = Dialect::ansi)
{
    ConversionResult out;
    TaskManifest& m = out.manifest;
    m.task_type = plan.target.task_type;
    m.target_table = plan.target.table;
    m.target_column = plan.target.column;
    m.level = plan.level;
    m.label_autoincluded = plan.label_autoincluded;
    for (const auto& w : plan.warnings) m.warnings.push_back({code_name(w.code), w.message});
    out.warnings = plan.warnings;

    auto emit = [&](const TableSpec& spec, QueryRole role) {
        out.queries.push_back(SqlQuery{spec.table, role, detail::select_sql(spec, dialect)});
        m.tables.push_back(detail::manifest_entry(spec, role));
    };

    for (const auto& spec : plan.train) emit(spec, QueryRole::train);
    emit(TableSpec{plan.target.table, true, {}, plan.target.test_where}, QueryRole::test);

    if (const auto* holdout = std::get_if<Holdout>(&plan.split)) {
        m.folds = 0;
        emit(holdout->validate, QueryRole::validate);
    }
    else {
        m.folds = std::get<CrossValidation>(plan.split).folds;
    }
    return out;
}

} // namespace tlsql

#endif
