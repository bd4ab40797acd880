#ifndef TLSQL_MANIFEST_HPP
#define TLSQL_MANIFEST_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "tlsql/codegen.hpp"

namespace tlsql {

inline constexpr std::string_view manifest_version = "1";

constexpr std::string_view task_type_name(TaskType t) { return t == TaskType::clf ? "classification" : "regression"; }

constexpr std::string_view level_name(Level l)
{
    switch (l) {
    case Level::I: return "I";
    case Level::II: return "II";
    case Level::III: return "III";
    }
    return "";
}

namespace detail {

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

inline std::string table_entry_json(const ManifestTable& t)
{
    std::string out = "{\"table\": " + json_string(t.table) + ", \"role\": " + json_string(name_of(t.role)) +
                      ", \"columns\": ";
    if (t.all_columns) {
        out += "\"*\"";
    }
    else {
        out += "[";
        for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? ", " : "") + json_string(t.columns[i]);
        out += "]";
    }
    return out + "}";
}

} // namespace detail

/// Canonical manifest JSON. Key order is fixed:
///   tlsql_manifest_version, task_type, level, target, split,
///   label_autoincluded, tables, warnings
/// Two-space indent; leaf objects are written on one line; trailing newline.
inline std::string manifest_to_json(const TaskManifest& m)
{
    using detail::json_string;
    std::string out = "{\n";
    out += "  \"tlsql_manifest_version\": " + json_string(manifest_version) + ",\n";
    out += "  \"task_type\": " + json_string(task_type_name(m.task_type)) + ",\n";
    out += "  \"level\": " + json_string(level_name(m.level)) + ",\n";
    out += "  \"target\": {\"table\": " + json_string(m.target_table) + ", \"column\": " +
           json_string(m.target_column) + "},\n";
    if (m.holdout()) out += "  \"split\": {\"strategy\": \"holdout\"},\n";
    else out += "  \"split\": {\"strategy\": \"cv\", \"folds\": " + std::to_string(m.folds) + "},\n";
    out += std::string("  \"label_autoincluded\": ") + (m.label_autoincluded ? "true" : "false") + ",\n";

    out += "  \"tables\": [";
    for (std::size_t i = 0; i < m.tables.size(); ++i)
        out += (i ? ",\n    " : "\n    ") + detail::table_entry_json(m.tables[i]);
    out += m.tables.empty() ? "],\n" : "\n  ],\n";

    out += "  \"warnings\": [";
    for (std::size_t i = 0; i < m.warnings.size(); ++i) {
        out += (i ? ",\n    " : "\n    ");
        out += "{\"code\": " + json_string(m.warnings[i].code) + ", \"message\": " +
               json_string(m.warnings[i].message) + "}";
    }
    out += m.warnings.empty() ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

namespace detail {

inline QueryRole role_from_name(std::string_view name)
{
    if (name == "train") return QueryRole::train;
    if (name == "test") return QueryRole::test;
    if (name == "validate") return QueryRole::validate;
    throw std::invalid_argument("unknown table role '" + std::string(name) + "'");
}

} // namespace detail

/// Inverse of manifest_to_json. Throws std::invalid_argument or
/// nlohmann::json::exception on malformed input.
inline TaskManifest manifest_from_json(std::string_view text)
{
    const auto j = nlohmann::json::parse(text);
    if (j.at("tlsql_manifest_version").get<std::string>() != manifest_version)
        throw std::invalid_argument("unsupported manifest version");

    TaskManifest m;
    const auto task = j.at("task_type").get<std::string>();
    if (task == "classification") m.task_type = TaskType::clf;
    else if (task == "regression") m.task_type = TaskType::reg;
    else throw std::invalid_argument("unknown task_type '" + task + "'");

    const auto level = j.at("level").get<std::string>();
    if (level == "I") m.level = Level::I;
    else if (level == "II") m.level = Level::II;
    else if (level == "III") m.level = Level::III;
    else throw std::invalid_argument("unknown level '" + level + "'");

    m.target_table = j.at("target").at("table").get<std::string>();
    m.target_column = j.at("target").at("column").get<std::string>();

    const auto& split = j.at("split");
    const auto strategy = split.at("strategy").get<std::string>();
    if (strategy == "holdout") m.folds = 0;
    else if (strategy == "cv") m.folds = split.at("folds").get<int>();
    else throw std::invalid_argument("unknown split strategy '" + strategy + "'");

    m.label_autoincluded = j.at("label_autoincluded").get<bool>();

    for (const auto& t : j.at("tables")) {
        ManifestTable entry;
        entry.table = t.at("table").get<std::string>();
        entry.role = detail::role_from_name(t.at("role").get<std::string>());
        const auto& cols = t.at("columns");
        if (cols.is_string() && cols.get<std::string>() == "*") entry.all_columns = true;
        else entry.columns = cols.get<std::vector<std::string>>();
        m.tables.push_back(std::move(entry));
    }
    for (const auto& w : j.at("warnings"))
        m.warnings.push_back({w.at("code").get<std::string>(), w.at("message").get<std::string>()});
    return m;
}

} // namespace tlsql

#endif
