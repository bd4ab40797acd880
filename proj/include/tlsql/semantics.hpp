#ifndef TLSQL_SEMANTICS_HPP
#define TLSQL_SEMANTICS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tlsql/ast.hpp"
#include "tlsql/diagnostic.hpp"
#include "tlsql/render.hpp"

namespace tlsql {

/// Selection from one table. `all_columns` means `*`; `columns` is then empty.
struct TableSpec {
    std::string table;
    bool all_columns = false;
    std::vector<std::string> columns;
    std::optional<Condition> routed_where;

    friend bool operator==(const TableSpec&, const TableSpec&) = default;
};

struct TargetSpec {
    std::string table;
    std::string column;
    TaskType task_type = TaskType::clf;
    std::optional<Condition> test_where;

    friend bool operator==(const TargetSpec&, const TargetSpec&) = default;
};

struct Holdout {
    TableSpec validate;
    friend bool operator==(const Holdout&, const Holdout&) = default;
};

struct CrossValidation {
    int folds = 5;
    friend bool operator==(const CrossValidation&, const CrossValidation&) = default;
};

using SplitStrategy = std::variant<Holdout, CrossValidation>;

inline constexpr int default_folds = 5;

enum class Level : std::uint8_t { I = 1, II = 2, III = 3 };

struct TaskPlan {
    TargetSpec target;
    std::vector<TableSpec> train;
    SplitStrategy split;
    Level level = Level::I;
    bool label_autoincluded = false;
    std::vector<Diagnostic> warnings;

    /// The train spec for the target table. Always present in a resolved plan.
    const TableSpec& target_train() const
    {
        return *std::find_if(train.begin(), train.end(),
                             [&](const TableSpec& s) { return s.table == target.table; });
    }

    friend bool operator==(const TaskPlan& a, const TaskPlan& b)
    {
        return a.target == b.target && a.train == b.train && a.split == b.split && a.level == b.level &&
               a.label_autoincluded == b.label_autoincluded;
    }
};

namespace detail {

inline Diagnostic semantic_error(Code code, SourcePos pos, std::string message)
{
    return Diagnostic{code, pos, std::move(message), {}, {}};
}

// Binds every reference in one statement to a table from `from`.
class StatementQualifier {
public:
    explicit StatementQualifier(const std::vector<std::string>& from) : from_(from) {}

    void operator()(ColumnRef& ref)
    {
        if (error) return;
        if (ref.table) {
            if (std::find(from_.begin(), from_.end(), *ref.table) == from_.end()) {
                error = semantic_error(Code::unknown_table_qualifier, ref.pos,
                                       "table '" + *ref.table + "' is not listed in this statement's FROM clause");
            }
            return;
        }
        if (from_.size() != 1) {
            std::string candidates;
            for (std::size_t i = 0; i < from_.size(); ++i) candidates += (i ? ", " : "") + from_[i];
            error = semantic_error(Code::ambiguous_column, ref.pos,
                                   "column '" + ref.column + "' is ambiguous; qualify it with one of: " + candidates);
            return;
        }
        ref.table = from_.front();
    }

    std::optional<Diagnostic> error;

private:
    const std::vector<std::string>& from_;
};

inline std::optional<Diagnostic> qualify_statement(std::vector<ColumnRef*> refs, std::optional<Condition>& where,
                                                   const std::vector<std::string>& from)
{
    StatementQualifier q(from);
    for (ColumnRef* r : refs) q(*r);
    if (where) for_each_column(*where, q);
    return q.error;
}

inline void collect_tables(const Condition& c, std::set<std::string>& out)
{
    for_each_column(c, [&](const ColumnRef& r) { out.insert(r.table.value_or("")); });
}

// First comparison between columns of two different tables.
inline const Condition* find_join_predicate(const Condition& c)
{
    return std::visit(
        [&](const auto& n) -> const Condition* {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Comparison>) {
                const auto* rhs = std::get_if<ColumnRef>(&n.right);
                return rhs && rhs->table != n.left.table ? &c : nullptr;
            }
            else if constexpr (std::is_same_v<N, Negation>) {
                return find_join_predicate(*n.operand);
            }
            else {
                for (const auto& t : n.terms)
                    if (const auto* hit = find_join_predicate(t)) return hit;
                return nullptr;
            }
        },
        c.node);
}

} // namespace detail

/// Top-level conjuncts of `c`; a non-AND root is a single conjunct.
inline std::vector<Condition> conjuncts(const Condition& c)
{
    if (const auto* all = std::get_if<AllOf>(&c.node)) return all->terms;
    return {c};
}

/// Gives every column reference an explicit table qualifier.
inline Result<Program> qualify(Program program)
{
    std::vector<Diagnostic> errors;

    {
        auto& s = program.predict;
        if (auto e = detail::qualify_statement({&s.target}, s.where, {s.from_table})) errors.push_back(*e);
    }
    if (program.train) {
        auto& s = *program.train;
        std::vector<ColumnRef*> refs;
        for (auto& c : s.columns) refs.push_back(&c);
        if (auto e = detail::qualify_statement(refs, s.where, s.from_tables)) errors.push_back(*e);
    }
    if (program.validate) {
        auto& s = *program.validate;
        std::vector<ColumnRef*> refs;
        for (auto& c : s.columns) refs.push_back(&c);
        if (auto e = detail::qualify_statement(refs, s.where, {s.from_table})) errors.push_back(*e);
    }

    if (!errors.empty()) {
        return *std::min_element(errors.begin(), errors.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return a.pos.offset < b.pos.offset;
        });
    }
    return program;
}

using RoutedWhere = std::map<std::string, Condition>;

/// Splits a qualified condition at top-level AND and assigns each conjunct
/// to the single table it references. Conjuncts keep source order per table.
inline Result<RoutedWhere> route_where(const std::optional<Condition>& where)
{
    RoutedWhere routed;
    if (!where) return routed;

    std::map<std::string, std::vector<Condition>> grouped;
    for (auto& conjunct : conjuncts(*where)) {
        if (const Condition* join = detail::find_join_predicate(conjunct)) {
            const auto& cmp = std::get<Comparison>(join->node);
            return detail::semantic_error(Code::cross_table_comparison, join->pos,
                                          "comparison between columns of different tables ('" +
                                              cmp.left.qualified_name() + "' and '" +
                                              std::get<ColumnRef>(cmp.right).qualified_name() +
                                              "') is a join predicate and is not supported");
        }
        std::set<std::string> tables;
        detail::collect_tables(conjunct, tables);
        if (tables.size() != 1) {
            std::string names;
            for (const auto& t : tables) names += (names.empty() ? "" : ", ") + t;
            return detail::semantic_error(Code::cross_table_conjunct, conjunct.pos,
                                          "condition references more than one table (" + names +
                                              "); split it into single-table conjuncts joined by AND");
        }
        grouped[*tables.begin()].push_back(std::move(conjunct));
    }
    for (auto& [table, terms] : grouped) routed.emplace(table, make_and(std::move(terms)));
    return routed;
}

/// Overload checking the routed tables against an allowed set.
inline Result<RoutedWhere> route_where(const std::optional<Condition>& where, const std::set<std::string>& tables)
{
    auto routed = route_where(where);
    if (!routed) return routed;
    for (const auto& [table, cond] : *routed) {
        if (!tables.count(table)) {
            return detail::semantic_error(Code::unknown_table_qualifier, cond.pos,
                                          "table '" + table + "' is not listed in this statement's FROM clause");
        }
    }
    return routed;
}

namespace detail {

// Dedupes column names keeping the first occurrence; warns on repeats.
inline std::vector<std::string> unique_columns(const std::vector<const ColumnRef*>& refs,
                                               std::vector<Diagnostic>& warnings)
{
    std::vector<std::string> out;
    for (const ColumnRef* r : refs) {
        if (std::find(out.begin(), out.end(), r->column) != out.end()) {
            warnings.push_back(Diagnostic{Code::duplicate_column, r->pos,
                                          "column '" + r->qualified_name() + "' selected more than once; keeping the first",
                                          {}, {}});
            continue;
        }
        out.push_back(r->column);
    }
    return out;
}

} // namespace detail

/// Resolves a program into a complete TaskPlan, filling in the defaults of
/// the specification level the program uses.
inline Result<TaskPlan> resolve(const Program& source)
{
    auto qualified = qualify(source);
    if (!qualified) return qualified.error();
    const Program& program = *qualified;
    const PredictStmt& predict = program.predict;

    TaskPlan plan;
    plan.target = TargetSpec{*predict.target.table, predict.target.column, predict.task_type, predict.where};
    plan.split = CrossValidation{default_folds};

    if (!program.train) {
        plan.level = Level::I;
        TableSpec spec{plan.target.table, true, {}, std::nullopt};
        if (predict.where) {
            spec.routed_where = make_not(*predict.where);
        }
        else {
            plan.warnings.push_back(Diagnostic{Code::empty_train_complement, predict.pos,
                                               "no PREDICT WHERE clause: the test set is the whole table '" +
                                                   plan.target.table + "' and its training complement is empty",
                                               {}, {}});
        }
        plan.train.push_back(std::move(spec));
    }
    else {
        plan.level = Level::II;
        const TrainStmt& train = *program.train;
        const auto& from = train.from_tables;
        if (std::find(from.begin(), from.end(), plan.target.table) == from.end()) {
            return detail::semantic_error(Code::target_not_in_from, train.from_pos,
                                          "prediction target table '" + plan.target.table +
                                              "' must appear in the TRAIN FROM list");
        }

        auto routed = route_where(train.where, std::set<std::string>(from.begin(), from.end()));
        if (!routed) return routed.error();

        for (const auto& table : from) {
            std::vector<const ColumnRef*> refs;
            for (const auto& c : train.columns)
                if (*c.table == table) refs.push_back(&c);
            TableSpec spec;
            spec.table = table;
            spec.all_columns = refs.empty();
            spec.columns = detail::unique_columns(refs, plan.warnings);
            if (auto it = routed->find(table); it != routed->end()) spec.routed_where = it->second;
            plan.train.push_back(std::move(spec));
        }

        for (auto& spec : plan.train) {
            if (spec.table != plan.target.table || spec.all_columns) continue;
            if (std::find(spec.columns.begin(), spec.columns.end(), plan.target.column) == spec.columns.end()) {
                spec.columns.push_back(plan.target.column);
                plan.label_autoincluded = true;
            }
        }
    }

    if (program.validate) {
        plan.level = Level::III;
        const ValidateStmt& validate = *program.validate;
        if (validate.from_table != plan.target.table) {
            return detail::semantic_error(Code::validate_table_mismatch, validate.from_pos,
                                          "VALIDATE must draw from the prediction table '" + plan.target.table +
                                              "', not '" + validate.from_table + "'");
        }
        const bool has_target = std::any_of(validate.columns.begin(), validate.columns.end(),
                                            [&](const ColumnRef& c) { return c.column == plan.target.column; });
        if (!has_target) {
            return detail::semantic_error(Code::validate_column_mismatch, validate.columns.front().pos,
                                          "VALIDATE must select the target column '" + plan.target.table + "." +
                                              plan.target.column + "'");
        }

        std::vector<const ColumnRef*> refs;
        for (const auto& c : validate.columns) refs.push_back(&c);
        TableSpec spec{validate.from_table, false, detail::unique_columns(refs, plan.warnings), validate.where};

        const TableSpec& train_spec = plan.target_train();
        if (!train_spec.all_columns) {
            std::set<std::string> reported;
            for (const auto& c : validate.columns) {
                const auto& cols = train_spec.columns;
                if (std::find(cols.begin(), cols.end(), c.column) == cols.end() && reported.insert(c.column).second) {
                    plan.warnings.push_back(Diagnostic{Code::validate_extra_column, c.pos,
                                                       "VALIDATE column '" + c.qualified_name() +
                                                           "' is not part of the training selection",
                                                       {}, {}});
                }
            }
        }
        plan.split = Holdout{std::move(spec)};
    }
    return plan;
}

} // namespace tlsql

#endif
