#ifndef TLSQL_AST_HPP
#define TLSQL_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tlsql/diagnostic.hpp"

namespace tlsql {

// AST equality ignores source positions throughout: two programs that differ
// only in layout compare equal.

/// Deep-copying owner of a single heap value; gives recursive variants
/// value semantics.
template <typename T>
class Box {
public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
    Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box&&) noexcept = default;
    Box& operator=(const Box& other)
    {
        if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
        return *this;
    }
    Box& operator=(Box&&) noexcept = default;

    T& operator*() { return *ptr_; }
    const T& operator*() const { return *ptr_; }
    T* operator->() { return ptr_.get(); }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

private:
    std::unique_ptr<T> ptr_;
};

struct ColumnRef {
    std::optional<std::string> table;
    std::string column;
    SourcePos pos;

    std::string qualified_name() const { return table ? *table + "." + column : column; }

    friend bool operator==(const ColumnRef& a, const ColumnRef& b)
    {
        return a.table == b.table && a.column == b.column;
    }
};

struct Literal {
    enum class Kind : std::uint8_t { str, integer, real };
    Kind kind = Kind::str;
    // Strings: the unescaped content. Numbers: the canonical surface form,
    // including a leading '-' when negative.
    std::string text;
    std::int64_t int_value = 0;
    double real_value = 0.0;

    friend bool operator==(const Literal& a, const Literal& b)
    {
        return a.kind == b.kind && a.text == b.text;
    }
};

enum class CmpOp : std::uint8_t { eq, ne, lt, le, gt, ge };

constexpr const char* symbol_of(CmpOp op)
{
    switch (op) {
    case CmpOp::eq: return "=";
    case CmpOp::ne: return "<>";
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    }
    return "?";
}

/// The operator that gives the same result with operands swapped.
constexpr CmpOp mirrored(CmpOp op)
{
    switch (op) {
    case CmpOp::lt: return CmpOp::gt;
    case CmpOp::le: return CmpOp::ge;
    case CmpOp::gt: return CmpOp::lt;
    case CmpOp::ge: return CmpOp::le;
    default: return op;
    }
}

using Operand = std::variant<Literal, ColumnRef>;

struct Condition;

struct Comparison {
    ColumnRef left;
    CmpOp op = CmpOp::eq;
    Operand right;

    friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// Conjunction / disjunction with at least two terms. Nested terms of the
/// same kind are spliced in by make_and / make_or.
struct AllOf {
    std::vector<Condition> terms;
    friend bool operator==(const AllOf&, const AllOf&) = default;
};

struct AnyOf {
    std::vector<Condition> terms;
    friend bool operator==(const AnyOf&, const AnyOf&) = default;
};

struct Negation {
    Box<Condition> operand;
    friend bool operator==(const Negation&, const Negation&) = default;
};

struct Condition {
    std::variant<Comparison, AllOf, AnyOf, Negation> node;
    SourcePos pos;

    friend bool operator==(const Condition& a, const Condition& b) { return a.node == b.node; }
};

namespace detail {

template <typename Group>
Condition make_group(std::vector<Condition> terms)
{
    if (terms.size() == 1) return std::move(terms.front());
    const SourcePos pos = terms.empty() ? SourcePos{} : terms.front().pos;
    Group group;
    for (auto& t : terms) {
        if (auto* same = std::get_if<Group>(&t.node)) {
            for (auto& inner : same->terms) group.terms.push_back(std::move(inner));
        }
        else {
            group.terms.push_back(std::move(t));
        }
    }
    return Condition{std::move(group), pos};
}

} // namespace detail

/// AND of `terms`, flattened. A single term is returned unchanged.
inline Condition make_and(std::vector<Condition> terms) { return detail::make_group<AllOf>(std::move(terms)); }
inline Condition make_or(std::vector<Condition> terms) { return detail::make_group<AnyOf>(std::move(terms)); }
inline Condition make_not(Condition c)
{
    const SourcePos pos = c.pos;
    return Condition{Negation{std::move(c)}, pos};
}

enum class TaskType : std::uint8_t { clf, reg };

struct PredictStmt {
    ColumnRef target;
    TaskType task_type = TaskType::clf;
    std::string from_table;
    SourcePos from_pos;
    std::optional<Condition> where;
    SourcePos pos;

    friend bool operator==(const PredictStmt& a, const PredictStmt& b)
    {
        return a.target == b.target && a.task_type == b.task_type && a.from_table == b.from_table &&
               a.where == b.where;
    }
};

struct TrainStmt {
    std::vector<ColumnRef> columns;
    std::vector<std::string> from_tables;
    SourcePos from_pos;
    std::optional<Condition> where;
    SourcePos pos;

    friend bool operator==(const TrainStmt& a, const TrainStmt& b)
    {
        return a.columns == b.columns && a.from_tables == b.from_tables && a.where == b.where;
    }
};

struct ValidateStmt {
    std::vector<ColumnRef> columns;
    std::string from_table;
    SourcePos from_pos;
    std::optional<Condition> where;
    SourcePos pos;

    friend bool operator==(const ValidateStmt& a, const ValidateStmt& b)
    {
        return a.columns == b.columns && a.from_table == b.from_table && a.where == b.where;
    }
};

struct Program {
    PredictStmt predict;
    std::optional<TrainStmt> train;
    std::optional<ValidateStmt> validate;

    friend bool operator==(const Program&, const Program&) = default;
};

/// Calls `fn(const ColumnRef&)` for every column reference in `c`, left to right.
template <typename Fn>
void for_each_column(const Condition& c, Fn&& fn)
{
    std::visit(
        [&](const auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Comparison>) {
                fn(n.left);
                if (auto* rhs = std::get_if<ColumnRef>(&n.right)) fn(*rhs);
            }
            else if constexpr (std::is_same_v<N, Negation>) {
                for_each_column(*n.operand, fn);
            }
            else {
                for (const auto& t : n.terms) for_each_column(t, fn);
            }
        },
        c.node);
}

template <typename Fn>
void for_each_column(Condition& c, Fn&& fn)
{
    std::visit(
        [&](auto& n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Comparison>) {
                fn(n.left);
                if (auto* rhs = std::get_if<ColumnRef>(&n.right)) fn(*rhs);
            }
            else if constexpr (std::is_same_v<N, Negation>) {
                for_each_column(*n.operand, fn);
            }
            else {
                for (auto& t : n.terms) for_each_column(t, fn);
            }
        },
        c.node);
}

} // namespace tlsql

#endif
