#ifndef TLSQL_RENDER_HPP
#define TLSQL_RENDER_HPP

#include <string>
#include <variant>

#include "tlsql/ast.hpp"
#include "tlsql/lexer.hpp"

namespace tlsql {

inline std::string render_literal(const Literal& lit)
{
    return lit.kind == Literal::Kind::str ? quote_string(lit.text) : lit.text;
}

enum class NotStyle : std::uint8_t {
    minimal,      // NOT binds to a comparison without parentheses
    parenthesized // always NOT (...)
};

/// Renders a condition with parentheses only where precedence requires them.
/// `column` maps a ColumnRef to its printed form.
template <typename ColumnPrinter>
std::string render_condition(const Condition& c, const ColumnPrinter& column, NotStyle not_style)
{
    return std::visit(
        [&](const auto& n) -> std::string {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Comparison>) {
                std::string out = column(n.left);
                out += ' ';
                out += symbol_of(n.op);
                out += ' ';
                if (auto* lit = std::get_if<Literal>(&n.right)) out += render_literal(*lit);
                else out += column(std::get<ColumnRef>(n.right));
                return out;
            }
            else if constexpr (std::is_same_v<N, Negation>) {
                const Condition& inner = *n.operand;
                const bool bare = not_style == NotStyle::minimal &&
                                  (std::holds_alternative<Comparison>(inner.node) ||
                                   std::holds_alternative<Negation>(inner.node));
                const std::string body = render_condition(inner, column, not_style);
                return bare ? "NOT " + body : "NOT (" + body + ")";
            }
            else {
                constexpr bool is_and = std::is_same_v<N, AllOf>;
                std::string out;
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    if (i > 0) out += is_and ? " AND " : " OR ";
                    const Condition& t = n.terms[i];
                    const bool wrap = is_and && std::holds_alternative<AnyOf>(t.node);
                    const std::string body = render_condition(t, column, not_style);
                    out += wrap ? "(" + body + ")" : body;
                }
                return out;
            }
        },
        c.node);
}

/// Canonical TLSQL text for a condition.
inline std::string render(const Condition& c)
{
    return render_condition(
        c, [](const ColumnRef& r) { return r.qualified_name(); }, NotStyle::minimal);
}

namespace detail {

inline std::string column_list(const std::vector<ColumnRef>& cols)
{
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i > 0) out += ", ";
        out += cols[i].qualified_name();
    }
    return out;
}

inline void append_where(std::string& out, const std::optional<Condition>& where)
{
    if (where) out += " WHERE " + render(*where);
}

} // namespace detail

/// Canonical pretty-print: uppercase keywords, single spaces, one statement
/// per line in PREDICT, TRAIN, VALIDATE order. No trailing newline.
inline std::string render(const Program& p)
{
    std::string out = "PREDICT VALUE(" + p.predict.target.qualified_name() + ", " +
                      (p.predict.task_type == TaskType::clf ? "CLF" : "REG") + ") FROM " +
                      p.predict.from_table;
    detail::append_where(out, p.predict.where);

    if (p.train) {
        out += "\nTRAIN WITH " + detail::column_list(p.train->columns) + " FROM ";
        for (std::size_t i = 0; i < p.train->from_tables.size(); ++i) {
            if (i > 0) out += ", ";
            out += p.train->from_tables[i];
        }
        detail::append_where(out, p.train->where);
    }
    if (p.validate) {
        out += "\nVALIDATE WITH " + detail::column_list(p.validate->columns) + " FROM " + p.validate->from_table;
        detail::append_where(out, p.validate->where);
    }
    return out;
}

} // namespace tlsql

#endif
