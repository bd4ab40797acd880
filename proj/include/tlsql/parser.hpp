#ifndef TLSQL_PARSER_HPP
#define TLSQL_PARSER_HPP

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "tlsql/ast.hpp"
#include "tlsql/diagnostic.hpp"
#include "tlsql/lexer.hpp"

namespace tlsql {

namespace detail {

// Recursive-descent parser. Fails fast: the first error unwinds through
// ParseFailure and becomes the result.
class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Result<Program> run()
    {
        try {
            return program();
        }
        catch (ParseFailure& f) {
            return std::move(f.diag);
        }
    }

private:
    struct ParseFailure {
        Diagnostic diag;
    };

    // ---- token cursor -------------------------------------------------

    const Token& cur() const { return toks_[index_]; }

    void bump()
    {
        if (cur().kind != TokenKind::eof) ++index_;
        expected_.clear();
    }

    void expect_note(std::string what)
    {
        if (std::find(expected_.begin(), expected_.end(), what) == expected_.end())
            expected_.push_back(std::move(what));
    }

    bool check(Keyword k)
    {
        if (cur().is(k)) return true;
        expect_note(std::string(name_of(k)));
        return false;
    }

    bool check_punct(std::string_view p)
    {
        if (cur().is_punct(p)) return true;
        expect_note("'" + std::string(p) + "'");
        return false;
    }

    bool accept(Keyword k)
    {
        if (!check(k)) return false;
        bump();
        return true;
    }

    bool accept_punct(std::string_view p)
    {
        if (!check_punct(p)) return false;
        bump();
        return true;
    }

    [[noreturn]] void fail()
    {
        const Token& t = cur();
        std::string msg = "expected ";
        for (std::size_t i = 0; i < expected_.size(); ++i) {
            if (i > 0) msg += i + 1 == expected_.size() ? " or " : ", ";
            msg += expected_[i];
        }
        msg += ", found " + describe(t);
        throw ParseFailure{Diagnostic{Code::unexpected_token, t.pos, std::move(msg), describe(t), expected_}};
    }

    [[noreturn]] static void fail_at(Code code, SourcePos pos, std::string message, const Token& found,
                                     std::vector<std::string> expected)
    {
        throw ParseFailure{Diagnostic{code, pos, std::move(message), describe(found), std::move(expected)}};
    }

    void expect(Keyword k)
    {
        if (!accept(k)) fail();
    }

    void expect_punct(std::string_view p)
    {
        if (!accept_punct(p)) fail();
    }

    Token expect_identifier()
    {
        if (cur().kind != TokenKind::identifier) {
            expect_note("identifier");
            fail();
        }
        Token t = cur();
        bump();
        return t;
    }

    // ---- statements ---------------------------------------------------

    Program program()
    {
        std::optional<PredictStmt> predict;
        std::optional<TrainStmt> train;
        std::optional<ValidateStmt> validate;

        auto duplicate = [&](const Token& kw) {
            fail_at(Code::duplicate_statement, kw.pos,
                    "duplicate " + std::string(name_of(*kw.keyword)) + " statement", kw,
                    remaining_statements(predict.has_value(), train.has_value(), validate.has_value()));
        };

        for (;;) {
            while (accept_punct(";")) {}
            if (cur().kind == TokenKind::eof) break;
            const Token head = cur();
            if (check(Keyword::PREDICT)) {
                if (predict) duplicate(head);
                predict = predict_stmt();
            }
            else if (check(Keyword::TRAIN)) {
                if (train) duplicate(head);
                train = train_stmt();
            }
            else if (check(Keyword::VALIDATE)) {
                if (validate) duplicate(head);
                validate = validate_stmt();
            }
            else {
                if (predict || train || validate) expect_note("end of input");
                fail();
            }
        }

        if (!predict) {
            fail_at(Code::missing_predict, cur().pos, "expected PREDICT statement", cur(), {"PREDICT"});
        }
        return Program{std::move(*predict), std::move(train), std::move(validate)};
    }

    static std::vector<std::string> remaining_statements(bool predict, bool train, bool validate)
    {
        std::vector<std::string> out;
        if (!predict) out.emplace_back("PREDICT");
        if (!train) out.emplace_back("TRAIN");
        if (!validate) out.emplace_back("VALIDATE");
        out.emplace_back("end of input");
        return out;
    }

    PredictStmt predict_stmt()
    {
        PredictStmt s;
        s.pos = cur().pos;
        expect(Keyword::PREDICT);
        expect(Keyword::VALUE);
        expect_punct("(");
        s.target = column_ref();
        expect_punct(",");
        if (accept(Keyword::CLF)) {
            s.task_type = TaskType::clf;
        }
        else if (accept(Keyword::REG)) {
            s.task_type = TaskType::reg;
        }
        else {
            fail();
        }
        expect_punct(")");
        expect(Keyword::FROM);
        s.from_pos = cur().pos;
        s.from_table = expect_identifier().lexeme;
        s.where = opt_where();
        return s;
    }

    TrainStmt train_stmt()
    {
        TrainStmt s;
        s.pos = cur().pos;
        expect(Keyword::TRAIN);
        expect(Keyword::WITH);
        s.columns = column_list();
        expect(Keyword::FROM);
        s.from_pos = cur().pos;
        do {
            const Token t = expect_identifier();
            if (std::find(s.from_tables.begin(), s.from_tables.end(), t.lexeme) != s.from_tables.end()) {
                fail_at(Code::duplicate_from_table, t.pos, "table '" + t.lexeme + "' listed twice in FROM", t,
                        {"identifier"});
            }
            s.from_tables.push_back(t.lexeme);
        } while (accept_punct(","));
        s.where = opt_where();
        return s;
    }

    ValidateStmt validate_stmt()
    {
        ValidateStmt s;
        s.pos = cur().pos;
        expect(Keyword::VALIDATE);
        expect(Keyword::WITH);
        s.columns = column_list();
        expect(Keyword::FROM);
        s.from_pos = cur().pos;
        s.from_table = expect_identifier().lexeme;
        s.where = opt_where();
        return s;
    }

    std::vector<ColumnRef> column_list()
    {
        std::vector<ColumnRef> cols;
        do {
            cols.push_back(column_ref());
        } while (accept_punct(","));
        return cols;
    }

    ColumnRef column_ref()
    {
        const Token first = expect_identifier();
        ColumnRef ref;
        ref.pos = first.pos;
        if (accept_punct(".")) {
            ref.table = first.lexeme;
            ref.column = expect_identifier().lexeme;
        }
        else {
            ref.column = first.lexeme;
        }
        return ref;
    }

    std::optional<Condition> opt_where()
    {
        if (!accept(Keyword::WHERE)) return std::nullopt;
        return expr();
    }

    // ---- conditions: OR < AND < NOT < comparison ------------------------

    Condition expr()
    {
        std::vector<Condition> terms;
        terms.push_back(and_expr());
        while (accept(Keyword::OR)) terms.push_back(and_expr());
        return make_or(std::move(terms));
    }

    Condition and_expr()
    {
        std::vector<Condition> terms;
        terms.push_back(unary());
        while (accept(Keyword::AND)) terms.push_back(unary());
        return make_and(std::move(terms));
    }

    Condition unary()
    {
        const SourcePos pos = cur().pos;
        if (accept(Keyword::NOT)) {
            Condition inner = unary();
            return Condition{Negation{std::move(inner)}, pos};
        }
        if (accept_punct("(")) {
            Condition inner = expr();
            expect_punct(")");
            inner.pos = pos;
            return inner;
        }
        return comparison();
    }

    Condition comparison()
    {
        const Token lhs_tok = cur();
        Operand lhs = operand();
        const CmpOp op = comparison_op();
        const Token rhs_tok = cur();
        Operand rhs = operand();

        if (auto* col = std::get_if<ColumnRef>(&lhs)) {
            return Condition{Comparison{std::move(*col), op, std::move(rhs)}, lhs_tok.pos};
        }
        // literal op column reads as column mirrored-op literal.
        if (auto* col = std::get_if<ColumnRef>(&rhs)) {
            return Condition{Comparison{std::move(*col), mirrored(op), std::move(lhs)}, lhs_tok.pos};
        }
        fail_at(Code::missing_column_operand, lhs_tok.pos, "comparison must reference at least one column",
                lhs_tok, {"identifier"});
    }

    CmpOp comparison_op()
    {
        const Token& t = cur();
        if (t.kind == TokenKind::op) {
            CmpOp op{};
            if (t.lexeme == "=") op = CmpOp::eq;
            else if (t.lexeme == "!=" || t.lexeme == "<>") op = CmpOp::ne;
            else if (t.lexeme == "<") op = CmpOp::lt;
            else if (t.lexeme == "<=") op = CmpOp::le;
            else if (t.lexeme == ">") op = CmpOp::gt;
            else op = CmpOp::ge;
            bump();
            return op;
        }
        expect_note("comparison operator");
        fail();
    }

    Operand operand()
    {
        const Token t = cur();
        switch (t.kind) {
        case TokenKind::identifier: return column_ref();
        case TokenKind::string_literal:
            bump();
            return Literal{Literal::Kind::str, t.lexeme, 0, 0.0};
        case TokenKind::int_literal:
        case TokenKind::float_literal: bump(); return number(t, false);
        default: break;
        }
        if (accept_punct("-")) {
            const Token n = cur();
            if (n.kind == TokenKind::int_literal || n.kind == TokenKind::float_literal) {
                bump();
                return number(n, true);
            }
            expect_note("number");
            fail();
        }
        expect_note("identifier");
        expect_note("literal");
        fail();
    }

    static Literal number(const Token& t, bool negative)
    {
        Literal lit;
        const std::string text = (negative ? "-" : "") + t.lexeme;
        const char* first = text.data();
        const char* last = text.data() + text.size();
        if (t.kind == TokenKind::int_literal) {
            lit.kind = Literal::Kind::integer;
            auto [ptr, ec] = std::from_chars(first, last, lit.int_value);
            if (ec != std::errc{} || ptr != last) {
                fail_at(Code::integer_out_of_range, t.pos, "integer literal " + text + " out of range", t,
                        {"integer"});
            }
            lit.text = std::to_string(lit.int_value);
        }
        else {
            lit.kind = Literal::Kind::real;
            std::from_chars(first, last, lit.real_value);
            lit.text = text;
        }
        return lit;
    }

    std::vector<Token> toks_;
    std::size_t index_ = 0;
    std::vector<std::string> expected_;
};

} // namespace detail

inline Result<Program> parse_tokens(std::vector<Token> tokens)
{
    return detail::Parser(std::move(tokens)).run();
}

/// Parses a TLSQL program. Errors are lexical or syntactic diagnostics.
inline Result<Program> parse(std::string_view source)
{
    auto tokens = tokenize(source);
    if (!tokens) return tokens.error();
    return parse_tokens(std::move(tokens).value());
}

} // namespace tlsql

#endif
