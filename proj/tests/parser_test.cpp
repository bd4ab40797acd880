#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/ast_builders.hpp"
#include "support/bool_oracle.hpp"
#include "support/reference_eval.hpp"
#include "tlsql/parser.hpp"
#include "tlsql/render.hpp"

namespace tlsql {
namespace {

using namespace tlsql::testing;

Program parse_ok(std::string_view src)
{
    auto r = parse(src);
    if (!r) ADD_FAILURE() << "parse failed: " << r.error().message << " at " << r.error().pos.line << ":"
                          << r.error().pos.column;
    return r ? r.value() : Program{};
}

Diagnostic parse_err(std::string_view src)
{
    auto r = parse(src);
    EXPECT_FALSE(r.ok()) << src;
    return r ? Diagnostic{} : r.error();
}

TEST(Parser, PredictOnlyExample)
{
    const auto p = parse_ok("PREDICT VALUE(users.Age, CLF) FROM users WHERE users.Gender='F'");
    EXPECT_EQ(p.predict.target, col("users", "Age"));
    EXPECT_EQ(p.predict.task_type, TaskType::clf);
    EXPECT_EQ(p.predict.from_table, "users");
    ASSERT_TRUE(p.predict.where);
    EXPECT_EQ(*p.predict.where, cmp(col("users", "Gender"), CmpOp::eq, str("F")));
    EXPECT_FALSE(p.train);
    EXPECT_FALSE(p.validate);
}

TEST(Parser, MinimalLevelOneProgram)
{
    const auto p = parse_ok("PREDICT VALUE(y, REG) FROM t");
    EXPECT_EQ(p.predict.target, col("y"));
    EXPECT_EQ(p.predict.task_type, TaskType::reg);
    EXPECT_FALSE(p.predict.where);
    EXPECT_FALSE(p.train);
    EXPECT_FALSE(p.validate);
}

TEST(Parser, AndBindsTighterThanOr)
{
    const auto p = parse_ok(
        "TRAIN WITH a.x FROM a WHERE a.x > 3 AND (a.y = 1 OR NOT a.z < 0) PREDICT VALUE(a.y, CLF) FROM a");
    ASSERT_TRUE(p.train && p.train->where);
    const Condition expected = all(cmp(col("a", "x"), CmpOp::gt, num(3)),
                                   any(cmp(col("a", "y"), CmpOp::eq, num(1)), negate(cmp(col("a", "z"), CmpOp::lt, num(0)))));
    EXPECT_EQ(*p.train->where, expected);

    // Truth-table check against the precedence-climbing oracle with the same
    // token shape: x AND ( y OR NOT z ).
    const std::vector<BoolToken> shape{{BTok::atom, 0}, {BTok::op_and},  {BTok::lparen},    {BTok::atom, 1},
                                       {BTok::op_or},   {BTok::op_not}, {BTok::atom, 2}, {BTok::rparen}};
    const auto oracle = PrecedenceClimber(shape).parse();
    for (unsigned bits = 0; bits < 8; ++bits) {
        // x > 3 true iff bit0; y = 1 iff bit1; z < 0 iff bit2.
        const auto lookup = [&](const ColumnRef& r) {
            const bool on = r.column == "x" ? bits & 1u : r.column == "y" ? bits & 2u : bits & 4u;
            const double v = r.column == "x" ? (on ? 5 : 0) : r.column == "y" ? (on ? 1 : 0) : (on ? -1 : 1);
            return Cell{ColumnType::integer, v, ""};
        };
        EXPECT_EQ(evaluate(*p.train->where, lookup), oracle->eval(bits)) << bits;
    }
}

TEST(Parser, FullProgramAnyOrderWithSeparators)
{
    const std::string predict = "PREDICT VALUE(users.Age, CLF) FROM users WHERE users.Gender = 'F'";
    const std::string train = "TRAIN WITH users.Gender, movies.Title FROM users, movies WHERE users.userID < 3000";
    const std::string validate = "VALIDATE WITH users.Age FROM users WHERE users.userID > 3000";
    std::vector<std::string> stmts{predict, train, validate};
    const auto reference = parse_ok(predict + "\n" + train + "\n" + validate);
    ASSERT_TRUE(reference.train && reference.validate);
    EXPECT_EQ(reference.train->from_tables, (std::vector<std::string>{"users", "movies"}));

    std::sort(stmts.begin(), stmts.end());
    do {
        EXPECT_EQ(parse_ok(stmts[0] + ";\n" + stmts[1] + " ; " + stmts[2] + ";"), reference);
    } while (std::next_permutation(stmts.begin(), stmts.end()));
}

TEST(Parser, KeywordCaseAndLiteralForms)
{
    const auto p = parse_ok("predict value(t.y, reg) from t where t.a >= -2.5 and t.b <> 'x' or not t.c != 007");
    ASSERT_TRUE(p.predict.where);
    const auto& any_of = std::get<AnyOf>(p.predict.where->node);
    ASSERT_EQ(any_of.terms.size(), 2u);
    const auto& lhs = std::get<AllOf>(any_of.terms[0].node);
    const auto& ge = std::get<Comparison>(lhs.terms[0].node);
    const auto& lit = std::get<Literal>(ge.right);
    EXPECT_EQ(lit.kind, Literal::Kind::real);
    EXPECT_EQ(lit.text, "-2.5");
    EXPECT_DOUBLE_EQ(lit.real_value, -2.5);
    EXPECT_EQ(std::get<Comparison>(lhs.terms[1].node).op, CmpOp::ne);
    const auto& neg = std::get<Negation>(any_of.terms[1].node);
    const auto& inner = std::get<Comparison>(neg.operand->node);
    EXPECT_EQ(inner.op, CmpOp::ne);
    EXPECT_EQ(std::get<Literal>(inner.right).text, "7");
    EXPECT_EQ(std::get<Literal>(inner.right).int_value, 7);
}

TEST(Parser, LiteralOnLeftIsMirrored)
{
    const auto p = parse_ok("PREDICT VALUE(y, REG) FROM t WHERE 3 < t.x");
    EXPECT_EQ(*p.predict.where, cmp(col("t", "x"), CmpOp::gt, num(3)));
    const auto q = parse_ok("PREDICT VALUE(y, REG) FROM t WHERE t.a = t.b");
    EXPECT_EQ(*q.predict.where, cmp(col("t", "a"), CmpOp::eq, col("t", "b")));
}

TEST(Parser, NestedGroupsAreFlattened)
{
    const auto p = parse_ok("PREDICT VALUE(y, REG) FROM t WHERE (t.a = 1 AND t.b = 2) AND (t.c = 3 AND t.d = 4)");
    EXPECT_EQ(std::get<AllOf>(p.predict.where->node).terms.size(), 4u);
    const auto q = parse_ok("PREDICT VALUE(y, REG) FROM t WHERE t.a = 1 OR (t.b = 2 OR t.c = 3)");
    EXPECT_EQ(std::get<AnyOf>(q.predict.where->node).terms.size(), 3u);
}

TEST(ParserErrors, ExpectedSetAndPosition)
{
    const auto d = parse_err("PREDICT VALUE(users.Age CLF) FROM users");
    EXPECT_EQ(d.code, Code::unexpected_token);
    EXPECT_EQ(d.pos.column, 25u);
    EXPECT_EQ(d.found, "CLF");
    EXPECT_EQ(d.expected, (std::vector<std::string>{"','"}));

    const auto task = parse_err("PREDICT VALUE(y, BIN) FROM t");
    EXPECT_EQ(task.expected, (std::vector<std::string>{"CLF", "REG"}));
    EXPECT_EQ(task.found, "identifier 'BIN'");

    const auto tail = parse_err("PREDICT VALUE(y, REG) FROM t extra");
    EXPECT_EQ(tail.pos.column, 30u);
    EXPECT_EQ(tail.expected,
              (std::vector<std::string>{"WHERE", "';'", "PREDICT", "TRAIN", "VALIDATE", "end of input"}));

    const auto cond = parse_err("PREDICT VALUE(y, REG) FROM t WHERE t.x = ");
    EXPECT_EQ(cond.found, "end of input");
    EXPECT_EQ(cond.expected, (std::vector<std::string>{"'-'", "identifier", "literal"}));

    const auto op = parse_err("PREDICT VALUE(y, REG) FROM t WHERE t.x 3");
    EXPECT_EQ(op.expected, (std::vector<std::string>{"comparison operator"}));
}

TEST(ParserErrors, ProgramLevel)
{
    const auto empty = parse_err("");
    EXPECT_EQ(empty.code, Code::missing_predict);
    EXPECT_EQ(empty.message, "expected PREDICT statement");
    EXPECT_EQ(empty.pos.line, 1u);

    const auto only_train = parse_err("TRAIN WITH a.x FROM a");
    EXPECT_EQ(only_train.code, Code::missing_predict);

    const auto dup = parse_err("PREDICT VALUE(y, REG) FROM t\nPREDICT VALUE(z, REG) FROM t");
    EXPECT_EQ(dup.code, Code::duplicate_statement);
    EXPECT_EQ(dup.pos.line, 2u);
    EXPECT_EQ(dup.pos.column, 1u);

    const auto dup_from = parse_err("PREDICT VALUE(y, REG) FROM t TRAIN WITH t.y FROM t, u, t");
    EXPECT_EQ(dup_from.code, Code::duplicate_from_table);
    EXPECT_EQ(dup_from.pos.column, 56u);

    const auto big = parse_err("PREDICT VALUE(y, REG) FROM t WHERE t.x = 99999999999999999999");
    EXPECT_EQ(big.code, Code::integer_out_of_range);

    const auto lits = parse_err("PREDICT VALUE(y, REG) FROM t WHERE 1 = 1");
    EXPECT_EQ(lits.code, Code::missing_column_operand);
    EXPECT_EQ(lits.pos.column, 36u);

    const auto lex = parse_err("PREDICT VALUE(y, REG) FROM t WHERE t.x = 'open");
    EXPECT_EQ(lex.code, Code::unterminated_string);
}

TEST(ParserErrors, ValidateBoxFormOnly)
{
    const auto d = parse_err("PREDICT VALUE(y, REG) FROM t VALIDATE VALUE(t.y) FROM t");
    EXPECT_EQ(d.code, Code::unexpected_token);
    EXPECT_EQ(d.expected, (std::vector<std::string>{"WITH"}));
}

TEST(ParserProperties, ErrorPositionsStayInBounds)
{
    static const std::vector<std::string> pieces{"PREDICT", "VALUE", "TRAIN", "WITH", "VALIDATE", "FROM", "WHERE",
                                                 "AND",     "OR",    "NOT",   "CLF",  "REG",      "t",    "x",
                                                 "1",       "'s'",   "=",     "<",    "(",        ")",    ",",
                                                 ".",       ";",     "-",     "\n"};
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::uniform_int_distribution<int> len(0, 30);
    for (int i = 0; i < 2000; ++i) {
        std::string src;
        // Bias half the inputs toward a valid prefix.
        if (i % 2 == 0) src = "PREDICT VALUE(t.y, CLF) FROM t ";
        const int n = len(rng);
        for (int k = 0; k < n; ++k) src += pieces[pick(rng)] + " ";
        auto r = parse(src);
        if (r) continue;
        EXPECT_LE(r.error().pos.offset, src.size());
        if (r.error().kind() == DiagnosticKind::parse) {
            EXPECT_FALSE(r.error().expected.empty()) << src;
        }
    }
}

TEST(Render, PredictOnlyAndMinimal)
{
    EXPECT_EQ(render(parse_ok("PREDICT VALUE(users.Age, CLF) FROM users WHERE users.Gender='F'")),
              "PREDICT VALUE(users.Age, CLF) FROM users WHERE users.Gender = 'F'");
    EXPECT_EQ(render(parse_ok("predict value(y,reg)\nfrom   t")), "PREDICT VALUE(y, REG) FROM t");
}

TEST(Render, MinimalParentheses)
{
    const Condition c = all(any(cmp(col("t", "a"), CmpOp::eq, num(1)), cmp(col("t", "b"), CmpOp::ne, str("it's"))),
                            negate(any(cmp(col("t", "c"), CmpOp::lt, num(-4)), cmp(col("t", "d"), CmpOp::ge, col("t", "e")))),
                            negate(negate(cmp(col("t", "f"), CmpOp::le, num(0)))));
    EXPECT_EQ(render(c), "(t.a = 1 OR t.b <> 'it''s') AND NOT (t.c < -4 OR t.d >= t.e) AND NOT NOT t.f <= 0");

    const Condition d = any(all(cmp(col("t", "a"), CmpOp::eq, num(1)), cmp(col("t", "b"), CmpOp::eq, num(2))),
                            cmp(col("t", "c"), CmpOp::gt, num(3)));
    EXPECT_EQ(render(d), "t.a = 1 AND t.b = 2 OR t.c > 3");
}

TEST(RenderProperties, RandomConditionsRoundTrip)
{
    for (unsigned seed = 0; seed < 300; ++seed) {
        BoolExprGenerator gen(seed, 4);
        const std::string where = to_tlsql(gen.generate(5));
        const auto p = parse_ok("PREDICT VALUE(t.y, CLF) FROM t WHERE " + where);
        const std::string text = render(p);
        const auto again = parse_ok(text);
        EXPECT_EQ(again, p) << where << "\n" << text;
        EXPECT_EQ(render(again), text);
    }
}

} // namespace
} // namespace tlsql
