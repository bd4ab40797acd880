#ifndef TLSQL_DIAGNOSTIC_HPP
#define TLSQL_DIAGNOSTIC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace tlsql {

/// Location of a character in the source text. `line` and `column` are
/// 1-based and count characters; `offset` counts bytes from the start.
struct SourcePos {
    std::uint32_t line = 1;
    std::uint32_t column = 1;
    std::size_t offset = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class DiagnosticKind : std::uint8_t { lex, parse, semantic, execution };

/// Stable diagnostic codes. The numeric block encodes the pipeline stage:
/// E0xx lexer, E1xx parser, E2xx semantics, E3xx execution, Wxxx warnings.
enum class Code : std::uint16_t {
    // lexer
    invalid_char = 1,
    unterminated_string = 2,
    // parser
    unexpected_token = 101,
    duplicate_statement = 102,
    missing_predict = 103,
    duplicate_from_table = 104,
    integer_out_of_range = 105,
    missing_column_operand = 106,
    // semantics
    unknown_table_qualifier = 201,
    ambiguous_column = 202,
    cross_table_conjunct = 203,
    cross_table_comparison = 204,
    validate_table_mismatch = 205,
    validate_column_mismatch = 206,
    target_not_in_from = 207,
    // execution
    connection_failed = 301,
    query_failed = 302,
    io_failed = 303,
    // warnings
    empty_train_complement = 1001,
    duplicate_column = 1002,
    validate_extra_column = 1003,
};

constexpr bool is_warning(Code code) { return static_cast<unsigned>(code) > 1000; }

constexpr DiagnosticKind kind_of(Code code)
{
    const auto n = static_cast<unsigned>(code);
    if (n < 100) return DiagnosticKind::lex;
    if (n < 200) return DiagnosticKind::parse;
    if (n < 300 || n > 1000) return DiagnosticKind::semantic;
    return DiagnosticKind::execution;
}

/// "E002", "W001", ...
inline std::string code_name(Code code)
{
    auto n = static_cast<unsigned>(code);
    std::string out(1, is_warning(code) ? 'W' : 'E');
    if (is_warning(code)) n -= 1000;
    const std::string digits = std::to_string(n);
    out.append(3 - digits.size(), '0');
    out += digits;
    return out;
}

struct Diagnostic {
    Code code{};
    SourcePos pos;
    std::string message;
    // Parse errors only: description of the offending token and the
    // token descriptions acceptable at that point.
    std::string found;
    std::vector<std::string> expected;

    DiagnosticKind kind() const { return kind_of(code); }
    bool is_error() const { return !is_warning(code); }
};

/// Either a value or the first error diagnostic produced while computing it.
template <typename T>
class Result {
public:
    Result(T value) : state_(std::move(value)) {}
    Result(Diagnostic error) : state_(std::move(error)) {}

    bool ok() const { return state_.index() == 0; }
    explicit operator bool() const { return ok(); }

    T& value() & { return std::get<0>(state_); }
    const T& value() const& { return std::get<0>(state_); }
    T&& value() && { return std::get<0>(std::move(state_)); }

    const Diagnostic& error() const { return std::get<1>(state_); }

    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }

private:
    std::variant<T, Diagnostic> state_;
};

/// Thrown by the convenience entry points that do not return Result.
class CompileError : public std::exception {
public:
    explicit CompileError(Diagnostic d)
        : diag_(std::move(d)), what_(code_name(diag_.code) + ": " + diag_.message)
    {
    }
    const Diagnostic& diagnostic() const noexcept { return diag_; }
    const char* what() const noexcept override { return what_.c_str(); }

private:
    Diagnostic diag_;
    std::string what_;
};

} // namespace tlsql

#endif
