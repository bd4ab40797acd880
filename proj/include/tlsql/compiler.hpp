#ifndef TLSQL_COMPILER_HPP
#define TLSQL_COMPILER_HPP

#include <string>
#include <string_view>

#include "tlsql/codegen.hpp"
#include "tlsql/diagnostic.hpp"
#include "tlsql/manifest.hpp"
#include "tlsql/parser.hpp"
#include "tlsql/semantics.hpp"

namespace tlsql {

/// Full pipeline: tokenize, parse, resolve, generate.
inline Result<ConversionResult> convert(std::string_view source, Dialect dialect = Dialect::ansi)
{
    auto program = parse(source);
    if (!program) return program.error();
    auto plan = resolve(*program);
    if (!plan) return plan.error();
    return generate(*plan, dialect);
}

/// Like convert, but throws CompileError on the first error diagnostic.
inline ConversionResult convert_or_throw(std::string_view source, Dialect dialect = Dialect::ansi)
{
    auto result = convert(source, dialect);
    if (!result) throw CompileError(result.error());
    return std::move(result).value();
}

namespace detail {

inline std::string_view line_at(std::string_view source, std::size_t offset)
{
    offset = std::min(offset, source.size());
    const auto begin = source.rfind('\n', offset == 0 ? std::string_view::npos : offset - 1);
    const std::size_t start = begin == std::string_view::npos ? 0 : begin + 1;
    const auto end = source.find('\n', start);
    auto line = source.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

// Number of characters to underline starting at `offset`.
inline std::size_t span_length(std::string_view source, std::size_t offset)
{
    if (offset >= source.size()) return 1;
    auto word = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    };
    std::size_t i = offset;
    if (word(source[i])) {
        while (i < source.size() && word(source[i])) ++i;
        return i - offset;
    }
    return 1;
}

} // namespace detail

/// `file:line:col: error[E002]: message`, then the source line and a caret
/// underline. Ends with a newline.
inline std::string format_diagnostic(std::string_view file, std::string_view source, const Diagnostic& d)
{
    std::string out = std::string(file) + ":" + std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) +
                      ": " + (d.is_error() ? "error" : "warning") + "[" + code_name(d.code) + "]: " + d.message +
                      "\n";
    const std::string_view line = detail::line_at(source, d.pos.offset);
    out += "    ";
    out += line;
    out += "\n    ";
    // Pad with the line's own tabs so the caret lines up.
    std::uint32_t col = 1;
    for (std::size_t i = 0; i < line.size() && col < d.pos.column; ++i) {
        const auto c = static_cast<unsigned char>(line[i]);
        if ((c & 0xC0) == 0x80) continue;
        out += c == '\t' ? '\t' : ' ';
        ++col;
    }
    out += '^';
    out.append(detail::span_length(source, d.pos.offset) - 1, '~');
    out += '\n';
    return out;
}

} // namespace tlsql

#endif
