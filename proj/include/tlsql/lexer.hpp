#ifndef TLSQL_LEXER_HPP
#define TLSQL_LEXER_HPP

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlsql/diagnostic.hpp"

namespace tlsql {

enum class TokenKind : std::uint8_t {
    keyword,
    identifier,
    int_literal,
    float_literal,
    string_literal,
    op,
    punct,
    eof,
};

enum class Keyword : std::uint8_t {
    PREDICT,
    VALUE,
    TRAIN,
    WITH,
    VALIDATE,
    FROM,
    WHERE,
    AND,
    OR,
    NOT,
    CLF,
    REG,
};

inline constexpr std::array<std::string_view, 12> keyword_names{
    "PREDICT", "VALUE", "TRAIN", "WITH", "VALIDATE", "FROM",
    "WHERE",   "AND",   "OR",    "NOT",  "CLF",      "REG",
};

constexpr std::string_view name_of(Keyword k) { return keyword_names[static_cast<std::size_t>(k)]; }

/// Case-insensitive keyword lookup.
inline std::optional<Keyword> lookup_keyword(std::string_view word)
{
    for (std::size_t i = 0; i < keyword_names.size(); ++i) {
        const auto name = keyword_names[i];
        if (name.size() != word.size()) continue;
        bool same = true;
        for (std::size_t j = 0; j < word.size() && same; ++j)
            same = std::toupper(static_cast<unsigned char>(word[j])) == name[j];
        if (same) return static_cast<Keyword>(i);
    }
    return std::nullopt;
}

struct Token {
    TokenKind kind = TokenKind::eof;
    // Original text, except string literals which hold the unquoted,
    // unescaped content.
    std::string lexeme;
    std::optional<Keyword> keyword;
    SourcePos pos;

    bool is(Keyword k) const { return keyword == k; }
    bool is_punct(std::string_view p) const { return kind == TokenKind::punct && lexeme == p; }

    friend bool operator==(const Token&, const Token&) = default;
};

/// Human-readable token description used in diagnostics.
inline std::string describe(const Token& t)
{
    switch (t.kind) {
    case TokenKind::keyword: return std::string(name_of(*t.keyword));
    case TokenKind::identifier: return "identifier '" + t.lexeme + "'";
    case TokenKind::int_literal: return "integer " + t.lexeme;
    case TokenKind::float_literal: return "number " + t.lexeme;
    case TokenKind::string_literal: return "string literal";
    case TokenKind::op:
    case TokenKind::punct: return "'" + t.lexeme + "'";
    case TokenKind::eof: return "end of input";
    }
    return "token";
}

/// Quotes `text` as a single-quoted SQL string, doubling embedded quotes.
inline std::string quote_string(std::string_view text)
{
    std::string out = "'";
    for (char c : text) {
        if (c == '\'') out += '\'';
        out += c;
    }
    out += '\'';
    return out;
}

namespace detail {

class Scanner {
public:
    explicit Scanner(std::string_view src) : src_(src) {}

    Result<std::vector<Token>> run()
    {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            const SourcePos start = pos_;
            if (at_end()) {
                out.push_back(Token{TokenKind::eof, "", std::nullopt, start});
                return out;
            }
            const char c = peek();
            if (is_ident_start(c)) {
                out.push_back(word(start));
            }
            else if (is_digit(c)) {
                out.push_back(number(start));
            }
            else if (c == '\'') {
                auto tok = string_literal(start);
                if (!tok) return tok.error();
                out.push_back(std::move(tok).value());
            }
            else if (auto tok = symbol(start)) {
                out.push_back(std::move(*tok));
            }
            else {
                return invalid_char(start);
            }
        }
    }

private:
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_ident_start(char c)
    {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

    bool at_end() const { return pos_.offset >= src_.size(); }
    char peek(std::size_t ahead = 0) const
    {
        const auto i = pos_.offset + ahead;
        return i < src_.size() ? src_[i] : '\0';
    }

    // Columns count characters: UTF-8 continuation bytes do not advance them.
    void advance()
    {
        const auto c = static_cast<unsigned char>(src_[pos_.offset++]);
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        }
        else if ((c & 0xC0) != 0x80) {
            ++pos_.column;
        }
    }

    void skip_trivia()
    {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                advance();
            }
            else if (c == '-' && peek(1) == '-') {
                while (!at_end() && peek() != '\n') advance();
            }
            else {
                return;
            }
        }
    }

    std::string_view slice_from(const SourcePos& start) const
    {
        return src_.substr(start.offset, pos_.offset - start.offset);
    }

    Token word(const SourcePos& start)
    {
        while (!at_end() && is_ident_char(peek())) advance();
        std::string text(slice_from(start));
        if (auto kw = lookup_keyword(text)) return Token{TokenKind::keyword, std::move(text), kw, start};
        return Token{TokenKind::identifier, std::move(text), std::nullopt, start};
    }

    Token number(const SourcePos& start)
    {
        while (!at_end() && is_digit(peek())) advance();
        auto kind = TokenKind::int_literal;
        if (peek() == '.' && is_digit(peek(1))) {
            advance();
            while (!at_end() && is_digit(peek())) advance();
            kind = TokenKind::float_literal;
        }
        return Token{kind, std::string(slice_from(start)), std::nullopt, start};
    }

    Result<Token> string_literal(const SourcePos& start)
    {
        advance(); // opening quote
        std::string content;
        for (;;) {
            if (at_end()) {
                return Diagnostic{Code::unterminated_string, start, "unterminated string literal", {}, {}};
            }
            const char c = peek();
            advance();
            if (c != '\'') {
                content += c;
            }
            else if (peek() == '\'') {
                advance();
                content += '\'';
            }
            else {
                break;
            }
        }
        return Token{TokenKind::string_literal, std::move(content), std::nullopt, start};
    }

    std::optional<Token> symbol(const SourcePos& start)
    {
        const char c = peek();
        const char n = peek(1);
        std::size_t len = 0;
        auto kind = TokenKind::op;
        switch (c) {
        case '=': len = 1; break;
        case '!': len = n == '=' ? 2 : 0; break;
        case '<': len = (n == '=' || n == '>') ? 2 : 1; break;
        case '>': len = n == '=' ? 2 : 1; break;
        case '(':
        case ')':
        case ',':
        case '.':
        case ';':
        case '-':
            len = 1;
            kind = TokenKind::punct;
            break;
        default: break;
        }
        if (len == 0) return std::nullopt;
        for (std::size_t i = 0; i < len; ++i) advance();
        return Token{kind, std::string(slice_from(start)), std::nullopt, start};
    }

    Diagnostic invalid_char(const SourcePos& start) const
    {
        const auto c = static_cast<unsigned char>(peek());
        std::string shown;
        if (c >= 0x20 && c < 0x7F) {
            shown = "'" + std::string(1, static_cast<char>(c)) + "'";
        }
        else {
            static constexpr char hex[] = "0123456789ABCDEF";
            shown = "byte 0x";
            shown += hex[c >> 4];
            shown += hex[c & 0xF];
        }
        return Diagnostic{Code::invalid_char, start, "invalid character " + shown, {}, {}};
    }

    std::string_view src_;
    SourcePos pos_;
};

} // namespace detail

/// Splits TLSQL source into tokens. The stream always ends with one EOF token.
inline Result<std::vector<Token>> tokenize(std::string_view source)
{
    return detail::Scanner(source).run();
}

} // namespace tlsql

#endif
