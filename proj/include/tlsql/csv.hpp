#ifndef TLSQL_CSV_HPP
#define TLSQL_CSV_HPP

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace tlsql::csv {

// RFC 4180 with `\n` record separators. NULL is written as an empty field.

inline bool needs_quotes(std::string_view field)
{
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_field(std::ostream& os, std::string_view field)
{
    if (!needs_quotes(field)) {
        os << field;
        return;
    }
    os << '"';
    for (char c : field) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

inline void write_record(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) os << ',';
        write_field(os, fields[i]);
    }
    os << '\n';
}

inline void write_record(std::ostream& os, const std::vector<std::optional<std::string>>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) os << ',';
        if (fields[i]) write_field(os, *fields[i]);
    }
    os << '\n';
}

} // namespace tlsql::csv

#endif
