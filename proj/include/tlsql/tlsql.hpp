#ifndef TLSQL_TLSQL_HPP
#define TLSQL_TLSQL_HPP

// Compiler only. The executor (tlsql/executor.hpp) needs SQLite and is
// included separately.
#include "tlsql/codegen.hpp"
#include "tlsql/compiler.hpp"
#include "tlsql/lexer.hpp"
#include "tlsql/manifest.hpp"
#include "tlsql/parser.hpp"
#include "tlsql/render.hpp"
#include "tlsql/semantics.hpp"

#endif
