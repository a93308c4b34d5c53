#pragma once

#include "qcause/query.hpp"
#include "qcause/relational.hpp"

#include <string>

namespace qcause {

struct ParsedQuery {
  QueryAst ast;
  Binding binding; // values from the BIND line, empty when absent
};

// Parses a query file: an optional `FO:` / `DATALOG:` / `AGG:` header line,
// the query text (may span lines), and an optional `BIND x=a, y=b` line for
// open FO queries. Without a header the kind is detected from the text.
//
// FO:      EXISTS x, y . R(x,y) AND NOT S(y)     (also `=` atoms, parentheses)
// DATALOG: goal :- path(a,b). path(X,Y) :- E(X,Y). ...
// AGG:     SUM R.A >= 500 | SUM R.A | AVG R.A
//
// Identifiers are variables when bound by EXISTS (FO), declared in BIND (FO),
// or written with an uppercase initial (Datalog); everything else is a
// constant. Relations and arities are validated against the schema.
ParsedQuery parse_query(const std::string &text, const Schema &schema);

} // namespace qcause
