#pragma once

#include <string>

#include "reopt/query.hpp"

namespace reopt {

/// Parses the conjunctive query grammar:
///   SELECT <col> ("," <col>)* FROM <id> ("," <id>)* [WHERE <conj> ("AND" <conj>)*]
/// with <conj> one of: <col> = <col> (join), <col> = <literal>,
/// <col> <op> <literal> for op in {<,<=,>,>=}, <col> BETWEEN <lit> AND <lit>,
/// <col> = $<param>, or <udfname>(<id>). <col> is <id>.<id>; literals are
/// 64-bit integers and double-quoted strings. Keywords are case-insensitive.
/// Syntax errors report position and offending token.
Query parse_query(const std::string &text);

}  // namespace reopt
