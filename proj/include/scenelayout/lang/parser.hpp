#pragma once

#include <string_view>

#include "scenelayout/lang/ast.hpp"

namespace scenelayout::lang {

// Grammar:
//
//   program  := stmt*
//   stmt     := simple (";" simple)* [";"] NEWLINE | for
//   simple   := IDENT "=" expr
//             | IDENT "=" "group" "(" STRING ")"
//             | IDENT "." ("min"|"max"|"center") "." ("x"|"y"|"z") "=" expr
//             | IDENT "." "facing" "=" facing
//   facing   := CARDINAL | IDENT | "rotate" "(" IDENT "," ("90"|"180"|"270") ")"
//   for      := "for" IDENT "," IDENT "in" ("enumerate"|"enum") "(" IDENT ")" ":" suite
//   suite    := simple (";" simple)* NEWLINE | NEWLINE INDENT stmt+ DEDENT
//   expr     := term (("+"|"-") term)*
//   term     := unary (("*"|"/") unary)*
//   unary    := "-" unary | atom
//   atom     := NUMBER | IDENT | IDENT "." attr "." axis | "(" expr ")"
//
// `attr` in reads also accepts "size". A minus applied directly to a
// number literal folds into a negative literal. `#` starts a comment,
// a trailing backslash joins lines, and newlines inside parentheses are
// ignored.
Program parse(std::string_view source);

}  // namespace scenelayout::lang
