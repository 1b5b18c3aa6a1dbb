#pragma once

#include "sumset/set_model.hpp"

#include <map>
#include <string>
#include <vector>

namespace sumset {

// Parse tree of the declarative value grammar shared by set expressions and
// experiment configs:
//
//   value  := number | ident | ident '(' args ')' | '(' args ')'
//           | '{' args '}' | '[' args ']' ('x' '[' args ']')* | value ':' value
//   number := [-+]digits[.digits][e[-+]digits][/digits]
struct Ast {
    enum class Type { Number, Ident, Call, Tuple, Brace, Bracket, WindowProduct, Pair };
    Type type;
    std::string text; // number literal, identifier or callee
    std::vector<Ast> kids;
    int line = 1;
    int column = 1;
};

Ast parse_ast(const std::string& text, int line = 1, int column = 1);
std::string describe(const Ast& a);

using SetTable = std::map<std::string, DescribedSet>;

// Interpretation of a parse tree in the context of a group.
DescribedSet ast_to_set(const Ast& a, const GroupSpec& g, const SetTable* names = nullptr);
Elem ast_to_elem(const Ast& a, const GroupSpec& g);
ElemSet ast_to_elems(const Ast& a, const GroupSpec& g);
Window ast_to_window(const Ast& a, const GroupSpec& g);
Rational ast_to_rational(const Ast& a);
Int ast_to_int(const Ast& a);

DescribedSet parse_set(const std::string& text, const GroupSpec& g, const SetTable* names = nullptr);
Elem parse_elem(const std::string& text, const GroupSpec& g);
Window parse_window(const std::string& text, const GroupSpec& g);

} // namespace sumset
