#pragma once

#include "crinv/series.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace crinv {

// Grammar (EBNF):
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { "*" unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" integer ] ;
//   primary = integer [ "/" integer ] | identifier | call | "(" expr ")" ;
//   call    = ("Re" | "Im" | "conj" | "abs2") "(" expr ")" | "flat" "(" balanced text ")" ;
// Identifiers are z1, z2, ..., w and the imaginary unit i.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { number, imaginary_unit, variable, neg, add, sub, mul, pow, call };
    Kind kind = Kind::number;
    mpq_class value;   // number
    std::string name;  // variable, function, or the raw text of flat(...)
    int exponent = 0;  // pow
    std::vector<ExprPtr> args;
};

bool same_ast(const Expr& a, const Expr& b);
std::string print(const Expr& e);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

ExprPtr parse_expression(const std::string& text);

// Largest k with zk used, 0 if none.
int max_z_index(const Expr& e);

// Complexified context z1..z_{n-1}, w of C^n.
CtxPtr ambient_context(int n);

// Elaborates into ctx; variables resolve by name, conj needs conjugate slots.
// flat(...) becomes 0 and adds a note.
Series elaborate(const Expr& e, const CtxPtr& ctx, std::vector<std::string>* notes = nullptr);

struct DefiningExpression {
    std::string source;
    ExprPtr ast;
    int dimension = 0;
    Series series;
    std::vector<std::string> notes;
};

// n = 0 infers the dimension from the highest zk (at least 2).  Throws
// ParseError on syntax errors and std::invalid_argument on unknown names or
// non-real expressions.
DefiningExpression parse_defining_function(const std::string& text, int n = 0);

// Parses an expression into an existing context without the reality check.
Series parse_series(const std::string& text, const CtxPtr& ctx);

// Comma-separated list of expressions (commas inside parentheses are kept).
std::vector<std::string> split_list(const std::string& text, char sep = ',');

// A constant expression such as "1/2", "-3*i" or "1 + 2*i".
Gaussian parse_constant(const std::string& text);

}  // namespace crinv
