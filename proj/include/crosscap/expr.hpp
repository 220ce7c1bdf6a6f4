#pragma once
#include <memory>
#include <string>
#include <vector>

#include "crosscap/jet.hpp"

namespace crosscap {

// Tiny expression language for scalar fields: literals, named variables,
// + - * / ^, unary minus, and sin/cos/exp/sqrt.  Deliberately no
// conditionals or user functions; everything stays total over jets.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ExprFunc { Sin, Cos, Exp, Sqrt };

struct Expr {
    enum class Kind { Number, Var, Unary, Binary, Call };

    Kind kind;
    double number = 0.0;   // Number
    int var = 0;           // Var: index into the declared variable set
    char op = 0;           // Binary: one of + - * / ^ ; Unary is always '-'
    ExprFunc func = ExprFunc::Sin;
    ExprPtr lhs, rhs;      // Binary children; Unary/Call operand in lhs

    static ExprPtr make_number(double x);
    static ExprPtr make_var(int index);
    static ExprPtr make_unary(ExprPtr operand);
    static ExprPtr make_binary(char op, ExprPtr l, ExprPtr r);
    static ExprPtr make_call(ExprFunc f, ExprPtr operand);
};

// Exponent literals this close to an integer are evaluated as integer powers
// (keeps even powers of sign-changing bases inside the jet domain).
inline constexpr double kIntegerExponentTol = 1e-9;

// Parses with precedence ^ > unary minus > * / > + -, with ^ right
// associative.  Unknown identifiers (anything outside allowed_vars and the
// function names) are reported with their byte offset.
ExprPtr parse(const std::string& text, const std::vector<std::string>& allowed_vars);

std::string pretty_print(const Expr& e);
std::string pretty_print(const ExprPtr& e);

// Evaluation over jets; `vars` supplies one jet per declared variable, all
// with the same base/order.  Domain failures are rethrown annotated with the
// offending subexpression.
Jet2 eval_jet(const ExprPtr& e, const std::vector<Jet2>& vars);
Jet1 eval_jet(const ExprPtr& e, const std::vector<Jet1>& vars);

double eval_scalar(const ExprPtr& e, const std::vector<double>& vars);

// Convenience wrappers for the two variable contexts.
Jet2 eval_jet_uv(const ExprPtr& e, Vec2 base, int order);
Jet1 eval_jet_t(const ExprPtr& e, double base, int order);

} // namespace crosscap
