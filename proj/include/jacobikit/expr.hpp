#ifndef JACOBIKIT_EXPR_HPP
#define JACOBIKIT_EXPR_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jacobikit/chart.hpp"
#include "jacobikit/rational.hpp"

namespace jacobikit {

// Closed-form scalar expressions over a chart: rational constants,
// coordinates, sums, products, integer powers, quotients and the
// unary functions exp, log, sin, cos. Nodes are immutable and shared;
// every operation on them is pure, so expressions may be evaluated
// concurrently from any number of threads.

enum class ExprKind { Constant, Coordinate, Sum, Product, Power, Quotient, Call };
enum class UnaryFn { Exp, Log, Sin, Cos };

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
public:
  ExprKind kind;
  ChartPtr chart;
  Rational value;           // Constant
  int coord = -1;           // Coordinate
  std::vector<Expr> kids;   // Sum/Product terms; Quotient {num, den}; Power {base}; Call {arg}
  long exponent = 0;        // Power
  UnaryFn fn = UnaryFn::Exp;  // Call
};

// Node factories. They fold locally (flatten nested sums/products,
// absorb zeros and ones, fold constant arithmetic, fold constant
// denominators into scalar factors) but perform no general
// simplification.
Expr make_constant(ChartPtr chart, Rational value);
Expr make_coordinate(ChartPtr chart, int index);
Expr make_sum(std::vector<Expr> terms);
Expr make_product(std::vector<Expr> factors);
Expr make_power(Expr base, long exponent);
Expr make_quotient(Expr num, Expr den);
Expr make_call(UnaryFn fn, Expr arg);

Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr negate(Expr a);
Expr scale(const Rational& c, Expr a);

bool is_constant(const Expr& e);                       // any rational constant
bool is_constant_value(const Expr& e, const Rational& v);
inline bool is_zero_constant(const Expr& e) { return is_constant_value(e, Rational(0)); }

// Infix text form; parse round-trips what print emits.
std::string to_string(const Expr& e);
Expr parse_expr(std::string_view text, ChartPtr chart);

// Exact partial derivative with respect to coordinate `index`.
Expr differentiate(const Expr& e, int index);

// IEEE double value at a point; throws DomainError on singular input.
double evaluate(const Expr& e, std::span<const double> point);

// Same, additionally recording the largest |value| over all
// subexpressions. Used for relative tolerances in sampled checks.
double evaluate_tracked(const Expr& e, std::span<const double> point, double& max_abs);

// Replace coordinate i of e's chart by images[i]; the images live on
// a common target chart and the result lives there too.
Expr substitute(const Expr& e, const std::vector<Expr>& images);

}  // namespace jacobikit

#endif
