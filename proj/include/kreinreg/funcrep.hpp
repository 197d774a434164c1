#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "kreinreg/interval.hpp"

namespace kreinreg {

class Node;
using NodePtr = std::shared_ptr<const Node>;

enum class NodeKind {
  plateau,   // smooth plateau bump, possibly differentiated
  translate, // x -> x - shift
  dilate,    // x -> x / lambda
  monomial,  // multiply by x^d / d!
  scalar,    // multiply by a constant
  sum,       // finite weighted sum of children
};

// Immutable expression-tree node. Trees are built once and never mutated,
// so sharing subtrees across threads is safe. All virtual operations are
// pure (no caches).
class Node : public std::enable_shared_from_this<Node> {
 public:
  explicit Node(Interval support) : support_(support) {}
  virtual ~Node() = default;

  const Interval& support() const { return support_; }
  virtual NodeKind kind() const = 0;

  virtual double eval(double x) const = 0;

  // Derivative values f(0), f'(0), ..., f^(order)(0). The recursion keeps
  // these exact for the node algebra: plateau jets are known in closed form,
  // sums combine children with one multiply-add per entry, and monomial
  // factors contribute exact binomial coefficients.
  virtual std::vector<double> jet(int order) const = 0;

  // New tree representing the derivative.
  virtual NodePtr derivative() const = 0;

  // Taylor coefficients around x0 (length order+1, coefficient of (x-x0)^k)
  // where the tree is locally polynomial. Throws UnsupportedNode when x0
  // falls strictly inside a plateau transition band.
  virtual std::vector<double> taylor_at(double x0, int order) const = 0;

  // Structural equality; used to cancel identical terms in combine().
  virtual bool equals(const Node& other) const = 0;

 private:
  Interval support_;
};

// Value-type handle for an expression tree. Default-constructed handles
// denote the zero function (empty sum, empty support).
class FunctionRep {
 public:
  FunctionRep();
  explicit FunctionRep(NodePtr node);

  double eval(double x) const { return node_->eval(x); }
  std::vector<double> jet(int order) const { return node_->jet(order); }
  const Interval& support() const { return node_->support(); }
  FunctionRep derivative() const { return FunctionRep(node_->derivative()); }

  const NodePtr& node() const { return node_; }
  bool is_zero() const;  // structurally the empty sum

 private:
  NodePtr node_;
};

// --- primitive combinators ---------------------------------------------------

// f(x - shift)
FunctionRep translate(const FunctionRep& f, double shift);

// f(x / lambda), lambda > 0
FunctionRep dilate(const FunctionRep& f, double lambda);

// x^degree / degree! * f(x), degree >= 0
FunctionRep monomial_multiply(const FunctionRep& f, int degree);

// a * f(x)
FunctionRep scalar_multiply(const FunctionRep& f, double a);

// Weighted sum of terms. The input list must be nonempty
// (EmptyCombination otherwise); structurally identical terms are merged
// and zero-weight terms dropped, so a sum may collapse to the zero
// function or to a single shared child.
FunctionRep combine(const std::vector<std::pair<double, FunctionRep>>& terms);

// Unfolds nested sums and scalar factors into a flat list of weighted
// atoms (nodes that are neither sums nor scalar factors). The zero
// function flattens to an empty list.
std::vector<std::pair<double, NodePtr>> flatten(const FunctionRep& f);

// Exact integer helpers shared by the tree algebra.
double factorial(int n);        // n <= 170
double binomial(int n, int k);  // exact while representable
double pow_int(double x, int n);

}  // namespace kreinreg
