#include "kreinreg/funcrep.hpp"

#include <array>
#include <cmath>

#include "kreinreg/errors.hpp"

namespace kreinreg {

double factorial(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
    return t;
  }();
  if (n < 0 || n > 170) throw IndexOutOfRange("factorial argument " + std::to_string(n));
  return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  // r * (n-k+i) is always divisible by i, so the division stays exact
  // while the value fits in the 53-bit mantissa.
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double pow_int(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

namespace {

class SumNode;

std::vector<double> zero_vector(int order) {
  return std::vector<double>(static_cast<std::size_t>(order) + 1, 0.0);
}

// ---------------------------------------------------------------------------
// sum
// ---------------------------------------------------------------------------

class SumNode final : public Node {
 public:
  explicit SumNode(std::vector<std::pair<double, NodePtr>> children)
      : Node(hull_of(children)), children_(std::move(children)) {}

  NodeKind kind() const override { return NodeKind::sum; }

  const std::vector<std::pair<double, NodePtr>>& children() const {
    return children_;
  }

  double eval(double x) const override {
    double acc = 0.0;
    for (const auto& [c, child] : children_) acc += c * child->eval(x);
    return acc;
  }

  std::vector<double> jet(int order) const override {
    auto out = zero_vector(order);
    for (const auto& [c, child] : children_) {
      auto cj = child->jet(order);
      for (int k = 0; k <= order; ++k) out[k] += c * cj[k];
    }
    return out;
  }

  NodePtr derivative() const override {
    std::vector<std::pair<double, NodePtr>> d;
    d.reserve(children_.size());
    for (const auto& [c, child] : children_) d.emplace_back(c, child->derivative());
    return std::make_shared<SumNode>(std::move(d));
  }

  std::vector<double> taylor_at(double x0, int order) const override {
    auto out = zero_vector(order);
    for (const auto& [c, child] : children_) {
      auto ct = child->taylor_at(x0, order);
      for (int k = 0; k <= order; ++k) out[k] += c * ct[k];
    }
    return out;
  }

  bool equals(const Node& other) const override {
    if (other.kind() != NodeKind::sum) return false;
    const auto& o = static_cast<const SumNode&>(other);
    if (children_.size() != o.children_.size()) return false;
    for (std::size_t i = 0; i < children_.size(); ++i) {
      if (children_[i].first != o.children_[i].first) return false;
      const Node* a = children_[i].second.get();
      const Node* b = o.children_[i].second.get();
      if (a != b && !a->equals(*b)) return false;
    }
    return true;
  }

 private:
  static Interval hull_of(const std::vector<std::pair<double, NodePtr>>& ch) {
    Interval h = Interval::empty();
    for (const auto& [c, child] : ch) h = Interval::hull(h, child->support());
    return h;
  }

  std::vector<std::pair<double, NodePtr>> children_;
};

// ---------------------------------------------------------------------------
// translate
// ---------------------------------------------------------------------------

class TranslateNode final : public Node {
 public:
  TranslateNode(double shift, NodePtr child)
      : Node(child->support().shifted(shift)),
        shift_(shift),
        child_(std::move(child)) {}

  NodeKind kind() const override { return NodeKind::translate; }
  double shift() const { return shift_; }
  const NodePtr& child() const { return child_; }

  double eval(double x) const override { return child_->eval(x - shift_); }

  std::vector<double> jet(int order) const override {
    // Support away from the origin forces an exactly zero jet; otherwise
    // the child must be locally polynomial around -shift.
    if (!support().contains(0.0)) return zero_vector(order);
    auto t = child_->taylor_at(-shift_, order);
    std::vector<double> out(t.size());
    for (int k = 0; k <= order; ++k) out[k] = factorial(k) * t[k];
    return out;
  }

  NodePtr derivative() const override {
    return std::make_shared<TranslateNode>(shift_, child_->derivative());
  }

  std::vector<double> taylor_at(double x0, int order) const override {
    return child_->taylor_at(x0 - shift_, order);
  }

  bool equals(const Node& other) const override {
    if (other.kind() != NodeKind::translate) return false;
    const auto& o = static_cast<const TranslateNode&>(other);
    return shift_ == o.shift_ &&
           (child_.get() == o.child_.get() || child_->equals(*o.child_));
  }

 private:
  double shift_;
  NodePtr child_;
};

// ---------------------------------------------------------------------------
// dilate
// ---------------------------------------------------------------------------

class DilateNode final : public Node {
 public:
  DilateNode(double lambda, NodePtr child)
      : Node(child->support().scaled(lambda)),
        lambda_(lambda),
        child_(std::move(child)) {}

  NodeKind kind() const override { return NodeKind::dilate; }

  double eval(double x) const override { return child_->eval(x / lambda_); }

  std::vector<double> jet(int order) const override {
    auto cj = child_->jet(order);
    double scale = 1.0;
    for (int k = 1; k <= order; ++k) {
      scale /= lambda_;
      cj[k] *= scale;
    }
    return cj;
  }

  NodePtr derivative() const override {
    auto inner = std::make_shared<DilateNode>(lambda_, child_->derivative());
    std::vector<std::pair<double, NodePtr>> term;
    term.emplace_back(1.0 / lambda_, inner);
    return std::make_shared<SumNode>(std::move(term));
  }

  std::vector<double> taylor_at(double x0, int order) const override {
    auto t = child_->taylor_at(x0 / lambda_, order);
    double scale = 1.0;
    for (int k = 1; k <= order; ++k) {
      scale /= lambda_;
      t[k] *= scale;
    }
    return t;
  }

  bool equals(const Node& other) const override {
    if (other.kind() != NodeKind::dilate) return false;
    const auto& o = static_cast<const DilateNode&>(other);
    return lambda_ == o.lambda_ &&
           (child_.get() == o.child_.get() || child_->equals(*o.child_));
  }

 private:
  double lambda_;
  NodePtr child_;
};

// ---------------------------------------------------------------------------
// monomial multiply: x^d / d! * child
// ---------------------------------------------------------------------------

class MonomialNode final : public Node {
 public:
  MonomialNode(int degree, NodePtr child)
      : Node(child->support()), degree_(degree), child_(std::move(child)) {}

  NodeKind kind() const override { return NodeKind::monomial; }
  int degree() const { return degree_; }
  const NodePtr& child() const { return child_; }

  double eval(double x) const override {
    return pow_int(x, degree_) / factorial(degree_) * child_->eval(x);
  }

  std::vector<double> jet(int order) const override {
    auto out = zero_vector(order);
    if (order < degree_) return out;
    auto cj = child_->jet(order - degree_);
    for (int k = degree_; k <= order; ++k)
      out[k] = binomial(k, degree_) * cj[k - degree_];
    return out;
  }

  NodePtr derivative() const override {
    std::vector<std::pair<double, NodePtr>> terms;
    if (degree_ == 1) {
      terms.emplace_back(1.0, child_);
    } else {
      terms.emplace_back(1.0, std::make_shared<MonomialNode>(degree_ - 1, child_));
    }
    terms.emplace_back(1.0, std::make_shared<MonomialNode>(degree_, child_->derivative()));
    return std::make_shared<SumNode>(std::move(terms));
  }

  std::vector<double> taylor_at(double x0, int order) const override {
    auto ct = child_->taylor_at(x0, order);
    // multiply by (x0 + u)^d / d! expanded in u
    auto out = zero_vector(order);
    for (int m = 0; m <= std::min(order, degree_); ++m) {
      double pm = binomial(degree_, m) * pow_int(x0, degree_ - m) / factorial(degree_);
      for (int k = 0; k + m <= order; ++k) out[k + m] += pm * ct[k];
    }
    return out;
  }

  bool equals(const Node& other) const override {
    if (other.kind() != NodeKind::monomial) return false;
    const auto& o = static_cast<const MonomialNode&>(other);
    return degree_ == o.degree_ &&
           (child_.get() == o.child_.get() || child_->equals(*o.child_));
  }

 private:
  int degree_;
  NodePtr child_;
};

const NodePtr& zero_node() {
  static const NodePtr z =
      std::make_shared<SumNode>(std::vector<std::pair<double, NodePtr>>{});
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// FunctionRep and combinators
// ---------------------------------------------------------------------------

FunctionRep::FunctionRep() : node_(zero_node()) {}

FunctionRep::FunctionRep(NodePtr node) : node_(std::move(node)) {
  if (!node_) node_ = zero_node();
}

bool FunctionRep::is_zero() const {
  if (node_->kind() != NodeKind::sum) return false;
  return static_cast<const SumNode&>(*node_).children().empty();
}

FunctionRep translate(const FunctionRep& f, double shift) {
  if (shift == 0.0 || f.is_zero()) return f;
  return FunctionRep(std::make_shared<TranslateNode>(shift, f.node()));
}

FunctionRep dilate(const FunctionRep& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw UnsupportedNode("dilate requires a positive finite factor");
  if (lambda == 1.0 || f.is_zero()) return f;
  return FunctionRep(std::make_shared<DilateNode>(lambda, f.node()));
}

FunctionRep monomial_multiply(const FunctionRep& f, int degree) {
  if (degree < 0) throw IndexOutOfRange("monomial degree must be nonnegative");
  if (degree == 0 || f.is_zero()) return f;
  return FunctionRep(std::make_shared<MonomialNode>(degree, f.node()));
}

FunctionRep scalar_multiply(const FunctionRep& f, double a) {
  return combine({{a, f}});
}

FunctionRep combine(const std::vector<std::pair<double, FunctionRep>>& terms) {
  if (terms.empty()) throw EmptyCombination("combine requires at least one term");

  // Normal form: splice nested sums (multiplying weights through), then
  // merge structurally identical children and drop exact-zero weights.
  // This is what lets e.g. f - f collapse to the zero function.
  std::vector<std::pair<double, NodePtr>> flat;
  auto splice = [&flat](auto&& self, double coef, const NodePtr& node) -> void {
    if (node->kind() == NodeKind::sum) {
      for (const auto& [c, child] : static_cast<const SumNode&>(*node).children())
        self(self, coef * c, child);
      return;
    }
    flat.emplace_back(coef, node);
  };
  for (const auto& [c, f] : terms) splice(splice, c, f.node());

  std::vector<std::pair<double, NodePtr>> merged;
  for (const auto& [c, node] : flat) {
    bool found = false;
    for (auto& [mc, mnode] : merged) {
      if (mnode.get() == node.get() || mnode->equals(*node)) {
        mc += c;
        found = true;
        break;
      }
    }
    if (!found) merged.emplace_back(c, node);
  }
  std::erase_if(merged, [](const auto& t) { return t.first == 0.0; });

  if (merged.empty()) return FunctionRep();
  if (merged.size() == 1 && merged[0].first == 1.0)
    return FunctionRep(merged[0].second);
  return FunctionRep(std::make_shared<SumNode>(std::move(merged)));
}

std::vector<std::pair<double, NodePtr>> flatten(const FunctionRep& f) {
  std::vector<std::pair<double, NodePtr>> out;
  auto walk = [&out](auto&& self, double coef, const NodePtr& node) -> void {
    if (node->kind() == NodeKind::sum) {
      for (const auto& [c, child] : static_cast<const SumNode&>(*node).children())
        self(self, coef * c, child);
      return;
    }
    out.emplace_back(coef, node);
  };
  walk(walk, 1.0, f.node());
  return out;
}

}  // namespace kreinreg
