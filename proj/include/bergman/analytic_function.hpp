#pragma once

#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bergman/geometry.hpp"

namespace bergman {

class AnalyticFunction;

namespace node {
struct Constant {
  complex value;
};
/// c0 + <z, w>
struct Affine {
  complex c0;
  CPoint w;
};
/// (1 - <z, a>)^{-gamma}, principal branch.
struct KernelPower {
  CPoint center;
  double gamma;
};
struct Sum {
  std::vector<AnalyticFunction> terms;
};
struct Product {
  std::vector<AnalyticFunction> factors;
};
struct Scaled {
  complex factor;
  std::shared_ptr<const AnalyticFunction> arg;
};
struct IntPower {
  std::shared_ptr<const AnalyticFunction> arg;
  int exponent;
};
/// arg evaluated at phi(z).
struct Composed {
  std::shared_ptr<const AnalyticFunction> arg;
  Automorphism phi;
};
}  // namespace node

/// Immutable expression tree of holomorphic functions on the ball. Copies
/// share structure; evaluation walks a flattened program built on first use
/// in which shared subtrees are computed once per point.
class AnalyticFunction {
 public:
  using Node = std::variant<node::Constant, node::Affine, node::KernelPower, node::Sum,
                            node::Product, node::Scaled, node::IntPower, node::Composed>;

  AnalyticFunction();  // the zero function

  static AnalyticFunction constant(complex c);
  static AnalyticFunction affine(complex c0, CPoint w);
  static AnalyticFunction kernel_power(CPoint a, double gamma);
  static AnalyticFunction sum(std::vector<AnalyticFunction> terms);
  static AnalyticFunction product(std::vector<AnalyticFunction> factors);
  static AnalyticFunction scaled(complex factor, const AnalyticFunction& f);
  static AnalyticFunction int_power(const AnalyticFunction& f, int exponent);
  static AnalyticFunction composed(const AnalyticFunction& f, Automorphism phi);

  /// Evaluates at an interior point.
  complex operator()(const CPoint& z) const;
  /// Same without the interior check; valid on the closed ball as long as
  /// every kernel center is interior.
  complex eval_unchecked(const CPoint& z) const;

  const Node& node() const { return *node_; }
  /// 0 if the expression involves no points (dimension free).
  std::size_t dim() const { return dim_; }
  /// Number of distinct nodes.
  std::size_t size() const;
  /// Kernel centers and affine directions, pulled back through compositions.
  std::vector<CPoint> hint_points() const;

  nlohmann::json to_json() const;
  static AnalyticFunction from_json(const nlohmann::json& j);

  friend AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
    return sum({a, b});
  }
  friend AnalyticFunction operator-(const AnalyticFunction& a, const AnalyticFunction& b) {
    return sum({a, scaled(-1.0, b)});
  }
  friend AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b) {
    return product({a, b});
  }
  friend AnalyticFunction operator*(complex s, const AnalyticFunction& f) { return scaled(s, f); }

 private:
  struct Program;
  explicit AnalyticFunction(Node n);
  const Program& program() const;

  std::shared_ptr<const Node> node_;
  std::size_t dim_ = 0;
  struct Compiled {
    std::once_flag once;
    std::shared_ptr<const Program> prog;
  };
  std::shared_ptr<Compiled> compiled_;
};

/// (1 - <z, a>)^{-N}; the constant 1 when N = 0 or a = 0.
AnalyticFunction kernel_fn(double N, const CPoint& a);

nlohmann::json point_to_json(const CPoint& z);
CPoint point_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(complex c);
complex complex_from_json(const nlohmann::json& j);
nlohmann::json automorphism_to_json(const Automorphism& phi);
Automorphism automorphism_from_json(const nlohmann::json& j);

}  // namespace bergman
