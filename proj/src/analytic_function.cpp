#include "bergman/analytic_function.hpp"

#include <cmath>
#include <unordered_map>

namespace bergman {

using nlohmann::json;

struct AnalyticFunction::Program {
  enum class Op { constant, affine, kernel, sum, product, scaled, int_power, composed };
  struct Instr {
    Op op;
    complex c{};
    CPoint p;
    double gamma = 0.0;
    int k = 0;
    bool int_gamma = false;
    std::uint32_t first = 0, count = 0;
    std::shared_ptr<const AnalyticFunction> sub;
    Automorphism phi;
  };
  std::vector<Instr> code;
  std::vector<std::uint32_t> args;

  complex run(const CPoint& z) const;
};

namespace {

thread_local std::vector<complex> t_regs;

complex ipow(complex w, int k) {
  if (k == 0) return 1.0;
  const bool inv = k < 0;
  unsigned e = static_cast<unsigned>(inv ? -k : k);
  complex r = 1.0, b = w;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return inv ? 1.0 / r : r;
}

std::size_t merge_dim(std::size_t a, std::size_t b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw precondition_error("expression mixes dimensions " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

complex AnalyticFunction::Program::run(const CPoint& z) const {
  const std::size_t base = t_regs.size();
  t_regs.resize(base + code.size());
  for (std::size_t i = 0; i < code.size(); ++i) {
    const Instr& in = code[i];
    complex v;
    switch (in.op) {
      case Op::constant: v = in.c; break;
      case Op::affine: v = in.c + herm_inner(z, in.p); break;
      case Op::kernel: {
        const complex w = 1.0 - herm_inner(z, in.p);
        v = in.int_gamma ? ipow(w, -in.k) : std::exp(-in.gamma * std::log(w));
        break;
      }
      case Op::sum: {
        complex s{};
        for (std::uint32_t j = 0; j < in.count; ++j) s += t_regs[base + args[in.first + j]];
        v = s;
        break;
      }
      case Op::product: {
        complex s = 1.0;
        for (std::uint32_t j = 0; j < in.count; ++j) s *= t_regs[base + args[in.first + j]];
        v = s;
        break;
      }
      case Op::scaled: v = in.c * t_regs[base + in.first]; break;
      case Op::int_power: v = ipow(t_regs[base + in.first], in.k); break;
      case Op::composed: v = in.sub->eval_unchecked(in.phi(z)); break;
    }
    t_regs[base + i] = v;
  }
  const complex out = t_regs[base + code.size() - 1];
  t_regs.resize(base);
  return out;
}

AnalyticFunction::AnalyticFunction() : AnalyticFunction(node::Constant{0.0}) {}

AnalyticFunction::AnalyticFunction(Node n)
    : node_(std::make_shared<const Node>(std::move(n))), compiled_(std::make_shared<Compiled>()) {
  dim_ = std::visit(
      [](const auto& x) -> std::size_t {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return 0;
        } else if constexpr (std::is_same_v<T, node::Affine>) {
          return x.w.dim();
        } else if constexpr (std::is_same_v<T, node::KernelPower>) {
          return x.center.dim();
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          std::size_t d = 0;
          for (const auto& t : x.terms) d = merge_dim(d, t.dim());
          return d;
        } else if constexpr (std::is_same_v<T, node::Product>) {
          std::size_t d = 0;
          for (const auto& t : x.factors) d = merge_dim(d, t.dim());
          return d;
        } else if constexpr (std::is_same_v<T, node::Composed>) {
          return merge_dim(x.arg->dim(), x.phi.dim());
        } else {
          return x.arg->dim();
        }
      },
      *node_);
}

AnalyticFunction AnalyticFunction::constant(complex c) { return AnalyticFunction(node::Constant{c}); }

AnalyticFunction AnalyticFunction::affine(complex c0, CPoint w) {
  return AnalyticFunction(node::Affine{c0, std::move(w)});
}

AnalyticFunction AnalyticFunction::kernel_power(CPoint a, double gamma) {
  require_interior(a, "kernel center");
  if (!std::isfinite(gamma)) throw precondition_error("kernel exponent must be finite");
  return AnalyticFunction(node::KernelPower{std::move(a), gamma});
}

AnalyticFunction AnalyticFunction::sum(std::vector<AnalyticFunction> terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms.front();
  return AnalyticFunction(node::Sum{std::move(terms)});
}

AnalyticFunction AnalyticFunction::product(std::vector<AnalyticFunction> factors) {
  if (factors.empty()) return constant(1.0);
  if (factors.size() == 1) return factors.front();
  return AnalyticFunction(node::Product{std::move(factors)});
}

AnalyticFunction AnalyticFunction::scaled(complex factor, const AnalyticFunction& f) {
  return AnalyticFunction(node::Scaled{factor, std::make_shared<const AnalyticFunction>(f)});
}

AnalyticFunction AnalyticFunction::int_power(const AnalyticFunction& f, int exponent) {
  return AnalyticFunction(node::IntPower{std::make_shared<const AnalyticFunction>(f), exponent});
}

AnalyticFunction AnalyticFunction::composed(const AnalyticFunction& f, Automorphism phi) {
  if (f.dim() != 0 && f.dim() != phi.dim()) throw precondition_error("composition dimension mismatch");
  return AnalyticFunction(node::Composed{std::make_shared<const AnalyticFunction>(f), std::move(phi)});
}

const AnalyticFunction::Program& AnalyticFunction::program() const {
  std::call_once(compiled_->once, [this] {
    auto prog = std::make_shared<Program>();
    std::unordered_map<const Node*, std::uint32_t> seen;
    auto emit = [&](auto&& self, const AnalyticFunction& f) -> std::uint32_t {
      const Node* key = f.node_.get();
      if (auto it = seen.find(key); it != seen.end()) return it->second;
      Program::Instr in;
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, node::Constant>) {
              in.op = Program::Op::constant;
              in.c = x.value;
            } else if constexpr (std::is_same_v<T, node::Affine>) {
              in.op = Program::Op::affine;
              in.c = x.c0;
              in.p = x.w;
            } else if constexpr (std::is_same_v<T, node::KernelPower>) {
              in.op = Program::Op::kernel;
              in.p = x.center;
              in.gamma = x.gamma;
              const double r = std::round(x.gamma);
              in.int_gamma = r == x.gamma && std::abs(r) < 64;
              in.k = static_cast<int>(r);
            } else if constexpr (std::is_same_v<T, node::Sum> || std::is_same_v<T, node::Product>) {
              in.op = std::is_same_v<T, node::Sum> ? Program::Op::sum : Program::Op::product;
              const auto& kids = [&]() -> const std::vector<AnalyticFunction>& {
                if constexpr (std::is_same_v<T, node::Sum>) {
                  return x.terms;
                } else {
                  return x.factors;
                }
              }();
              std::vector<std::uint32_t> regs;
              regs.reserve(kids.size());
              for (const auto& k : kids) regs.push_back(self(self, k));
              in.first = static_cast<std::uint32_t>(prog->args.size());
              in.count = static_cast<std::uint32_t>(regs.size());
              prog->args.insert(prog->args.end(), regs.begin(), regs.end());
            } else if constexpr (std::is_same_v<T, node::Scaled>) {
              in.op = Program::Op::scaled;
              in.c = x.factor;
              in.first = self(self, *x.arg);
            } else if constexpr (std::is_same_v<T, node::IntPower>) {
              in.op = Program::Op::int_power;
              in.k = x.exponent;
              in.first = self(self, *x.arg);
            } else {
              in.op = Program::Op::composed;
              in.sub = x.arg;
              in.phi = x.phi;
            }
          },
          *f.node_);
      const auto idx = static_cast<std::uint32_t>(prog->code.size());
      prog->code.push_back(std::move(in));
      seen.emplace(key, idx);
      return idx;
    };
    emit(emit, *this);
    compiled_->prog = std::move(prog);
  });
  return *compiled_->prog;
}

std::size_t AnalyticFunction::size() const { return program().code.size(); }

complex AnalyticFunction::eval_unchecked(const CPoint& z) const { return program().run(z); }

complex AnalyticFunction::operator()(const CPoint& z) const {
  if (dim_ != 0 && z.dim() != dim_) throw precondition_error("evaluation point has wrong dimension");
  require_interior(z, "evaluation point");
  return eval_unchecked(z);
}

std::vector<CPoint> AnalyticFunction::hint_points() const {
  std::vector<CPoint> out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::KernelPower>) {
          out.push_back(x.center);
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          for (const auto& t : x.terms) {
            auto h = t.hint_points();
            out.insert(out.end(), h.begin(), h.end());
          }
        } else if constexpr (std::is_same_v<T, node::Product>) {
          for (const auto& t : x.factors) {
            auto h = t.hint_points();
            out.insert(out.end(), h.begin(), h.end());
          }
        } else if constexpr (std::is_same_v<T, node::Scaled> || std::is_same_v<T, node::IntPower>) {
          out = x.arg->hint_points();
        } else if constexpr (std::is_same_v<T, node::Composed>) {
          const Automorphism inv = x.phi.inverse();
          for (const auto& h : x.arg->hint_points()) {
            if (h.norm() < 1.0 - kBoundaryGuard) out.push_back(inv(h));
          }
          out.push_back(x.phi.preimage_of_origin());
        }
      },
      *node_);
  return out;
}

json complex_to_json(complex c) { return json::array({c.real(), c.imag()}); }

complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw precondition_error("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(const CPoint& z) {
  json a = json::array();
  for (std::size_t i = 0; i < z.dim(); ++i) {
    a.push_back(z[i].real());
    a.push_back(z[i].imag());
  }
  return a;
}

CPoint point_from_json(const json& j) {
  if (!j.is_array() || j.empty() || j.size() % 2 != 0) {
    throw precondition_error("points are flat [re, im, re, im, ...] arrays");
  }
  CPoint z(j.size() / 2);
  for (std::size_t i = 0; i < z.dim(); ++i) z[i] = {j[2 * i].get<double>(), j[2 * i + 1].get<double>()};
  if (!std::isfinite(z.norm_sq())) throw precondition_error("non-finite coordinate");
  return z;
}

json automorphism_to_json(const Automorphism& phi) {
  if (phi.is_identity()) return {{"identity", true}, {"n", phi.dim()}};
  json j{{"center", point_to_json(phi.center())}};
  if (phi.has_rotation()) {
    json r = json::array();
    for (complex c : phi.rotation()) r.push_back(complex_to_json(c));
    j["rotation"] = r;
  } else {
    j["rotation"] = nullptr;
  }
  return j;
}

Automorphism automorphism_from_json(const json& j) {
  if (j.value("identity", false)) return Automorphism::identity(j.at("n").get<std::size_t>());
  CPoint c = point_from_json(j.at("center"));
  if (j.contains("rotation") && !j["rotation"].is_null()) {
    std::vector<complex> r;
    for (const auto& e : j["rotation"]) r.push_back(complex_from_json(e));
    return Automorphism(std::move(c), std::move(r));
  }
  return Automorphism(std::move(c));
}

json AnalyticFunction::to_json() const {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, node::Constant>) {
          return {{"kind", "constant"}, {"value", complex_to_json(x.value)}};
        } else if constexpr (std::is_same_v<T, node::Affine>) {
          return {{"kind", "affine"}, {"c0", complex_to_json(x.c0)}, {"w", point_to_json(x.w)}};
        } else if constexpr (std::is_same_v<T, node::KernelPower>) {
          return {{"kind", "kernel_power"}, {"center", point_to_json(x.center)}, {"gamma", x.gamma}};
        } else if constexpr (std::is_same_v<T, node::Sum>) {
          json a = json::array();
          for (const auto& t : x.terms) a.push_back(t.to_json());
          return {{"kind", "sum"}, {"terms", a}};
        } else if constexpr (std::is_same_v<T, node::Product>) {
          json a = json::array();
          for (const auto& t : x.factors) a.push_back(t.to_json());
          return {{"kind", "product"}, {"factors", a}};
        } else if constexpr (std::is_same_v<T, node::Scaled>) {
          return {{"kind", "scaled"}, {"factor", complex_to_json(x.factor)}, {"arg", x.arg->to_json()}};
        } else if constexpr (std::is_same_v<T, node::IntPower>) {
          return {{"kind", "int_power"}, {"exponent", x.exponent}, {"arg", x.arg->to_json()}};
        } else {
          return {{"kind", "composed"}, {"automorphism", automorphism_to_json(x.phi)}, {"arg", x.arg->to_json()}};
        }
      },
      *node_);
}

AnalyticFunction AnalyticFunction::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return constant(complex_from_json(j.at("value")));
  if (kind == "affine") return affine(complex_from_json(j.at("c0")), point_from_json(j.at("w")));
  if (kind == "kernel_power") return kernel_power(point_from_json(j.at("center")), j.at("gamma").get<double>());
  if (kind == "sum" || kind == "product") {
    std::vector<AnalyticFunction> kids;
    for (const auto& e : j.at(kind == "sum" ? "terms" : "factors")) kids.push_back(from_json(e));
    return kind == "sum" ? AnalyticFunction(node::Sum{std::move(kids)})
                         : AnalyticFunction(node::Product{std::move(kids)});
  }
  if (kind == "scaled") return scaled(complex_from_json(j.at("factor")), from_json(j.at("arg")));
  if (kind == "int_power") return int_power(from_json(j.at("arg")), j.at("exponent").get<int>());
  if (kind == "composed") return composed(from_json(j.at("arg")), automorphism_from_json(j.at("automorphism")));
  throw precondition_error("unknown expression kind '" + kind + "'");
}

AnalyticFunction kernel_fn(double N, const CPoint& a) {
  require_interior(a, "kernel center");
  if (N == 0.0 || a.is_zero()) return AnalyticFunction::constant(1.0);
  return AnalyticFunction::kernel_power(a, N);
}

}  // namespace bergman
