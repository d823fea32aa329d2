// bergman: batch front end for the library. One subcommand per operation,
// JSON in, JSON (or CSV for sweeps) out.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bergman/density.hpp"
#include "bergman/json_io.hpp"
#include "bergman/seqlab.hpp"
#include "bergman/solver.hpp"
#include "bergman/spaces.hpp"

using namespace bergman;
using nlohmann::json;

namespace {

struct Config {
  std::string command;
  std::string input;
  std::string values;
  std::string output;
  std::string extra;
  std::string csv;
  std::uint64_t seed = 0;
  std::size_t n = 1;
  std::string p = "2";
  double alpha = 0.0;
  double m = 0.0;  // 0: choose automatically
  std::size_t samples = 4096;
  std::string method;
  std::string quad = "product";
  std::string grid;
  // command-specific knobs
  double q = 0.0;
  double beta = 0.0;
  double r = 0.5;
  int layers = 3;
  double target = 1.0;
  std::string p2 = "2";
  double alpha2 = 0.0;
  double delta = 0.01;
  int max_iter = 100;
  int trials = 10;
  double N = 0.0;
  std::string param;
  std::string stat;
  bool with_norms = false;
};

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw precondition_error("bad exponent '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw precondition_error("bad exponent '" + s + "'");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    out.push_back(parse_exponent(item.substr(b, item.find_last_not_of(" \t") - b + 1)));
  }
  return out;
}

int grid_levels(const Config& c, int fallback) {
  if (c.grid.empty()) return fallback;
  const auto v = parse_list(c.grid);
  if (v.size() != 1 || v[0] < 1) throw precondition_error("--grid must be a positive level count here");
  return static_cast<int>(v[0]);
}

QuadratureSpec quad_spec(const Config& c, const std::string& method) {
  QuadratureSpec q;
  q.method = quad_method_from_string(method);
  q.samples = c.samples;
  q.seed = c.seed;
  return q;
}

SpaceParams space(const Config& c, std::size_t n) { return SpaceParams(n, parse_exponent(c.p), c.alpha); }

PointSeq load_seq(const Config& c) {
  if (c.input.empty()) throw precondition_error("--input is required");
  return point_seq_from_json(read_json_file(c.input));
}

std::vector<complex> load_values(const Config& c, std::size_t expected) {
  if (c.values.empty()) throw precondition_error("--values is required");
  auto v = values_from_json(read_json_file(c.values));
  if (v.size() != expected) throw precondition_error("values file does not match the sequence length");
  return v;
}

json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::optional<SolveMethod> solve_method(const Config& c) {
  if (c.method.empty() || c.method == "auto") return std::nullopt;
  return solve_method_from_string(c.method);
}

ExtensionParams extension_for(const Config& c, const PointSeq& seq, const SpaceParams& sp) {
  if (c.m > 0.0 || sp.p != 1.0) return make_extension(sp, c.m > 0.0 ? c.m : 1.0);
  return default_extension(seq, sp).ext;
}

json resolved_config(const Config& c) {
  return {{"command", c.command}, {"input", c.input},   {"values", c.values},   {"extra", c.extra},
          {"seed", c.seed},       {"n", c.n},           {"p", c.p},             {"alpha", c.alpha},
          {"m", c.m},             {"samples", c.samples}, {"method", c.method}, {"quad", c.quad},
          {"grid", c.grid},       {"q", c.q},           {"beta", c.beta},       {"r", c.r},
          {"layers", c.layers},   {"target", c.target}, {"p2", c.p2},           {"alpha2", c.alpha2},
          {"delta", c.delta},     {"max_iter", c.max_iter}, {"trials", c.trials}, {"N", c.N},
          {"param", c.param},     {"stat", c.stat},     {"norms", c.with_norms}};
}

json run_gen(const Config& c) {
  const PointSeq seq = generate_net(c.n, c.r, c.layers, c.seed);
  json j = to_json(seq);
  j["separation"] = num(separation(seq));
  return j;
}

json run_kval(const Config& c) {
  const PointSeq seq = load_seq(c);
  const double p = parse_exponent(c.p);
  const double q = c.q > 0 ? c.q : static_cast<double>(seq.n) + 1.0 + c.alpha;
  const KReport k = k_value(seq, p, q);
  return {{"value", k.value}, {"argmax_k", k.argmax_k}, {"per_k", k.per_k}};
}

json run_supz(const Config& c) {
  const PointSeq seq = load_seq(c);
  const double p = parse_exponent(c.p);
  const double q = c.q > 0 ? c.q : static_cast<double>(seq.n) + 1.0;
  const auto grid = graded_grid(seq.n, grid_levels(c, 48), 4, seq.n == 1 ? 256 : 512, c.seed, seq.points);
  return {{"value", sup_z_k_value(seq, p, q, grid)}, {"grid_points", grid.size()}};
}

json run_carleson(const Config& c) {
  const PointSeq seq = load_seq(c);
  const double q = c.q > 0 ? c.q : static_cast<double>(seq.n) + 1.0;
  WindowSet w;
  w.t_levels = grid_levels(c, 12);
  w.seed = c.seed;
  return {{"value", carleson_ratio(seq, q, w)}, {"q", q}, {"t_levels", w.t_levels}};
}

json run_beta_test(const Config& c) {
  const PointSeq seq = load_seq(c);
  const double q = c.q > 0 ? c.q : static_cast<double>(seq.n);
  const double beta = c.beta > 0 ? c.beta : static_cast<double>(seq.n);
  std::vector<double> masses(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) masses[k] = std::pow(1.0 - seq[k].norm_sq(), q);
  const auto grid = graded_grid(seq.n, grid_levels(c, 48), 4, seq.n == 1 ? 256 : 512, c.seed, seq.points);
  return {{"value", carleson_beta_test(seq, masses, beta, grid)}, {"beta", beta}, {"q", q}};
}

json run_mills(const Config& c) {
  if (c.input.empty()) throw precondition_error("--input is required");
  const json j = read_json_file(c.input);
  const json& rows = j.is_object() ? j.at("matrix") : j;
  const std::size_t N = rows.size();
  Eigen::MatrixXd A(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    if (rows[i].size() != N) throw precondition_error("matrix must be square");
    for (std::size_t k = 0; k < N; ++k) A(i, k) = rows[i][k].get<double>();
  }
  const Partition part = mills_partition(A);
  const auto rs = row_sums(A);
  const double M = rs.empty() ? 0.0 : *std::max_element(rs.begin(), rs.end());
  const auto within = within_class_sums(A, part);
  bool ok = true;
  for (double w : within) ok = ok && w <= M / 2.0;
  return {{"s1", part.s1}, {"s2", part.s2}, {"sizes", {part.s1.size(), part.s2.size()}},
          {"M", M},        {"within", within}, {"guarantee_holds", ok}};
}

json run_split(const Config& c) {
  const PointSeq seq = load_seq(c);
  const auto parts = split_until_interpolating(seq, c.alpha, c.target);
  const double s = static_cast<double>(seq.n) + 1.0 + c.alpha;
  json arr = json::array();
  for (const auto& part : parts) {
    json pj = to_json(part);
    pj["k_value"] = k_value(part, s, s).value;
    arr.push_back(pj);
  }
  return {{"parts", arr}, {"count", parts.size()}};
}

json run_norm(const Config& c) {
  if (c.input.empty()) throw precondition_error("--input is required");
  const AnalyticFunction f = AnalyticFunction::from_json(read_json_file(c.input));
  const SpaceParams sp = space(c, f.dim());
  return {{"params", to_json(sp)}, {"norm", to_json(norm(f, sp, quad_spec(c, c.method.empty() ? c.quad : c.method)))}};
}

json run_interp(const Config& c) {
  const PointSeq seq = load_seq(c);
  const auto v = load_values(c, seq.size());
  const SpaceParams sp = space(c, seq.n);
  SolveOptions opts;
  opts.method = solve_method(c);
  opts.compute_norm = c.with_norms;
  opts.quad = quad_spec(c, c.quad);
  const SolveReport rep = interpolate(seq, v, sp, extension_for(c, seq, sp), opts);
  return {{"params", to_json(sp)}, {"report", to_json(rep)}};
}

json run_duals(const Config& c) {
  const PointSeq seq = load_seq(c);
  const SpaceParams sp = space(c, seq.n);
  SolveOptions opts;
  opts.method = solve_method(c);
  opts.compute_norm = c.with_norms;
  opts.quad = quad_spec(c, c.quad);
  const auto fam = dual_family(seq, sp, extension_for(c, seq, sp), opts);
  double bio = 0.0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const double wj = std::pow(1.0 - seq[j].norm_sq(), sp.beta());
    for (std::size_t k = 0; k < seq.size(); ++k) {
      bio = std::max(bio, std::abs(fam.duals[j](seq[k]) * wj - (j == k ? 1.0 : 0.0)));
    }
  }
  json arr = json::array();
  for (const auto& f : fam.duals) arr.push_back(f.to_json());
  json out{{"params", to_json(sp)},
           {"extension", {{"m", fam.ext.m}, {"s", fam.ext.s}}},
           {"duals", arr},
           {"biorthogonality_error", bio}};
  if (c.with_norms) {
    out["norms"] = fam.norms;
    out["M"] = fam.M;
  }
  return out;
}

json run_transfer(const Config& c) {
  const PointSeq seq = load_seq(c);
  const SpaceParams from = space(c, seq.n);
  const SpaceParams to(seq.n, parse_exponent(c.p2), c.alpha2);
  const auto lambda = load_values(c, seq.size());
  std::string why;
  if (!transfer_regime_ok(from, to, &why)) throw precondition_error("transfer regime violated: " + why);
  const auto fam = dual_family(seq, from, extension_for(c, seq, from));
  const double m = c.m > 0 ? c.m : 2.0;
  const AnalyticFunction G = transfer_basis(seq, fam.duals, from, to, m, lambda);
  double node_err = 0.0;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    node_err = std::max(node_err, std::abs(std::pow(1.0 - seq[k].norm_sq(), to.beta()) * G(seq[k]) - lambda[k]));
  }
  json out{{"from", to_json(from)}, {"to", to_json(to)}, {"m", m}, {"function", G.to_json()}, {"node_error", node_err}};
  if (c.with_norms) out["norm"] = to_json(norm(G, to, quad_spec(c, c.quad)));
  return out;
}

json run_add_points(const Config& c) {
  const PointSeq seq = load_seq(c);
  const auto v = load_values(c, seq.size());
  if (c.extra.empty()) throw precondition_error("--extra is required");
  std::vector<ExtraPoint> extra;
  for (const auto& e : read_json_file(c.extra)) {
    extra.push_back({point_from_json(e.at("z")), complex_from_json(e.at("value"))});
  }
  const SpaceParams sp = space(c, seq.n);
  SolveOptions opts;
  opts.method = solve_method(c);
  opts.compute_norm = c.with_norms;
  opts.quad = quad_spec(c, c.quad);
  return {{"params", to_json(sp)}, {"report", to_json(add_points(seq, v, extra, sp, extension_for(c, seq, sp), opts))}};
}

json run_stability(const Config& c) {
  const PointSeq seq = load_seq(c);
  const SpaceParams sp = space(c, seq.n);
  const PointSeq moved = perturb(seq, c.delta, c.seed);
  std::vector<complex> v = c.values.empty() ? random_values(moved, sp, c.seed, 0) : load_values(c, seq.size());
  const auto st = stability_iterate(seq, moved, v, sp, extension_for(c, seq, sp), c.max_iter);
  return {{"params", to_json(sp)},
          {"perturbed", to_json(moved)},
          {"gamma", st.gamma},
          {"contracting", st.contracting},
          {"value_norms", st.value_norms},
          {"report", to_json(st.report)}};
}

json run_density(const Config& c) {
  const PointSeq seq = load_seq(c);
  const int jmax = grid_levels(c, 10);
  const auto radii = dyadic_radii(2, jmax);
  const auto grid = density_grid(seq, jmax + 2);
  const DensityReport rep = seip_density(seq, radii, grid);
  if (!c.csv.empty()) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << "r,sup_value\n";
    for (const auto& [r, v] : rep.r_profile) os << r << ',' << v << '\n';
    write_file_atomic(c.csv, os.str());
  }
  return to_json(rep);
}

json run_verdict(const Config& c) {
  const PointSeq seq = load_seq(c);
  const int jmax = grid_levels(c, 10);
  const auto radii = dyadic_radii(2, jmax);
  const auto grid = density_grid(seq, jmax + 2);
  const auto rep = density_verdict(seq, parse_exponent(c.p), c.alpha, radii, grid);
  return {{"verdict", to_string(rep.verdict)}, {"density", rep.density}, {"threshold", rep.threshold},
          {"detail", to_json(rep.detail)}};
}

json run_vanish(const Config& c) {
  const PointSeq seq = load_seq(c);
  const SpaceParams sp = space(c, seq.n);
  double delta0 = 1.0;
  for (const auto& a : seq.points) delta0 = std::min(delta0, a.norm());
  SolveOptions opts;
  opts.method = solve_method(c);
  const auto rep = vanishing_at_origin(seq, sp, extension_for(c, seq, sp), delta0, opts);
  json out{{"function", rep.f.to_json()},
           {"max_node_value", rep.max_node_value},
           {"value_at_origin", complex_to_json(rep.f(CPoint{0.0}))},
           {"delta0", delta0},
           {"inverse_norm", rep.inverse_norm}};
  if (c.with_norms) out["norm"] = to_json(norm(rep.f, sp, quad_spec(c, c.quad)));
  return out;
}

std::string run_sweep(const Config& c) {
  const auto values = parse_list(c.grid);
  if (values.empty()) throw precondition_error("sweep needs a nonempty --grid list");
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  const std::string stat = c.stat.empty() ? "kernel-norm" : c.stat;
  if (stat == "kernel-norm") {
    const SpaceParams sp = space(c, c.n);
    const double N = c.N > 0 ? c.N : sp.beta() + 2.0;
    os << "abs_a,one_minus_abs_a_sq,norm,stderr\n";
    for (double r : values) {
      CPoint a(c.n);
      a[0] = r;
      const Estimate e = norm(kernel_fn(N, a), sp, quad_spec(c, c.method.empty() ? c.quad : c.method));
      os << r << ',' << (1.0 - r * r) << ',' << e.value << ',' << e.std_error << '\n';
    }
  } else if (stat == "te-deviation") {
    const PointSeq seq = load_seq(c);
    const SpaceParams sp = space(c, seq.n);
    os << "m,te_deviation,k_value\n";
    for (double m : values) {
      const auto ext = make_extension(sp, m);
      const double k = k_value(seq, m, static_cast<double>(seq.n) + 1.0 + sp.alpha).value;
      os << m << ',' << te_deviation(te_matrix(seq, ext), seq, sp) << ',' << k << '\n';
    }
  } else {
    throw precondition_error("unknown sweep statistic '" + stat + "'");
  }
  return os.str();
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(c.output, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for weighted Bergman spaces on the unit ball"};
  app.require_subcommand(1);
  Config cfg;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "generate a separated net"},
      {"sep", "separation constant of a sequence"},
      {"kval", "K(a, p, q) row sums"},
      {"supz", "grid sup of the z-indexed K sum"},
      {"carleson", "Carleson window ratio"},
      {"beta-test", "Carleson beta test"},
      {"mills", "Mills bipartition of a symmetric matrix"},
      {"split", "split a sequence into interpolating parts"},
      {"norm", "weighted Bergman / Hardy / growth norm of a function"},
      {"interp", "solve an interpolation problem"},
      {"duals", "dual family f_j"},
      {"transfer", "transfer dual functions to another space"},
      {"add-points", "augment an interpolating sequence"},
      {"stability", "stability iteration under perturbation"},
      {"density", "upper uniform density (disk)"},
      {"verdict", "density-based interpolation verdict (disk)"},
      {"vanish", "function vanishing on the sequence with value 1 at 0"},
      {"sweep", "parameter sweep to CSV"}};

  for (const auto& [name, desc] : commands) {
    auto* sub = app.add_subcommand(name, desc);
    sub->add_option("--input", cfg.input, "input JSON (sequence, function or matrix)");
    sub->add_option("--values", cfg.values, "values JSON aligned with the sequence");
    sub->add_option("--output", cfg.output, "output path (default: stdout)");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--n", cfg.n, "dimension");
    sub->add_option("--p", cfg.p, "exponent p (or 'inf')");
    sub->add_option("--alpha", cfg.alpha, "weight exponent alpha");
    sub->add_option("--m", cfg.m, "auxiliary extension exponent (0: automatic)");
    sub->add_option("--samples", cfg.samples, "quadrature samples");
    sub->add_option("--method", cfg.method, "quadrature method for norm/sweep, solve method for solvers");
    sub->add_option("--quad", cfg.quad, "quadrature method for solver norm estimates");
    sub->add_option("--grid", cfg.grid, "grid levels, or a comma list for sweep");
    sub->add_option("--extra", cfg.extra, "extra points JSON for add-points");
    sub->add_option("--csv", cfg.csv, "CSV profile export (density)");
    sub->add_option("--q", cfg.q, "second K exponent / Carleson exponent");
    sub->add_option("--beta", cfg.beta, "beta for the Carleson beta test");
    sub->add_option("--r", cfg.r, "net parameter r");
    sub->add_option("--layers", cfg.layers, "number of net layers");
    sub->add_option("--target", cfg.target, "target K for split");
    sub->add_option("--p2", cfg.p2, "target exponent p' for transfer");
    sub->add_option("--alpha2", cfg.alpha2, "target alpha' for transfer");
    sub->add_option("--delta", cfg.delta, "perturbation size");
    sub->add_option("--max-iter", cfg.max_iter, "iteration cap");
    sub->add_option("--trials", cfg.trials, "random trials");
    sub->add_option("--N", cfg.N, "kernel exponent for sweeps");
    sub->add_option("--param", cfg.param, "swept parameter name");
    sub->add_option("--stat", cfg.stat, "sweep statistic: kernel-norm | te-deviation");
    sub->add_flag("--norms", cfg.with_norms, "also estimate norms by quadrature");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (cfg.command == "sweep") {
      emit(cfg, run_sweep(cfg));
      return 0;
    }
    json result;
    if (cfg.command == "gen") result = run_gen(cfg);
    else if (cfg.command == "sep") result = {{"value", num(separation(load_seq(cfg)))}};
    else if (cfg.command == "kval") result = run_kval(cfg);
    else if (cfg.command == "supz") result = run_supz(cfg);
    else if (cfg.command == "carleson") result = run_carleson(cfg);
    else if (cfg.command == "beta-test") result = run_beta_test(cfg);
    else if (cfg.command == "mills") result = run_mills(cfg);
    else if (cfg.command == "split") result = run_split(cfg);
    else if (cfg.command == "norm") result = run_norm(cfg);
    else if (cfg.command == "interp") result = run_interp(cfg);
    else if (cfg.command == "duals") result = run_duals(cfg);
    else if (cfg.command == "transfer") result = run_transfer(cfg);
    else if (cfg.command == "add-points") result = run_add_points(cfg);
    else if (cfg.command == "stability") result = run_stability(cfg);
    else if (cfg.command == "density") result = run_density(cfg);
    else if (cfg.command == "verdict") result = run_verdict(cfg);
    else if (cfg.command == "vanish") result = run_vanish(cfg);
    else {
      std::cerr << "unknown command '" << cfg.command << "'\n";
      return 1;
    }
    if (!cfg.input.empty()) {
      // dimension comes from the input file when there is one
      const json in = read_json_file(cfg.input);
      if (in.is_object() && in.contains("n")) cfg.n = in.at("n").get<std::size_t>();
    }
    json report{{"command", cfg.command}, {"config", resolved_config(cfg)}, {"result", result}};
    emit(cfg, report.dump(2) + "\n");
    return 0;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "precondition violated: bad JSON input: " << e.what() << '\n';
    return 2;
  }
}
