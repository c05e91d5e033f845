#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stardeform/distributions.hpp"
#include "stardeform/halfseries.hpp"
#include "stardeform/poly.hpp"
#include "stardeform/residue.hpp"
#include "stardeform/special.hpp"
#include "stardeform/theta.hpp"
#include "stardeform/vertex.hpp"
#include "stardeform_cli/config.hpp"
#include "stardeform_cli/suites.hpp"

using nlohmann::ordered_json;

namespace sd::cli {
namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

// Raw flag values shared by every subcommand.
struct Flags {
  std::string tau = "1,0";
  std::string nu = "0";
  double tol = 1e-10;
  int trunc = 6;
  std::string grid = "-1,1,21";
  std::string format;
  std::uint64_t seed = 20240101;

  RunConfig resolve(Format fallback) const {
    RunConfig cfg;
    cfg.tau = parse_scalar_pair(tau);
    cfg.nu = parse_scalar_pair(nu);
    cfg.tol = tol;
    cfg.trunc = trunc;
    cfg.grid = parse_grid(grid);
    cfg.format = format.empty() ? fallback : parse_format(format);
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--tau", f.tau, "deformation parameter as re,im");
  sub->add_option("--nu", f.nu, "spectral parameter as re,im");
  sub->add_option("--tol", f.tol, "residual tolerance");
  sub->add_option("--trunc", f.trunc, "truncation order (grade budget for vertex checks)");
  sub->add_option("--grid,--w-grid", f.grid, "sample grid lo,hi,count");
  sub->add_option("--format", f.format, "text, csv or json");
  sub->add_option("--seed", f.seed, "seed for randomised checks");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

ordered_json pair_json(Complex z) { return ordered_json::array({format_double(z.real()), format_double(z.imag())}); }

ordered_json envelope(const std::string& command, const RunConfig& cfg) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["tau"] = pair_json(cfg.tau);
  return j;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// ------------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Text);
  const auto results = run_suite(suite, cfg);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  auto tolerance = [&](const CheckResult& r) { return r.exact ? 0.0 : std::max(cfg.tol, r.floor); };
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("verify", cfg);
    j["suite"] = suite;
    j["checks"] = ordered_json::array();
    for (const auto& r : results) {
      j["checks"].push_back({{"suite", r.suite},
                             {"name", r.name},
                             {"anchor", r.anchor},
                             {"residual", format_double(r.residual)},
                             {"tolerance", format_double(tolerance(r))},
                             {"exact", r.exact},
                             {"passed", r.passed}});
    }
    j["passed"] = all;
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "suite,name,anchor,residual,tolerance,exact,passed\n";
    for (const auto& r : results) {
      std::cout << r.suite << "," << r.name << "," << csv_quote(r.anchor) << "," << format_double(r.residual) << ","
                << format_double(tolerance(r)) << "," << (r.exact ? "true" : "false") << ","
                << (r.passed ? "true" : "false") << "\n";
    }
  } else {
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name << "  residual "
                << format_double(r.residual) << (r.exact ? " (exact)" : " <= " + format_double(tolerance(r)))
                << "  [" << r.anchor << "]\n";
    }
    std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kOk : kFailed;
}

// -------------------------------------------------------------------- tables

std::vector<std::string> number_strings(const std::vector<mpq_class>& v, unsigned n_max) {
  std::vector<std::string> out;
  for (unsigned m = 0; m <= n_max && m < v.size(); m += 2) out.push_back(v[m].get_str());
  return out;
}

std::string with_x(std::string s) {
  for (char& c : s)
    if (c == 'w') c = 'x';
  return s;
}

int emit_rows(const std::string& family, const std::vector<std::string>& rows, unsigned step, const RunConfig& cfg,
              bool one_line) {
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("table", cfg);
    j["family"] = family;
    j["rows"] = ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) j["rows"].push_back({{"n", i * step}, {"value", rows[i]}});
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "n,value\n";
    for (std::size_t i = 0; i < rows.size(); ++i) std::cout << i * step << "," << csv_quote(rows[i]) << "\n";
  } else if (one_line) {
    std::cout << join(rows, ", ") << "\n";
  } else {
    for (const auto& r : rows) std::cout << r << "\n";
  }
  return kOk;
}

int bessel_table_out(int n_max, const RunConfig& cfg) {
  const auto pts = cfg.grid.points();
  const int width = std::max(n_max + 4, 20);
  const BesselTable t = bessel_table(1.0, cfg.tau, width, pts);
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("table", cfg);
    j["family"] = "bessel";
    j["w"] = ordered_json::array();
    for (double w : pts) j["w"].push_back(format_double(w));
    for (int n = 0; n <= n_max; ++n) {
      ordered_json col = ordered_json::array();
      for (const Complex& v : t.at(n)) col.push_back(pair_json(v));
      j["values"][std::to_string(n)] = col;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "w";
  for (int n = 0; n <= n_max; ++n) std::cout << ",J" << n << "_re,J" << n << "_im";
  std::cout << "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::cout << format_double(pts[i]);
    for (int n = 0; n <= n_max; ++n) std::cout << "," << format_double(t.at(n)[i].real()) << "," << format_double(t.at(n)[i].imag());
    std::cout << "\n";
  }
  return kOk;
}

int cmd_table(const std::string& family, int n, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Text);
  if (n < 0) throw UsageError("N must be non-negative");
  const unsigned N = static_cast<unsigned>(n);
  const QComplex tau = QComplex::from_complex(cfg.tau);
  std::vector<std::string> rows;
  if (family == "euler") return emit_rows(family, number_strings(euler_numbers(N / 2 + 1), N), 2, cfg, true);
  if (family == "bernoulli") return emit_rows(family, number_strings(bernoulli_numbers(N / 2 + 1), N), 2, cfg, true);
  if (family == "hermite") {
    const HermiteFamily fam = hermite_table(N, tau);
    for (unsigned k = 0; k <= N; ++k) rows.push_back(fam.render(k));
    return emit_rows(family, rows, 1, cfg, false);
  }
  if (family == "laguerre") {
    for (const auto& p : laguerre_star(N, tau)) rows.push_back(with_x(to_string(p)));
    return emit_rows(family, rows, 1, cfg, false);
  }
  if (family == "legendre") {
    for (unsigned k = 0; k <= N; ++k) rows.push_back(to_string(intertwine(legendre_classical(k), QComplex(0L), tau)));
    return emit_rows(family, rows, 1, cfg, false);
  }
  if (family == "bessel") return bessel_table_out(n, cfg);
  throw UsageError("unknown family '" + family + "'");
}

int cmd_numbers(const std::string& family, int n, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Csv);
  if (n < 0) throw UsageError("N must be non-negative");
  std::vector<mpq_class> v;
  if (family == "euler") v = euler_numbers(static_cast<unsigned>(n));
  else if (family == "bernoulli") v = bernoulli_numbers(static_cast<unsigned>(n));
  else throw UsageError("numbers family must be euler or bernoulli");
  std::vector<std::string> rows = number_strings(v, 2 * static_cast<unsigned>(n));
  return emit_rows(family, rows, 2, cfg, true);
}

// ---------------------------------------------------------------------- eval

int emit_result(const std::string& what, const std::string& value, const RunConfig& cfg) {
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("eval", cfg);
    j["operation"] = what;
    j["result"] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << value << "\n";
  }
  return kOk;
}

int cmd_eval(const std::string& op, const std::string& f, const std::string& g, const std::string& to, int n,
             const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Text);
  if (op == "star") {
    if (f.empty() || g.empty()) throw UsageError("eval star needs --f and --g");
    return emit_result(op, to_string(star_product(parse_poly(f), parse_poly(g), cfg.tau)), cfg);
  }
  if (op == "intertwine") {
    if (f.empty() || to.empty()) throw UsageError("eval intertwine needs --f and --to");
    return emit_result(op, to_string(intertwine(parse_poly(f), cfg.tau, parse_scalar_pair(to))), cfg);
  }
  if (op == "power") {
    if (n < 0) throw UsageError("eval power needs --n >= 0");
    return emit_result(op, to_string(w_star_power(static_cast<unsigned>(n), cfg.tau)), cfg);
  }
  throw UsageError("eval operation must be star, intertwine or power");
}

// ------------------------------------------------------- sampled functions

int emit_samples(const std::string& command, const std::vector<double>& w, const std::vector<Complex>& v,
                 const RunConfig& cfg) {
  if (cfg.format == Format::Json) {
    ordered_json j = envelope(command, cfg);
    j["samples"] = ordered_json::array();
    for (std::size_t i = 0; i < w.size(); ++i) j["samples"].push_back({{"w", format_double(w[i])}, {"value", pair_json(v[i])}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "w,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i)
      std::cout << format_double(w[i]) << "," << format_double(v[i].real()) << "," << format_double(v[i].imag()) << "\n";
  }
  return kOk;
}

int cmd_theta(int kind, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Csv);
  if (kind < 1 || kind > 4) throw UsageError("--kind must be 1..4");
  const Precision prec = Precision::from_env();
  const auto pts = cfg.grid.points();
  if (prec.is_extended()) {
    // Extended values stay decimal strings end to end.
    if (cfg.format == Format::Json) {
      ordered_json j = envelope("theta", cfg);
      j["digits"] = prec.digits;
      j["samples"] = ordered_json::array();
      for (double w : pts) {
        const ExtendedValue v = theta_eval_extended(kind, w, cfg.tau, prec.digits);
        j["samples"].push_back({{"w", format_double(w)}, {"value", {v.re, v.im}}});
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "w,re,im\n";
      for (double w : pts) {
        const ExtendedValue v = theta_eval_extended(kind, w, cfg.tau, prec.digits);
        std::cout << format_double(w) << "," << v.re << "," << v.im << "\n";
      }
    }
    return kOk;
  }
  std::vector<Complex> v;
  for (double w : pts) v.push_back(theta_eval(kind, w, cfg.tau));
  return emit_samples("theta", pts, v, cfg);
}

int cmd_dist(const std::string& kind, const std::string& a_str, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Csv);
  const Complex a = parse_scalar_pair(a_str);
  const auto pts = cfg.grid.points();
  const auto cpts = cfg.grid.complex_points();
  std::vector<Complex> v;
  if (kind == "delta") {
    const GaussPoly d = delta_tau(a, cfg.tau);
    for (Complex w : cpts) v.push_back(d(w));
  } else if (kind == "plus" || kind == "minus") {
    v = sided_inverse(a, kind == "plus" ? Side::Plus : Side::Minus, cfg.tau, cpts);
  } else if (kind == "heaviside") {
    v = heaviside_sgn(cfg.tau, cpts).y;
  } else if (kind == "sgn") {
    v = heaviside_sgn(cfg.tau, cpts).sgn;
  } else if (kind == "pv") {
    v = principal_value_inverse(1, cfg.tau, cpts);
  } else {
    throw UsageError("--kind must be delta, plus, minus, heaviside, sgn or pv");
  }
  return emit_samples("dist", pts, v, cfg);
}

int cmd_residue(int k, const std::string& w_str, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Json);
  const Complex w = parse_scalar_pair(w_str);
  const Complex closed = laurent_coeff_closed(k, cfg.nu, cfg.tau, w);
  const Complex contour = residue_contour(k, cfg.nu, cfg.tau, w);
  const double err = std::abs(closed - contour);
  const bool ok = err <= cfg.tol * std::max(1.0, std::abs(closed));
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("residue", cfg);
    j["k"] = k;
    j["nu"] = pair_json(cfg.nu);
    j["w"] = pair_json(w);
    j["closed"] = pair_json(closed);
    j["contour"] = pair_json(contour);
    j["abs_err"] = format_double(err);
    j["passed"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    if (cfg.format == Format::Csv) std::cout << "k,closed_re,closed_im,contour_re,contour_im,abs_err\n";
    else std::cout << "k closed contour abs_err\n";
    const char* sep = cfg.format == Format::Csv ? "," : " ";
    std::cout << k << sep << format_double(closed.real()) << sep << format_double(closed.imag()) << sep
              << format_double(contour.real()) << sep << format_double(contour.imag()) << sep << format_double(err)
              << "\n";
  }
  return ok ? kOk : kFailed;
}

int cmd_vertex(const std::string& check, const std::string& form_str, const Flags& flags) {
  const RunConfig cfg = flags.resolve(Format::Text);
  const unsigned K = static_cast<unsigned>(cfg.trunc);
  if (K < 2) throw UsageError("vertex checks need --trunc >= 2");
  YForm form;
  if (form_str == "corrected") form = YForm::Corrected;
  else if (form_str == "literal") form = YForm::Literal;
  else throw UsageError("--form must be corrected or literal");

  std::vector<std::pair<std::string, bool>> lines;
  if (check == "witt") {
    bool ok = true;
    for (int n = -4; n <= 4; ++n)
      for (int l = -4; l <= 4; ++l)
        for (int m = -4; m <= 4; ++m) ok = ok && witt_identity_check(n, l, m, K);
    lines.emplace_back("[L_n,[L_l,x_m]] - [L_l,[L_n,x_m]] = (l - n)[L_{n+l},x_m], |n|,|l|,|m| <= 4", ok);
  } else if (check == "eigen") {
    bool ok = true;
    for (int n = -3; n <= 3; ++n)
      for (int m = -3; m <= 3; ++m) ok = ok && y_eigen_check(n, m, K, form);
    lines.emplace_back("[L_n, y_m] = m y_{n+m} through grade K", ok);
  } else if (check == "central") {
    const CentralReport rep = central_constraint_check(K, form);
    lines.emplace_back("C_{0,m} = 0", rep.y0_central);
    lines.emplace_back("C_{l,m} = 0 for l + m != 0", rep.off_diagonal_zero);
    lines.emplace_back("C_{m,-m} = m c_1", rep.diagonal_law);
    lines.emplace_back("c_1 = -2 sum (-4)^n/n! a_{n-1} u^n", rep.c1_matches_display);
  } else if (check == "kcentral") {
    bool ok = true;
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n) ok = ok && k_centrality_check(m, n, K, form);
    lines.emplace_back("K_{m,n} y_l = 0 through grade K, |m|,|n| <= 3", ok);
  } else if (check == "stable") {
    lines.emplace_back("C_{l,m} through grade K unchanged at K + 2", truncation_stable(K, K + 2, form));
  } else {
    throw UsageError("--check must be witt, eigen, central, kcentral or stable");
  }

  bool all = true;
  for (const auto& [what, ok] : lines) all = all && ok;
  if (cfg.format == Format::Json) {
    ordered_json j = envelope("vertex", cfg);
    j["check"] = check;
    j["form"] = form_str;
    j["grade"] = K;
    j["identities"] = ordered_json::array();
    for (const auto& [what, ok] : lines) j["identities"].push_back({{"anchor", what}, {"passed", ok}});
    j["passed"] = all;
    std::cout << j.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    std::cout << "anchor,passed\n";
    for (const auto& [what, ok] : lines) std::cout << csv_quote(what) << "," << (ok ? "true" : "false") << "\n";
  } else {
    for (const auto& [what, ok] : lines) std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
  }
  return all ? kOk : kFailed;
}

}  // namespace
}  // namespace sd::cli

int main(int argc, char** argv) {
  using namespace sd::cli;
  CLI::App app{"stardeform: star-product deformation toolkit"};
  app.require_subcommand(1);
  Flags flags;

  std::string suite, family, op, f, g, to, kind = "delta", a = "0", w = "0", check = "witt", form = "corrected";
  int n = 0, power_n = -1, k = 0, theta_kind = 3;

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", suite, "core, starexp, special, theta, dist, residue, halfseries, vertex or all")->required();
  add_common(verify, flags);

  auto* table = app.add_subcommand("table", "coefficient tables");
  table->add_option("family", family, "hermite, laguerre, legendre, bessel, euler or bernoulli")->required();
  table->add_option("N", n, "largest index")->required();
  add_common(table, flags);

  auto* numbers = app.add_subcommand("numbers", "Euler or Bernoulli numbers E_0..E_{2N} / B_0..B_{2N}");
  numbers->add_option("family", family, "euler or bernoulli")->required();
  numbers->add_option("N", n, "count of even-index numbers")->required();
  add_common(numbers, flags);

  auto* eval = app.add_subcommand("eval", "polynomial star algebra");
  eval->add_option("operation", op, "star, intertwine or power")->required();
  eval->add_option("--f", f, "first polynomial");
  eval->add_option("--g", g, "second polynomial");
  eval->add_option("--to", to, "target tau for intertwine");
  eval->add_option("--n", power_n, "exponent for power");
  add_common(eval, flags);

  auto* theta = app.add_subcommand("theta", "sample a theta function");
  theta->add_option("--kind", theta_kind, "1..4");
  add_common(theta, flags);

  auto* dist = app.add_subcommand("dist", "sample a star distribution");
  dist->add_option("--kind", kind, "delta, plus, minus, heaviside, sgn or pv");
  dist->add_option("--a", a, "shift a as re,im");
  add_common(dist, flags);

  auto* residue = app.add_subcommand("residue", "Laurent coefficient: closed form against contour");
  residue->add_option("--k", k, "a_{2k-1}");
  residue->add_option("--w", w, "point w as re,im");
  add_common(residue, flags);

  auto* vertex = app.add_subcommand("vertex", "formal vertex-algebra checks");
  vertex->add_option("--check", check, "witt, eigen, central, kcentral or stable");
  vertex->add_option("--form", form, "corrected or literal generators");
  add_common(vertex, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*verify) return cmd_verify(suite, flags);
    if (*table) return cmd_table(family, n, flags);
    if (*numbers) return cmd_numbers(family, n, flags);
    if (*eval) return cmd_eval(op, f, g, to, power_n, flags);
    if (*theta) return cmd_theta(theta_kind, flags);
    if (*dist) return cmd_dist(kind, a, flags);
    if (*residue) return cmd_residue(k, w, flags);
    if (*vertex) return cmd_vertex(check, form, flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const sd::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kUsage;
  } catch (const sd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
