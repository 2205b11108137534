// fracvar: experiment harness over the C interface.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fracvar/fracvar.h"

namespace {

struct Settings {
  std::string out;
  std::vector<double> alpha;
  std::vector<int> N;
  std::vector<int> n;
  std::string function = "t4";
  std::string method;
  std::string example;
  double eps = 1e-4;
  double tol = 1e-10;
  int quad_n = 64;
  int points = 100;
};

// Thrown for anything the user can fix by changing arguments.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunError {
  std::string run;
  std::string status;
  std::string message;
};

struct FvError : std::runtime_error {
  fv_status status;
  FvError(fv_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(fv_status s) {
  if (s != FV_OK) throw FvError(s, fv_last_error());
}

struct CurveDeleter {
  void operator()(fv_curve* c) const { fv_curve_free(c); }
};
using Curve = std::unique_ptr<fv_curve, CurveDeleter>;

Curve make_curve(double a, double b, int n, const std::vector<double>& v) {
  fv_curve* c = nullptr;
  check(fv_curve_create(a, b, n, v.data(), &c));
  return Curve(c);
}

std::vector<double> values(const fv_curve* c) {
  int n = 0;
  check(fv_curve_mesh(c, nullptr, nullptr, &n));
  std::vector<double> v(static_cast<size_t>(n) + 1);
  check(fv_curve_values(c, v.data(), n + 1));
  return v;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Csv {
 public:
  explicit Csv(const std::vector<std::string>& header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

double node(double a, double b, int n, int i) { return i == n ? b : a + i * (b - a) / n; }

void validate_alphas(const std::vector<double>& alphas) {
  if (alphas.empty()) throw UsageError("alpha list is empty");
  for (double a : alphas)
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha must lie in (0,1), got " + num(a));
}
void validate_Ns(const std::vector<int>& Ns, int lo) {
  if (Ns.empty()) throw UsageError("N list is empty");
  for (int v : Ns)
    if (v < lo) throw UsageError("N must be at least " + std::to_string(lo));
}
void validate_ns(const std::vector<int>& ns) {
  if (ns.empty()) throw UsageError("n list is empty");
  for (int v : ns)
    if (v < 2) throw UsageError("n must be at least 2");
}

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> fallback) {
  return v.empty() ? fallback : v;
}

// --- subcommands ---------------------------------------------------------

std::string cmd_table_b(const Settings& s, std::vector<RunError>&) {
  const auto alphas = or_default(s.alpha, {0.1, 0.3, 0.5, 0.7, 0.9, 0.99});
  const auto Ns = or_default(s.N, {4, 7, 15, 30, 70, 120, 170});
  validate_alphas(alphas);
  validate_Ns(Ns, 1);
  std::vector<double> tab(alphas.size() * Ns.size());
  check(fv_b_table(alphas.data(), static_cast<int>(alphas.size()), Ns.data(),
                   static_cast<int>(Ns.size()), tab.data()));
  Csv csv({"alpha", "N", "B"});
  for (size_t i = 0; i < alphas.size(); ++i)
    for (size_t j = 0; j < Ns.size(); ++j)
      csv.row({num(alphas[i]), std::to_string(Ns[j]), num(tab[i * Ns.size() + j])});
  return csv.str();
}

std::string cmd_derivative(const Settings& s, std::vector<RunError>& errors) {
  const std::string& m = s.method.empty() ? std::string("moment") : s.method;
  const bool mesh_method = m == "gl" || m == "diethelm";
  const bool hadamard = m == "hadamard-moment";
  if (!mesh_method && !hadamard && m != "integer" && m != "moment" && m != "atanackovic")
    throw UsageError("unknown method '" + m + "'");
  double probe = 0.0;
  if (fv_function_eval(s.function.c_str(), 0, 1.5, &probe) != FV_OK)
    throw UsageError("unknown function '" + s.function + "'");
  const char* kind = hadamard ? "hadamard" : "rl";
  if (fv_function_exact(s.function.c_str(), kind, 0.5, 1.5, &probe) != FV_OK)
    throw UsageError("no exact " + std::string(kind) + " derivative for '" + s.function + "'");
  const auto alphas = or_default(s.alpha, {0.5});
  validate_alphas(alphas);
  if (s.points < 1) throw UsageError("points must be positive");

  Csv csv({"alpha", mesh_method ? "n" : "N", "t", "exact", "approx", "abs_error"});
  for (double alpha : alphas) {
    if (mesh_method) {
      const auto ns = or_default(s.n, {10, 20, 40, 80});
      validate_ns(ns);
      for (int n : ns) {
        const std::string run = "alpha=" + num(alpha) + " n=" + std::to_string(n);
        try {
          fv_curve* raw = nullptr;
          check(fv_curve_sample(0.0, 1.0, n, s.function.c_str(), &raw));
          Curve c(raw);
          std::vector<double> approx(static_cast<size_t>(n) + 1);
          if (m == "gl") {
            check(fv_gl_left(c.get(), alpha, approx.data(), n + 1));
          } else {
            double x0 = 0.0;
            check(fv_function_eval(s.function.c_str(), 0, 0.0, &x0));
            for (int i = 1; i <= n; ++i)
              check(fv_diethelm_caputo(c.get(), alpha, &x0, 1, i, &approx[static_cast<size_t>(i)]));
          }
          double x0 = 0.0, g = 0.0;
          check(fv_function_eval(s.function.c_str(), 0, 0.0, &x0));
          check(fv_gamma(1.0 - alpha, &g));
          for (int i = 1; i <= n; ++i) {
            const double t = node(0.0, 1.0, n, i);
            double ex = 0.0;
            check(fv_function_exact(s.function.c_str(), "rl", alpha, t, &ex));
            if (m == "diethelm") ex -= x0 * std::pow(t, -alpha) / g;
            const double ap = approx[static_cast<size_t>(i)];
            csv.row({num(alpha), std::to_string(n), num(t), num(ex), num(ap), num(std::abs(ap - ex))});
          }
        } catch (const FvError& e) {
          errors.push_back({run, fv_status_name(e.status), e.what()});
        }
      }
      continue;
    }
    const auto Ns = or_default(s.N, {1, 2, 3, 4});
    validate_Ns(Ns, hadamard || m == "integer" ? 0 : 1);
    const double a = hadamard ? 1.0 : 0.0;
    for (int N : Ns) {
      const std::string run = "alpha=" + num(alpha) + " N=" + std::to_string(N);
      try {
        std::vector<std::vector<std::string>> rows;
        for (int i = 1; i <= s.points; ++i) {
          const double t = node(a, a + 1.0, s.points, i);
          double ex = 0.0, ap = 0.0;
          check(fv_function_exact(s.function.c_str(), kind, alpha, t, &ex));
          check(fv_expand(s.function.c_str(), m.c_str(), alpha, N, t, s.quad_n, &ap));
          rows.push_back({num(alpha), std::to_string(N), num(t), num(ex), num(ap), num(std::abs(ap - ex))});
        }
        for (const auto& r : rows) csv.row(r);
      } catch (const FvError& e) {
        errors.push_back({run, fv_status_name(e.status), e.what()});
      }
    }
  }
  return csv.str();
}

std::string cmd_direct(const Settings& s, std::vector<RunError>& errors) {
  const std::string ex = s.example.empty() ? std::string("ex1") : s.example;
  int id = 0;
  if (ex == "ex1") id = 1;
  else if (ex == "ex2") id = 2;
  else if (ex == "ex3") id = 3;
  else throw UsageError("unknown example '" + ex + "' (ex1, ex2, ex3)");
  const auto ns = or_default(s.n, {5, 10, 20, 40});
  validate_ns(ns);
  const auto alphas = or_default(s.alpha, {0.5});
  validate_alphas(alphas);
  if (id != 2 && (alphas.size() != 1 || alphas[0] != 0.5))
    throw UsageError("examples 1 and 3 are fixed at alpha = 0.5");
  if (!(s.tol > 0.0)) throw UsageError("tol must be positive");

  Csv csv({"alpha", "n", "t", "approx", "exact", "max_error", "iterations", "residual"});
  for (double alpha : alphas) {
    fv_problem* raw = nullptr;
    check(fv_problem_example(id, alpha, &raw));
    std::unique_ptr<fv_problem, decltype(&fv_problem_free)> prob(raw, fv_problem_free);
    for (int n : ns) {
      const std::string run = ex + " alpha=" + num(alpha) + " n=" + std::to_string(n);
      try {
        fv_curve* sol = nullptr;
        int it = 0;
        double res = 0.0;
        check(fv_solve_direct(prob.get(), n, s.tol, 100, id != 3, &sol, &it, &res));
        Curve c(sol);
        const auto v = values(c.get());
        std::vector<double> ref(v.size());
        for (int i = 0; i <= n; ++i)
          check(fv_reference_solution(ex.c_str(), alpha, node(0.0, 1.0, n, i), &ref[static_cast<size_t>(i)]));
        auto rc = make_curve(0.0, 1.0, n, ref);
        double err = 0.0;
        check(fv_max_error(c.get(), rc.get(), &err));
        for (int i = 0; i <= n; ++i)
          csv.row({num(alpha), std::to_string(n), num(node(0.0, 1.0, n, i)), num(v[static_cast<size_t>(i)]),
                   num(ref[static_cast<size_t>(i)]), num(err), std::to_string(it), num(res)});
      } catch (const FvError& e) {
        errors.push_back({run, fv_status_name(e.status), e.what()});
      }
    }
  }
  return csv.str();
}

std::string cmd_indirect(const Settings& s, std::vector<RunError>& errors) {
  const std::string ex = s.example.empty() ? std::string("ex2-moment") : s.example;
  if (ex != "ex2-integer" && ex != "ex2-moment" && ex != "ex4-moment")
    throw UsageError("unknown example '" + ex + "' (ex2-integer, ex2-moment, ex4-moment)");
  const std::string& m = s.method.empty() ? std::string(ex == "ex4-moment" ? "tpbvp" : "closed") : s.method;
  if (m != "closed" && m != "tpbvp") throw UsageError("method must be closed or tpbvp");
  if (ex == "ex2-integer" && m == "tpbvp") throw UsageError("ex2-integer has a closed form only");
  if (ex == "ex4-moment" && m == "closed") throw UsageError("ex4-moment has no closed form");
  const auto alphas = or_default(s.alpha, {0.5});
  validate_alphas(alphas);
  const auto Ns = or_default(s.N, ex == "ex2-integer" ? std::vector<int>{1, 2, 3, 4}
                                                      : std::vector<int>{2, 4, 8});
  validate_Ns(Ns, ex == "ex2-integer" ? 0 : 2);
  const auto ns = or_default(s.n, {400});
  validate_ns(ns);
  if (ns.size() != 1) throw UsageError("indirect takes a single n");
  const int n = ns[0];
  if (!(s.eps > 0.0 && s.eps < 1.0 / n)) throw UsageError("eps must lie in (0, 1/n)");
  const char* refid = ex == "ex4-moment" ? "ex4" : "ex2";

  Csv csv({"alpha", "N", "t", "approx", "exact", "l2_error"});
  for (double alpha : alphas) {
    for (int N : Ns) {
      const std::string run = ex + " alpha=" + num(alpha) + " N=" + std::to_string(N);
      try {
        std::vector<double> v(static_cast<size_t>(n) + 1), ref(v.size());
        for (int i = 0; i <= n; ++i)
          check(fv_reference_solution(refid, alpha, node(0.0, 1.0, n, i), &ref[static_cast<size_t>(i)]));
        if (m == "closed") {
          const char* route = ex == "ex2-integer" ? "integer" : "moment";
          for (int i = 0; i <= n; ++i)
            check(fv_closed_form(route, alpha, N, node(0.0, 1.0, n, i), &v[static_cast<size_t>(i)]));
        } else {
          auto opts = fv_tpbvp_default_options();
          opts.eps = s.eps;
          fv_tpbvp_solution* sol = nullptr;
          check(fv_tpbvp_solve_example(ex == "ex4-moment" ? 4 : 2, alpha, N, n, &opts, &sol));
          std::unique_ptr<fv_tpbvp_solution, decltype(&fv_tpbvp_solution_free)> hold(sol, fv_tpbvp_solution_free);
          fv_curve* x = nullptr;
          check(fv_tpbvp_component(sol, 0, &x));
          Curve xc(x);
          v = values(xc.get());
        }
        auto a = make_curve(0.0, 1.0, n, v);
        auto b = make_curve(0.0, 1.0, n, ref);
        double l2 = 0.0;
        check(fv_l2_error(a.get(), b.get(), &l2));
        for (int i = 0; i <= n; ++i)
          csv.row({num(alpha), std::to_string(N), num(node(0.0, 1.0, n, i)), num(v[static_cast<size_t>(i)]),
                   num(ref[static_cast<size_t>(i)]), num(l2)});
      } catch (const FvError& e) {
        errors.push_back({run, fv_status_name(e.status), e.what()});
      }
    }
  }
  return csv.str();
}

std::string cmd_bounds(const Settings& s, std::vector<RunError>& errors) {
  const std::string& m = s.method.empty() ? std::string("moment") : s.method;
  if (m != "integer" && m != "moment" && m != "hadamard")
    throw UsageError("method must be integer, moment or hadamard");
  double probe = 0.0;
  if (fv_function_eval(s.function.c_str(), 0, 1.5, &probe) != FV_OK)
    throw UsageError("unknown function '" + s.function + "'");
  const auto alphas = or_default(s.alpha, {0.5});
  validate_alphas(alphas);
  const auto Ns = or_default(s.N, {2, 4, 6, 8, 10});
  validate_Ns(Ns, 1);
  if (s.points < 1 || s.quad_n < 1) throw UsageError("points and quad-n must be positive");

  Csv csv({"alpha", "N", "t", "abs_error", "bound", "dominated"});
  int violations_total = 0;
  for (double alpha : alphas) {
    for (int N : Ns) {
      const std::string run = "alpha=" + num(alpha) + " N=" + std::to_string(N);
      std::vector<double> t(static_cast<size_t>(s.points)), err(t.size()), bnd(t.size());
      std::vector<int> dom(t.size());
      int violations = 0;
      const fv_status st = fv_bound_sweep(s.function.c_str(), m.c_str(), alpha, N, s.points,
                                          s.quad_n, t.data(), err.data(), bnd.data(), dom.data(),
                                          &violations);
      if (st != FV_OK) {
        errors.push_back({run, fv_status_name(st), fv_last_error()});
        continue;
      }
      violations_total += violations;
      for (size_t i = 0; i < t.size(); ++i) {
        csv.row({num(alpha), std::to_string(N), num(t[i]), num(err[i]), num(bnd[i]),
                 dom[i] ? "true" : "false"});
      }
    }
  }
  if (violations_total > 0)
    std::cerr << "fracvar: bounds: " << violations_total << " undominated nodes\n";
  return csv.str();
}

struct Spec {
  const char* name;
  const char* description;
  std::vector<std::string> options;
  const char* method_help;
  const char* example_help;
};

void add_options(CLI::App* sub, Settings& s, const Spec& spec) {
  auto has = [&](const char* o) {
    return std::find(spec.options.begin(), spec.options.end(), o) != spec.options.end();
  };
  sub->add_option("--out", s.out, "Output CSV path (stdout when absent)");
  sub->add_option("--alpha", s.alpha, "Fractional orders")->delimiter(',');
  if (has("N")) sub->add_option("--N", s.N, "Expansion orders")->delimiter(',');
  if (has("n")) sub->add_option("--n", s.n, "Mesh sizes")->delimiter(',');
  if (has("function")) sub->add_option("--function", s.function, "Test function: t2, t4, exp2t, lnt");
  if (has("method")) sub->add_option("--method", s.method, spec.method_help);
  if (has("example")) sub->add_option("--example", s.example, spec.example_help);
  if (has("eps")) sub->add_option("--eps", s.eps, "Collocation offset at the singular endpoint");
  if (has("tol")) sub->add_option("--tol", s.tol, "Newton tolerance");
  if (has("quad-n")) sub->add_option("--quad-n", s.quad_n, "Quadrature panels for moments");
  if (has("points")) sub->add_option("--points", s.points, "Evaluation points per sweep");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional derivative approximations and fractional variational problems"};
  app.set_config("--config", "", "INI file with one section per subcommand");
  app.require_subcommand(1, 1);

  using Handler = std::string (*)(const Settings&, std::vector<RunError>&);
  const std::vector<std::pair<Spec, Handler>> commands = {
      {{"table-b", "B(alpha, N) coefficient table", {"N"}, "", ""}, cmd_table_b},
      {{"derivative", "Approximate fractional derivatives of a test function", {"N", "n", "function", "method", "quad-n", "points"},
        "integer, moment, atanackovic, hadamard-moment, gl or diethelm", ""},
       cmd_derivative},
      {{"direct", "Direct method on the catalog variational problems", {"n", "example", "tol"}, "", "ex1, ex2 or ex3"}, cmd_direct},
      {{"indirect", "Indirect method: closed forms and boundary value problems", {"N", "n", "example", "method", "eps"}, "closed or tpbvp",
        "ex2-integer, ex2-moment or ex4-moment"},
       cmd_indirect},
      {{"bounds", "Truncation error against its bound", {"N", "function", "method", "quad-n", "points"}, "integer, moment or hadamard", ""},
       cmd_bounds}};
  std::vector<CLI::App*> subs;
  // One settings block per subcommand so config sections stay separate.
  std::vector<Settings> settings(commands.size());
  for (size_t i = 0; i < commands.size(); ++i) {
    auto* sub = app.add_subcommand(commands[i].first.name, commands[i].first.description);
    sub->fallthrough();
    add_options(sub, settings[i], commands[i].first);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::vector<RunError> errors;
  std::string csv;
  std::string name;
  std::string out;
  try {
    for (size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) {
        name = commands[i].first.name;
        out = settings[i].out;
        csv = commands[i].second(settings[i], errors);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error\t" << name << "\tusage\t" << e.what() << "\n";
    return 1;
  } catch (const FvError& e) {
    std::cerr << "error\t" << name << "\t" << fv_status_name(e.status) << "\t" << e.what() << "\n";
    return 2;
  }

  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f || !(f << csv)) {
      std::cerr << "error\t" << name << "\tio\tcannot write " << out << "\n";
      return 1;
    }
  }
  for (const auto& e : errors)
    std::cerr << "error\t" << e.run << "\t" << e.status << "\t" << e.message << "\n";
  return errors.empty() ? 0 : 2;
}
