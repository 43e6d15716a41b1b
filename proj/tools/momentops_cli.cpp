// Command-line front door: load a functional spec, build the monic OPS,
// apply Uvarov / Christoffel modifications, verify the identities, and emit
// CSV reports. Exit code 0 iff every requested verification passed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "momentops/christoffel.hpp"
#include "momentops/families.hpp"
#include "momentops/ops.hpp"
#include "momentops/random.hpp"
#include "momentops/specfile.hpp"
#include "momentops/uvarov.hpp"

namespace {

using namespace momentops;

struct RunConfig {
  std::string spec_path;
  int degree = 4;
  std::string backend = "exact";
  double tol = 1e-10;
  std::string out_dir = "out";
  unsigned long long seed = 1;
  std::string experiment;
};

std::string fmt(const Rational& x) { return to_string(x); }
std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header) {
    std::filesystem::create_directories(path.parent_path());
    out_.open(path);
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << "\n";
  }
  template <typename... Args>
  void row(const Args&... args) {
    bool first = true;
    ((out_ << (first ? "" : ","), first = false, out_ << args), ...);
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

template <typename T>
double residual_tol(const RunConfig& cfg) {
  return scalar_traits<T>::exact ? 0.0 : cfg.tol;
}

std::string residual_cell(double r, bool exact_backend) {
  if (exact_backend && r == 0.0) return "EXACT";
  return fmt(r);
}

template <typename T>
int cmd_build(const RunConfig& cfg, const MomentFunctional<T>& u) {
  std::filesystem::path out(cfg.out_dir);
  auto verdict = is_quasi_definite(u, cfg.degree, cfg.tol);
  {
    CsvWriter w(out / "quasi_definite.csv", "degree,witness,verdict");
    for (std::size_t k = 0; k < verdict.per_degree.size(); ++k)
      w.row(k, verdict.witness[k], verdict.per_degree[k] ? "ok" : "FAIL");
  }
  int top = cfg.degree;
  if (auto f = verdict.first_failure()) top = *f - 1;
  if (top < 0) {
    std::cerr << "functional fails quasi-definiteness at degree 0\n";
    return 1;
  }
  OPSystem<T> ops(u, top);
  {
    CsvWriter w(out / "gram.csv", "degree,row,col,value");
    for (int n = 0; n <= top; ++n) {
      const auto& H = ops.gram(n);
      for (int i = 0; i < H.rows(); ++i)
        for (int j = 0; j < H.cols(); ++j) w.row(n, i, j, fmt(H(i, j)));
    }
  }
  {
    CsvWriter w(out / "three_term.csv", "degree,variable,coeff,row,col,value");
    for (int n = 0; n + 1 <= top; ++n)
      for (int i = 1; i <= u.dimension(); ++i) {
        auto [B, C] = ops.three_term(n, i);
        for (int r = 0; r < B.rows(); ++r)
          for (int c = 0; c < B.cols(); ++c) w.row(n, i, "B", r, c, fmt(B(r, c)));
        for (int r = 0; r < C.rows(); ++r)
          for (int c = 0; c < C.cols(); ++c) w.row(n, i, "C", r, c, fmt(C(r, c)));
      }
  }
  std::cout << "build: OPS through degree " << top << " written to "
            << out.string() << "\n";
  return verdict.all() ? 0 : 1;
}

template <typename T>
int cmd_uvarov(const RunConfig& cfg, const MomentFunctional<T>& u,
               const UvarovSpec<T>& spec) {
  std::filesystem::path out(cfg.out_dir);
  double tol = residual_tol<T>(cfg);
  bool exact = scalar_traits<T>::exact;
  OPSystem<T> ops(u, cfg.degree);
  UvarovSystem<T> uv(ops, spec, cfg.degree);

  {
    CsvWriter w(out / "uvarov_certificates.csv", "degree,det_magnitude,verdict");
    for (const auto& c : uv.certificates())
      w.row(c.degree, c.det_mag, c.invertible ? "ok" : "FAIL");
  }
  if (!uv.certified_through(cfg.degree)) {
    for (const auto& c : uv.certificates())
      if (!c.invertible) {
        std::cerr << "uvarov: certificate failed at degree " << c.degree << "\n";
        break;
      }
    return 1;
  }

  auto v = uvarov_functional(u, spec);
  bool all_ok = true;
  CsvWriter w(out / "uvarov_report.csv", "degree,check,residual,verdict");
  for (int n = 0; n <= cfg.degree; ++n) {
    const auto& Q = uv.connect(n);
    // orthogonality <v, Q_n X_m^t> = 0 for m < n
    double r_orth = 0.0;
    for (int m = 0; m < n; ++m) {
      VectorPolynomial<T> xm = VectorPolynomial<T>::monic_leading(u.dimension(), m);
      Matrix<T> ip = OPSystem<T>::bilinear(v, Q, xm);
      r_orth = std::max(r_orth, ip.max_abs());
    }
    bool ok1 = n == 0 || r_orth <= tol;
    w.row(n, "orthogonality", residual_cell(r_orth, exact), ok1 ? "ok" : "FAIL");

    Matrix<T> direct = OPSystem<T>::bilinear(v, Q, Q);
    double r_gram = (uv.modified_gram(n) - direct).max_abs();
    bool ok2 = r_gram <= tol;
    w.row(n, "gram_vs_direct", residual_cell(r_gram, exact), ok2 ? "ok" : "FAIL");

    Matrix<T> prod = uv.modified_gram(n) * uv.modified_gram_inverse(n);
    double r_inv = (prod - Matrix<T>::identity(prod.rows())).max_abs();
    bool ok3 = r_inv <= tol;
    w.row(n, "gram_inverse", residual_cell(r_inv, exact), ok3 ? "ok" : "FAIL");
    all_ok = all_ok && ok1 && ok2 && ok3;
  }
  std::cout << "uvarov: reports written to " << out.string() << "\n";
  return all_ok ? 0 : 1;
}

template <typename T>
int cmd_christoffel(const RunConfig& cfg, const MomentFunctional<T>& u,
                    const QuadraticMultiplier<T>& lam) {
  std::filesystem::path out(cfg.out_dir);
  double tol = residual_tol<T>(cfg);
  bool exact = scalar_traits<T>::exact;
  int top = cfg.degree;

  if (u.apply(lam.to_polynomial()) == T(0)) {
    std::cerr << "christoffel: <u, lambda> = 0\n";
    return 1;
  }
  OPSystem<T> uops(u, top);
  auto v = left_multiply(u, lam.to_polynomial());
  auto vv = is_quasi_definite(v, top, cfg.tol);
  if (!vv.all()) {
    std::cerr << "christoffel: lambda*u fails quasi-definiteness at degree "
              << *vv.first_failure() << "\n";
    return 1;
  }
  OPSystem<T> vops(v, top);
  auto conn = connection(uops, vops, top);

  bool all_ok = true;
  CsvWriter w(out / "christoffel_report.csv", "degree,equation,residual,verdict");
  auto report = [&](int n, const std::string& eq, double r, bool ok) {
    w.row(n, eq, residual_cell(r, exact), ok ? "ok" : "FAIL");
    all_ok = all_ok && ok;
  };

  // connection residual P_n - Q_n - M_n Q_{n-1} - N_n Q_{n-2}
  for (int n = 0; n <= top; ++n) {
    double r = 0.0;
    for (int k = 0; k <= n; ++k) {
      Matrix<T> acc = uops.polynomial(n).G[k] - vops.polynomial(n).G[k];
      if (n >= 1 && k <= n - 1)
        acc = acc - conn.Mn(n) * vops.polynomial(n - 1).G[k];
      if (n >= 2 && k <= n - 2)
        acc = acc - conn.Nn(n) * vops.polynomial(n - 2).G[k];
      r = std::max(r, acc.max_abs());
    }
    report(n, "connection", r, r <= tol);
  }
  // (4.9); both sides grow with the Gram entries, so the float verdict is
  // relative to their magnitude
  for (int n = 2; n <= top; ++n) {
    Matrix<T> lhs = conn.Nn(n) * vops.gram(n - 2);
    Matrix<T> rhs = uops.gram(n) * lam.shift_aggregate_2(n - 2).transpose();
    Matrix<T> r = lhs - rhs;
    double scale = std::max(1.0, std::max(lhs.max_abs(), rhs.max_abs()));
    report(n, "4.9", r.max_abs(), r.is_zero(tol * scale));
  }
  // transported coefficients vs v's own (4.5)-(4.6), and (4.7)-(4.8)
  auto tr = transport_three_term(uops, conn, tol);
  for (int n = 0; n + 1 < top; ++n)
    for (int i = 1; i <= u.dimension(); ++i) {
      auto [Bv, Cv] = vops.three_term(n, i);
      double rb = (tr.Bhat[n][i - 1] - Bv).max_abs();
      report(n, "4.5", rb, rb <= tol);
      if (n >= 1) {
        double rc = (tr.Chat[n][i - 1] - Cv).max_abs();
        report(n, "4.6", rc, rc <= tol);
      }
    }
  for (const auto& ver : tr.verdicts)
    report(ver.degree, ver.equation, ver.residual, ver.holds);
  // lambda round-trip, scale = Hhat_0
  {
    auto rec = recover_multiplier(uops, conn, vops.gram(0)(0, 0));
    Polynomial<T> diff = rec.to_polynomial() - lam.to_polynomial();
    double r = 0.0;
    for (const auto& [nu, c] : diff.terms())
      r = std::max(r, scalar_traits<T>::magnitude(c));
    report(0, "lambda_recovery", r, r <= tol);
  }
  std::cout << "christoffel: report written to " << out.string() << "\n";
  return all_ok ? 0 : 1;
}

int cmd_experiment(const RunConfig& cfg) {
  std::filesystem::path out(cfg.out_dir);
  double mu = 0.5;
  if (cfg.experiment == "ball-mass-limit") {
    bool ok = true;
    CsvWriter w(out / "ball_mass_limit.csv", "lambda,n,K_n,limit,rel_err");
    for (double lb : {0.5, 1.0, 2.0}) {
      auto rows = ball_mass_limit_table(mu, 2, lb, {50, 100, 200});
      for (const auto& r : rows) {
        w.row(lb, r.n, fmt(r.value), fmt(r.limit), fmt(r.rel_err));
        ok = ok && (r.n < 200 || r.rel_err < 0.02);
      }
      for (std::size_t i = 1; i < rows.size(); ++i)
        ok = ok && rows[i].rel_err < rows[i - 1].rel_err;
    }
    return ok ? 0 : 1;
  }
  if (cfg.experiment == "ball-interior") {
    CsvWriter w(out / "ball_interior.csv", "n,ratio,limit,rel_err");
    bool ok = true;
    for (const auto& r : ball_interior_table(mu, 2, 1.0, 0.5, {50, 100, 200})) {
      w.row(r.n, fmt(r.value), fmt(r.limit), fmt(r.rel_err));
      ok = ok && (r.n < 200 || r.rel_err < 0.05);
    }
    return ok ? 0 : 1;
  }
  if (cfg.experiment == "adjacent") {
    CsvWriter w(out / "adjacent_residual.csv", "n,row,max_residual");
    bool ok = true;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-0.7, 0.7);
    for (int n = 2; n <= 6; ++n) {
      auto rel = adjacent_relation(mu, n);
      auto ents = disk_entries(n);
      auto prev = disk_entries(n - 2);
      std::vector<double> worst(ents.size(), 0.0);
      for (int trial = 0; trial < 20; ++trial) {
        double x = coord(rng), y = coord(rng);
        for (std::size_t r = 0; r < ents.size(); ++r) {
          double lhs = disk_basis_eval(mu, n, ents[r].first, ents[r].second, x, y);
          double rhs = 0.0;
          for (std::size_t c = 0; c < ents.size(); ++c)
            rhs += rel.F(static_cast<int>(r), static_cast<int>(c)) *
                   disk_basis_eval(mu + 1, n, ents[c].first, ents[c].second, x, y);
          for (std::size_t c = 0; c < prev.size(); ++c)
            rhs += rel.N(static_cast<int>(r), static_cast<int>(c)) *
                   disk_basis_eval(mu + 1, n - 2, prev[c].first, prev[c].second, x, y);
          worst[r] = std::max(worst[r], std::abs(lhs - rhs));
        }
      }
      for (std::size_t r = 0; r < worst.size(); ++r) {
        w.row(n, r, fmt(worst[r]));
        ok = ok && worst[r] < 1e-12;
      }
    }
    return ok ? 0 : 1;
  }
  std::cerr << "unknown experiment '" << cfg.experiment
            << "' (known: ball-mass-limit, ball-interior, adjacent)\n";
  return 2;
}

template <typename T>
int run_backend(const std::string& command, const RunConfig& cfg) {
  std::optional<FunctionalSpec> spec;
  if (!cfg.spec_path.empty()) spec = load_spec(cfg.spec_path);

  auto functional = [&]() -> MomentFunctional<T> {
    if (spec) return make_functional<T>(*spec);
    std::mt19937_64 rng(cfg.seed);
    return random_quasi_definite<T>(rng, 2, cfg.degree);
  };

  if (command == "build") return cmd_build<T>(cfg, functional());

  if (command == "uvarov") {
    auto u = functional();
    std::optional<UvarovSpec<T>> us;
    if (spec) us = make_uvarov_spec<T>(*spec);
    if (!us) {
      std::mt19937_64 rng(cfg.seed + 1);
      us = random_uvarov_spec<T>(rng, u.dimension(), 2);
    }
    return cmd_uvarov<T>(cfg, u, *us);
  }

  if (command == "christoffel") {
    auto u = functional();
    std::optional<QuadraticMultiplier<T>> lam;
    if (spec) lam = make_multiplier<T>(*spec);
    if (!lam) {
      std::mt19937_64 rng(cfg.seed + 2);
      lam = random_christoffel_multiplier<T>(rng, u, cfg.degree);
    }
    return cmd_christoffel<T>(cfg, u, *lam);
  }

  if (command == "verify-all") {
    auto u = functional();
    int rc = cmd_build<T>(cfg, u);
    std::optional<UvarovSpec<T>> us;
    std::optional<QuadraticMultiplier<T>> lam;
    if (spec) {
      us = make_uvarov_spec<T>(*spec);
      lam = make_multiplier<T>(*spec);
    } else {
      std::mt19937_64 rng(cfg.seed + 1);
      us = random_uvarov_spec<T>(rng, u.dimension(), 2);
      lam = random_christoffel_multiplier<T>(rng, u, cfg.degree);
    }
    if (us) rc = std::max(rc, cmd_uvarov<T>(cfg, u, *us));
    if (lam) rc = std::max(rc, cmd_christoffel<T>(cfg, u, *lam));
    return rc;
  }

  std::cerr << "unknown command\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moment-functional OPS toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--spec", cfg.spec_path, "functional specification file (JSON)");
  app.add_option("--degree", cfg.degree, "maximum working degree")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--backend", cfg.backend, "exact|float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", cfg.tol, "float-backend tolerance");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--seed", cfg.seed, "seed for generated rational instances");

  auto* c_build = app.add_subcommand("build", "build the monic OPS and tables");
  auto* c_uv = app.add_subcommand("uvarov", "point-mass modification report");
  auto* c_ch = app.add_subcommand("christoffel",
                                  "degree-2 multiplier verification report");
  auto* c_all = app.add_subcommand("verify-all", "run every applicable check");
  auto* c_exp = app.add_subcommand("experiment", "asymptotic tables (float)");
  c_exp->add_option("name", cfg.experiment,
                    "ball-mass-limit | ball-interior | adjacent")
      ->required();
  // allow the shared flags to appear after the subcommand name
  for (auto* sub : {c_build, c_uv, c_ch, c_all, c_exp}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  std::string command;
  for (auto* sub : {c_build, c_uv, c_ch, c_all, c_exp})
    if (sub->parsed()) command = sub->get_name();

  try {
    // experiments are float-only by nature; the backend flag is ignored there
    if (command == "experiment") return cmd_experiment(cfg);
    if (cfg.backend == "exact")
      return run_backend<momentops::Rational>(command, cfg);
    return run_backend<double>(command, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
