#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cavcal/bounds.hpp"
#include "cavcal/calculus.hpp"
#include "cavcal/gridsup.hpp"
#include "cavcal/io.hpp"
#include "cavcal/maximize.hpp"
#include "cavcal/matfun.hpp"
#include "cavcal/svd3.hpp"
#include "cavcal/verify.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace cavcal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

// The 11 load values of the reference tables.
const std::vector<real> kTableGrid = {1.01, 1.1, 1.2, 1.3, 1.4, 1.5,
                                      1.6,  1.7, 1.8, 1.9, 2.0};

struct CommonOpts {
  std::uint64_t seed = 11;
  int workers = 0;
  bool as_json = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--seed", c.seed, "base RNG seed (env CAVCAL_SEED overrides)");
  cmd->add_option("--workers", c.workers, "worker threads, 0 = hardware");
  cmd->add_flag("--json", c.as_json, "emit a JSON document instead of CSV");
  cmd->add_option("--out", c.out, "write the output to this file");
}

void apply_seed_env(CommonOpts& c) {
  const char* env = std::getenv("CAVCAL_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw ParamRange("CAVCAL_SEED is not an unsigned integer");
  c.seed = v;
}

void emit(const std::string& payload, const CommonOpts& c) {
  if (c.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ParamRange("cannot open output file: " + c.out);
  f << payload;
}

json config_json(const CommonOpts& c) {
  return json{{"seed", c.seed}, {"workers", c.workers}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// --mat FILE (or '-' for stdin) / --entries "9 numbers"
struct MatrixInput {
  std::string path;
  std::string entries;

  Mat3 load() const {
    if (!entries.empty()) return parse_mat3(entries);
    if (path == "-") return read_mat3(std::cin);
    std::ifstream f(path);
    if (!f) throw ParamRange("cannot open matrix file: " + path);
    return read_mat3(f);
  }
};

void add_matrix_input(CLI::App* cmd, MatrixInput& m) {
  auto* file = cmd->add_option("--mat", m.path,
                               "matrix file (9 numbers, '-' for stdin)");
  auto* ent = cmd->add_option("--entries", m.entries,
                              "matrix given inline as 9 numbers");
  file->excludes(ent);
  cmd->require_option(1, 0);
}

MaterialParams make_material(real q, const std::string& kappa_mode,
                             real kappa_value, real hprime) {
  if (!(q > 2 && q < 3)) throw ParamRange("q must lie in (2,3)");
  MaterialParams mat{q, kappa_value, hprime};
  if (kappa_mode == "min")
    mat.kappa = kappa_min(q);
  else if (kappa_mode == "max")
    mat.kappa = kappa_max(q);
  else if (kappa_mode != "value")
    throw ParamRange("kappa-mode must be min, max or value");
  mat.validate();
  return mat;
}

json rows_json(const CsvTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row;
    for (size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
    rows.push_back(row);
  }
  return rows;
}

int finish_table(const std::string& command, const CsvTable& table,
                 const json& config, const json& extra, const CommonOpts& c) {
  if (c.as_json) {
    json doc{{"command", command}, {"config", config}, {"rows", rows_json(table)}};
    for (auto it = extra.begin(); it != extra.end(); ++it)
      doc[it.key()] = it.value();
    emit(dump(doc), c);
  } else {
    emit(table.to_string(), c);
    if (!extra.empty()) std::cerr << "# " << extra.dump() << "\n";
  }
  return kExitOk;
}

// ---- subcommand payload builders ----------------------------------------

int run_svd(const MatrixInput& input, const CommonOpts& c) {
  const Mat3 a = input.load();
  const Svd3 d = svd3(a);
  if (c.as_json) {
    auto mat_json = [](const Mat3& m) {
      json rows = json::array();
      for (int r = 0; r < 3; ++r)
        rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
      return rows;
    };
    json doc{{"command", "svd"},
             {"config", json::object()},
             {"result",
              {{"sigma", {d.sigma[0], d.sigma[1], d.sigma[2]}},
               {"u", mat_json(d.u_factor)},
               {"v", mat_json(d.v_factor)}}}};
    emit(dump(doc), c);
    return kExitOk;
  }
  std::string text = "component,c1,c2,c3\n";
  text += "sigma," + format_real(d.sigma[0]) + "," + format_real(d.sigma[1]) +
          "," + format_real(d.sigma[2]) + "\n";
  for (int r = 0; r < 3; ++r)
    text += "u" + std::to_string(r + 1) + "," + format_real(d.u_factor(r, 0)) +
            "," + format_real(d.u_factor(r, 1)) + "," +
            format_real(d.u_factor(r, 2)) + "\n";
  for (int r = 0; r < 3; ++r)
    text += "v" + std::to_string(r + 1) + "," + format_real(d.v_factor(r, 0)) +
            "," + format_real(d.v_factor(r, 1)) + "," +
            format_real(d.v_factor(r, 2)) + "\n";
  emit(text, c);
  return kExitOk;
}

int run_eval(const MatrixInput& input, const std::string& fn, real lambda,
             const std::string& kappa_mode, real q, real kappa_value,
             real hprime, const CommonOpts& c) {
  const Mat3 a = input.load();
  const LoadParam load{lambda};
  real value = 0;
  if (fn == "P")
    value = P(a, load);
  else if (fn == "N")
    value = N(a, load);
  else if (fn == "G")
    value = G(a, load);
  else if (fn == "Gminus")
    value = G_minus(a, load);
  else if (fn == "H")
    value = H(a, load);
  else if (fn == "K")
    value = K_hat(a);
  else if (fn == "m2")
    value = m_l(a, load, 2, Variant::abs);
  else if (fn == "m3")
    value = m_l(a, load, 3, Variant::abs);
  else if (fn == "F2")
    value = F2(a, load, make_material(q, kappa_mode, kappa_value, hprime));
  else if (fn == "W")
    value = stored_energy(a, make_material(q, kappa_mode, kappa_value, hprime));
  else
    throw ParamRange("unknown function: " + fn);

  if (c.as_json) {
    emit(dump(json{{"command", "eval"},
                   {"config", {{"fn", fn}, {"lambda", lambda}}},
                   {"result", {{"value", value}}}}),
         c);
  } else {
    emit("fn,value\n" + fn + "," + format_real(value) + "\n", c);
  }
  return kExitOk;
}

int run_verify(std::uint64_t seed, const std::string& filter, real broken_g,
               const CommonOpts& c) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.filter = filter;
  opt.g_bias = broken_g;
  const auto lines = run_verify_suite(opt);
  bool all_pass = true;
  std::string text;
  json rows = json::array();
  for (const auto& l : lines) {
    all_pass = all_pass && l.pass;
    if (c.as_json) {
      rows.push_back({{"name", l.name},
                      {"analytic", l.analytic},
                      {"observed", l.observed},
                      {"error", l.error},
                      {"pass", l.pass}});
    } else {
      text += l.name + " analytic=" + format_real(l.analytic) +
              " observed=" + format_real(l.observed) +
              " error=" + format_real(l.error) + (l.pass ? " PASS" : " FAIL") +
              "\n";
    }
  }
  if (c.as_json)
    emit(dump(json{{"command", "verify"},
                   {"config", {{"seed", seed}, {"filter", filter}}},
                   {"rows", rows}}),
         c);
  else
    emit(text, c);
  return all_pass ? kExitOk : kExitCheckFailure;
}

EstimateOptions make_estimate_options(const CommonOpts& c, int restarts,
                                      real alpha, real epsilon, int max_iter) {
  EstimateOptions opt;
  opt.restarts = restarts;
  opt.alpha = alpha;
  opt.seed = c.seed;
  opt.epsilon = epsilon;
  opt.max_iter = max_iter;
  opt.workers = c.workers;
  return opt;
}

int check_convergence(const SupEstimate& est) {
  if (!est.top_k.empty() && !est.top_k.front().converged) {
    std::cerr << "cavcal: best ascent did not converge within the iteration "
                 "budget\n";
    return kExitNumericalFailure;
  }
  return kExitOk;
}

int run_m(int l, Variant variant, real lambda, const EstimateOptions& opt,
          const CommonOpts& c) {
  const SupEstimate est = estimate_M({lambda}, l, variant, opt);
  const int status = check_convergence(est);

  CsvTable t;
  t.header = {"rank", "value", "c1"};
  for (size_t i = 0; i < est.top_k.size(); ++i) {
    const real c1 = frobenius_norm(
        sub_scaled_identity(est.top_k[i].maximizer, lambda));
    t.rows.push_back({real(i + 1), est.top_k[i].value, c1});
  }
  json extra{{"value", est.value},
             {"c1", t.rows.empty() ? 0.0 : t.rows.front()[2]},
             {"c1_spread", {est.c1_spread.first, est.c1_spread.second}}};
  json config = config_json(c);
  config["l"] = l;
  config["variant"] = variant == Variant::abs ? "abs" : "neg";
  config["lambda"] = lambda;
  config["restarts"] = opt.restarts;
  config["alpha"] = opt.alpha;
  const int emitted = finish_table("m", t, config, extra, c);
  return status != kExitOk ? status : emitted;
}

int run_c1(Variant variant, real lambda, const EstimateOptions& opt,
           const CommonOpts& c) {
  const SupEstimate est = estimate_M({lambda}, 3, variant, opt);
  const int status = check_convergence(est);
  const real c1 = frobenius_norm(
      sub_scaled_identity(est.top_k.front().maximizer, lambda));
  CsvTable t;
  t.header = {"lambda", "c1", "c1_min", "c1_max"};
  t.rows.push_back({lambda, c1, est.c1_spread.first, est.c1_spread.second});
  json config = config_json(c);
  config["lambda"] = lambda;
  config["restarts"] = opt.restarts;
  const int emitted = finish_table("c1", t, config, json::object(), c);
  return status != kExitOk ? status : emitted;
}

SampleShape parse_shape(const std::string& s) {
  if (s == "symmetric") return SampleShape::symmetric;
  if (s == "half-symmetric") return SampleShape::half_symmetric;
  if (s == "full") return SampleShape::full;
  throw ParamRange("sampling must be symmetric, half-symmetric or full");
}

int run_grid_sup(int l, Variant variant, const GridSupOptions& opt,
                 const CommonOpts& c) {
  const SupremumTable table = algorithm_b(l, variant, opt);
  CsvTable t;
  t.header = {"lambda", "value"};
  for (size_t j = 0; j < table.lambda_grid.size(); ++j)
    t.rows.push_back({table.lambda_grid[j], table.values[j]});
  json config = config_json(c);
  config["l"] = l;
  config["variant"] = variant == Variant::abs ? "abs" : "neg";
  config["lmin"] = opt.lambda_minus;
  config["lmax"] = opt.lambda_plus;
  config["np"] = opt.n_points;
  config["n"] = opt.n_samples;
  return finish_table("grid-sup", t, config, json::object(), c);
}

int run_fit(const std::string& model, const std::string& in_path,
            const CommonOpts& c) {
  std::ifstream f(in_path);
  if (!f) throw ParamRange("cannot open input csv: " + in_path);
  const auto grid = read_csv_pairs(f);
  FitResult fit;
  if (model == "inverse")
    fit = fit_inverse(grid);
  else if (model == "affine")
    fit = fit_affine(grid);
  else
    throw ParamRange("model must be inverse or affine");

  CsvTable t;
  if (model == "inverse") {
    t.header = {"nu", "max_abs_deviation"};
    t.rows.push_back({fit.coefficients[0], fit.max_abs_deviation});
  } else {
    t.header = {"nu2", "nu3", "max_abs_deviation"};
    t.rows.push_back(
        {fit.coefficients[0], fit.coefficients[1], fit.max_abs_deviation});
  }
  return finish_table("fit", t, json{{"model", model}, {"in", in_path}},
                      json::object(), c);
}

int run_fixed_point(real lambda, real nu1, const CommonOpts& c) {
  const real cstar =
      fixed_point_cstar(conjecture_M2(), conjecture_M3(nu1, lambda));
  CsvTable t;
  t.header = {"lambda", "nu1", "c_star"};
  t.rows.push_back({lambda, nu1, cstar});
  return finish_table("fixed-point", t,
                      json{{"lambda", lambda}, {"nu1", nu1}}, json::object(),
                      c);
}

int run_bound(real q, const std::string& kappa_mode, real kappa_value,
              real lambda, real nu1, const CommonOpts& c) {
  const MaterialParams mat = make_material(q, kappa_mode, kappa_value, 0.0);
  const BoundReport rep = lambda_bound(q, mat.kappa, {lambda}, nu1);
  std::cerr << "# exponent convention: M2^(q-3) M3^(2-q)\n";
  CsvTable t;
  t.header = {"q",         "kappa", "lambda",
              "c_star",    "term_est1", "term_cstar",
              "rhs",       "hprime_threshold"};
  t.rows.push_back({rep.q, rep.kappa, rep.lambda, rep.c_star, rep.term_est1,
                    rep.term_cstar, rep.rhs, rep.satisfied_for_hprime});
  json config{{"q", q}, {"kappa_mode", kappa_mode}, {"lambda", lambda},
              {"nu1", nu1}};
  return finish_table("bound", t, config, json::object(), c);
}

int run_check(const std::string& suite, long long samples,
              const CommonOpts& c) {
  RngStream rng(c.seed, 0);
  bool pass = true;
  std::string text;
  if (suite == "g-bound") {
    RngStream gen(c.seed, 1);
    for (int i = 0; i < 100 && pass; ++i) {
      const Mat3 a = random_matrix(gen, 3.0, false);
      const auto abc = alpha_beta_gamma(a, {gen.uniform(0.5, 2.5)});
      pass = g_bound_check(abc, samples / 100 + 1, rng).ok;
    }
    text = std::string("g-bound ") + (pass ? "PASS" : "FAIL") + "\n";
  } else if (suite == "mintrace") {
    pass = mintrace_check(rng, samples);
    text = std::string("mintrace ") + (pass ? "PASS" : "FAIL") + "\n";
  } else if (suite == "bartok") {
    RngStream gen(c.seed, 1);
    long long done = 0;
    while (done < samples && pass) {
      const Mat3 a = random_matrix(gen, 3.0, false);
      if (determinant(a) <= 0) continue;
      ++done;
      for (real lam : {1.0, 1.5, 2.0}) pass = pass && bartok_check(a, {lam}).ok;
    }
    text = std::string("bartok ") + (pass ? "PASS" : "FAIL") + "\n";
  } else if (suite == "zy") {
    for (int i = 0; i <= 100; ++i)
      pass = pass && zy_compare(2 + real(i) / 100, 0.4501).z_less;
    pass = pass && !zy_compare(3.0, 0.1923).z_less;
    text = std::string("zy ") + (pass ? "PASS" : "FAIL") + "\n";
  } else {
    throw ParamRange("suite must be g-bound, mintrace, bartok or zy");
  }
  if (c.as_json)
    emit(dump(json{{"command", "check"},
                   {"config", {{"suite", suite}, {"samples", samples}}},
                   {"result", {{"pass", pass}}}}),
         c);
  else
    emit(text, c);
  return pass ? kExitOk : kExitCheckFailure;
}

struct SweepRow {
  real lambda;
  real value;
  real c1;
  real c1_min;
  real c1_max;
  bool converged;
};

std::vector<SweepRow> sweep_estimates(const std::vector<real>& grid, int l,
                                      Variant variant,
                                      const EstimateOptions& opt) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (real lam : grid) {
    const SupEstimate est = estimate_M({lam}, l, variant, opt);
    const real c1 = frobenius_norm(
        sub_scaled_identity(est.top_k.front().maximizer, lam));
    rows.push_back({lam, est.value, c1, est.c1_spread.first,
                    est.c1_spread.second, est.top_k.front().converged});
  }
  return rows;
}

void warn_wide_spread(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    if (r.c1_max - r.c1_min > 0.1) {
      std::cerr << "WARN: top-15 c1 spread " << format_real(r.c1_max - r.c1_min)
                << " at lambda=" << format_real(r.lambda)
                << " (estimate may be underpowered)\n";
    }
  }
}

int sweep_status(const std::vector<SweepRow>& rows) {
  for (const auto& r : rows) {
    if (!r.converged) {
      std::cerr << "cavcal: ascent at lambda=" << format_real(r.lambda)
                << " did not converge\n";
      return kExitNumericalFailure;
    }
  }
  return kExitOk;
}

int run_table1(const EstimateOptions& opt, const CommonOpts& c) {
  const auto rows = sweep_estimates(kTableGrid, 3, Variant::abs, opt);
  warn_wide_spread(rows);
  std::vector<std::pair<real, real>> grid;
  for (const auto& r : rows) grid.emplace_back(r.lambda, r.value);
  const FitResult fit = fit_inverse(grid);
  CsvTable t;
  t.header = {"lambda", "M3", "nu1_over_lambda", "deviation"};
  for (const auto& r : rows) {
    const real model = fit.eval(r.lambda);
    t.rows.push_back({r.lambda, r.value, model, r.value - model});
  }
  json config = config_json(c);
  config["restarts"] = opt.restarts;
  config["alpha"] = opt.alpha;
  json extra{{"fit", {{"nu1", fit.coefficients[0]},
                      {"max_abs_deviation", fit.max_abs_deviation}}}};
  const int emitted = finish_table("table1", t, config, extra, c);
  const int status = sweep_status(rows);
  return status != kExitOk ? status : emitted;
}

int run_table2(const EstimateOptions& opt, const std::vector<real>& grid_in,
               const CommonOpts& c) {
  const auto rows = sweep_estimates(grid_in, 3, Variant::abs, opt);
  warn_wide_spread(rows);
  std::vector<std::pair<real, real>> grid;
  for (const auto& r : rows) grid.emplace_back(r.lambda, r.c1);
  std::optional<FitResult> fit;
  if (grid.size() >= 2) fit = fit_affine(grid);
  CsvTable t;
  t.header = {"lambda", "c1", "model", "deviation", "c1_min", "c1_max"};
  for (const auto& r : rows) {
    const real model = fit ? fit->eval(r.lambda) : r.c1;
    t.rows.push_back(
        {r.lambda, r.c1, model, r.c1 - model, r.c1_min, r.c1_max});
  }
  json config = config_json(c);
  config["restarts"] = opt.restarts;
  json extra = json::object();
  if (fit)
    extra["fit"] = {{"nu2", fit->coefficients[0]},
                    {"nu3", fit->coefficients[1]},
                    {"max_abs_deviation", fit->max_abs_deviation}};
  const int emitted = finish_table("table2", t, config, extra, c);
  const int status = sweep_status(rows);
  return status != kExitOk ? status : emitted;
}

std::vector<real> fig_grid() {
  std::vector<real> g;
  for (int i = 0; i <= 10; ++i) g.push_back(1.0 + 0.1 * i);
  return g;
}

int run_fig_algA(const std::string& name, Variant variant,
                 const EstimateOptions& opt, const CommonOpts& c) {
  const auto rows = sweep_estimates(fig_grid(), 3, variant, opt);
  std::vector<std::pair<real, real>> grid;
  for (const auto& r : rows) grid.emplace_back(r.lambda, r.value);
  const FitResult fit = fit_inverse(grid);
  CsvTable t;
  const bool with_c1 = name == "fig1";
  t.header = {"lambda", "observed", "model", "difference"};
  if (with_c1) {
    t.header.push_back("c1");
    t.header.push_back("c1_min");
    t.header.push_back("c1_max");
  }
  for (const auto& r : rows) {
    const real model = fit.eval(r.lambda);
    std::vector<real> row{r.lambda, r.value, model, r.value - model};
    if (with_c1) {
      row.push_back(r.c1);
      row.push_back(r.c1_min);
      row.push_back(r.c1_max);
    }
    t.rows.push_back(row);
  }
  json config = config_json(c);
  config["restarts"] = opt.restarts;
  config["variant"] = variant == Variant::abs ? "abs" : "neg";
  json extra{{"fit", {{"nu", fit.coefficients[0]},
                      {"max_abs_deviation", fit.max_abs_deviation}}}};
  const int emitted = finish_table(name, t, config, extra, c);
  const int status = sweep_status(rows);
  return status != kExitOk ? status : emitted;
}

int run_fig_algB(const std::string& name, Variant variant,
                 const GridSupOptions& opt, const CommonOpts& c) {
  const SupremumTable table = algorithm_b(3, variant, opt);
  std::vector<std::pair<real, real>> grid;
  for (size_t j = 0; j < table.lambda_grid.size(); ++j)
    grid.emplace_back(table.lambda_grid[j], table.values[j]);
  const FitResult fit = fit_inverse(grid);
  CsvTable t;
  t.header = {"lambda", "observed", "model", "difference"};
  for (const auto& [lam, v] : grid) {
    const real model = fit.eval(lam);
    t.rows.push_back({lam, v, model, v - model});
  }
  json config = config_json(c);
  config["n"] = opt.n_samples;
  config["variant"] = variant == Variant::abs ? "abs" : "neg";
  json extra{{"fit", {{"nu", fit.coefficients[0]},
                      {"max_abs_deviation", fit.max_abs_deviation}}}};
  return finish_table(name, t, config, extra, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibration constants for critical cavitation loads"};
  app.require_subcommand(1);

  // shared option storage
  CommonOpts common;
  MatrixInput matrix;
  std::string fn = "G";
  real lambda = 1.5;
  int l = 3;
  std::string variant_name = "abs";
  int restarts = 5000;
  real alpha = 5.0;
  real epsilon = 1e-9;
  int max_iter = 10000;
  std::string filter;
  real broken_g = 0.0;
  real q = 2.5;
  std::string kappa_mode = "min";
  real kappa_value = 0.0;
  real hprime = 0.0;
  real nu1 = 0.4501;
  real lmin = 1.0, lmax = 2.0;
  int np = 100;
  long long n_samples = 1000000;
  std::string sampling = "symmetric";
  std::string model = "inverse";
  std::string in_path;
  std::string suite;
  long long samples = 100000;

  auto add_estimate_opts = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "boundary stretch")->check(CLI::PositiveNumber);
    cmd->add_option("--restarts", restarts, "random restarts")->check(CLI::Range(2, 100000000));
    cmd->add_option("--alpha", alpha, "start-entry range half width")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", epsilon, "ascent stop tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "ascent iteration cap")->check(CLI::PositiveNumber);
    add_common(cmd, common);
  };
  auto add_variant = [&](CLI::App* cmd) {
    cmd->add_option("--variant", variant_name, "abs or neg")
        ->check(CLI::IsMember({"abs", "neg"}));
  };

  auto* svd_cmd = app.add_subcommand("svd", "singular value decomposition");
  add_matrix_input(svd_cmd, matrix);
  add_common(svd_cmd, common);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a matrix function");
  add_matrix_input(eval_cmd, matrix);
  eval_cmd->add_option("--fn", fn, "P N G Gminus H K m2 m3 F2 W")->required();
  eval_cmd->add_option("--lambda", lambda, "boundary stretch")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--q", q, "growth exponent");
  eval_cmd->add_option("--kappa-mode", kappa_mode, "min max or value");
  eval_cmd->add_option("--kappa", kappa_value, "kappa when kappa-mode=value");
  eval_cmd->add_option("--hprime", hprime, "h'(lambda^3)");
  add_common(eval_cmd, common);

  auto* verify_cmd =
      app.add_subcommand("verify", "run the identity and inequality suite");
  verify_cmd->add_option("--filter", filter, "run checks containing this text");
  verify_cmd->add_option("--inject-broken-g", broken_g, "fault-injection hook")
      ->group("");
  add_common(verify_cmd, common);

  auto* m_cmd = app.add_subcommand("m", "estimate M_l(lambda) by ascent");
  m_cmd->add_option("--l", l, "ratio exponent, 2 or 3")->check(CLI::IsMember({2, 3}));
  add_variant(m_cmd);
  add_estimate_opts(m_cmd);

  auto* c1_cmd = app.add_subcommand("c1", "estimate the saturation radius");
  add_variant(c1_cmd);
  add_estimate_opts(c1_cmd);

  auto* grid_cmd = app.add_subcommand("grid-sup", "pointwise supremum table");
  grid_cmd->add_option("--l", l, "ratio exponent, 2 or 3")->check(CLI::IsMember({2, 3}));
  add_variant(grid_cmd);
  grid_cmd->add_option("--lmin", lmin, "grid start")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--lmax", lmax, "grid end")->check(CLI::PositiveNumber);
  grid_cmd->add_option("--np", np, "grid intervals (np+1 points)")
      ->check(CLI::Range(0, 100000));
  grid_cmd->add_option("--n", n_samples, "random samples")
      ->check(CLI::Range(1LL, 100000000000LL));
  grid_cmd->add_option("--alpha", alpha, "entry range half width")
      ->check(CLI::PositiveNumber);
  grid_cmd->add_option("--sampling", sampling,
                       "symmetric, half-symmetric or full")
      ->check(CLI::IsMember({"symmetric", "half-symmetric", "full"}));
  add_common(grid_cmd, common);

  auto* fit_cmd = app.add_subcommand("fit", "least squares model fit");
  fit_cmd->add_option("--model", model, "inverse or affine")
      ->check(CLI::IsMember({"inverse", "affine"}));
  fit_cmd->add_option("--in", in_path, "input csv (lambda,value)")->required();
  add_common(fit_cmd, common);

  auto* fp_cmd = app.add_subcommand("fixed-point", "shell split fixed point");
  fp_cmd->add_option("--lambda", lambda, "boundary stretch")->check(CLI::PositiveNumber);
  fp_cmd->add_option("--nu1", nu1, "inverse-law coefficient")->check(CLI::PositiveNumber);
  add_common(fp_cmd, common);

  auto* bound_cmd = app.add_subcommand("bound", "load bound report");
  bound_cmd->add_option("--q", q, "growth exponent")->required();
  bound_cmd->add_option("--kappa-mode", kappa_mode, "min max or value");
  bound_cmd->add_option("--kappa", kappa_value, "kappa when kappa-mode=value");
  bound_cmd->add_option("--lambda", lambda, "boundary stretch")->check(CLI::PositiveNumber);
  bound_cmd->add_option("--nu1", nu1, "inverse-law coefficient")->check(CLI::PositiveNumber);
  add_common(bound_cmd, common);

  auto* check_cmd = app.add_subcommand("check", "sampled inequality checks");
  check_cmd->add_option("--suite", suite, "g-bound mintrace bartok zy")
      ->required()
      ->check(CLI::IsMember({"g-bound", "mintrace", "bartok", "zy"}));
  check_cmd->add_option("--samples", samples, "sample count")
      ->check(CLI::Range(1LL, 1000000000LL));
  add_common(check_cmd, common);

  auto* t1_cmd = app.add_subcommand("table1", "reproduce the M3 table");
  add_estimate_opts(t1_cmd);
  auto* t2_cmd = app.add_subcommand("table2", "reproduce the c1 table");
  add_estimate_opts(t2_cmd);  // --lambda switches to a single-row table

  auto* fig1_cmd = app.add_subcommand("fig1", "algorithm A M3 and c1 data");
  add_estimate_opts(fig1_cmd);
  auto* fig2_cmd = app.add_subcommand("fig2", "algorithm B M3 data");
  fig2_cmd->add_option("--n", n_samples, "random samples");
  fig2_cmd->add_option("--sampling", sampling, "sample shape")
      ->check(CLI::IsMember({"symmetric", "half-symmetric", "full"}));
  add_common(fig2_cmd, common);
  auto* fig3_cmd = app.add_subcommand("fig3", "algorithm A M3^- data");
  add_estimate_opts(fig3_cmd);
  auto* fig4_cmd = app.add_subcommand("fig4", "algorithm B M3^- data");
  fig4_cmd->add_option("--n", n_samples, "random samples");
  fig4_cmd->add_option("--sampling", sampling, "sample shape")
      ->check(CLI::IsMember({"symmetric", "half-symmetric", "full"}));
  add_common(fig4_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "cavcal: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    apply_seed_env(common);
    const Variant variant =
        variant_name == "abs" ? Variant::abs : Variant::neg;
    const EstimateOptions est_opt =
        make_estimate_options(common, restarts, alpha, epsilon, max_iter);
    GridSupOptions grid_opt;
    grid_opt.lambda_minus = lmin;
    grid_opt.lambda_plus = lmax;
    grid_opt.n_points = np;
    grid_opt.n_samples = n_samples;
    grid_opt.alpha = alpha;
    grid_opt.seed = common.seed;
    grid_opt.shape = parse_shape(sampling);
    grid_opt.workers = common.workers;

    if (svd_cmd->parsed()) return run_svd(matrix, common);
    if (eval_cmd->parsed())
      return run_eval(matrix, fn, lambda, kappa_mode, q, kappa_value, hprime,
                      common);
    if (verify_cmd->parsed())
      return run_verify(common.seed, filter, broken_g, common);
    if (m_cmd->parsed()) return run_m(l, variant, lambda, est_opt, common);
    if (c1_cmd->parsed()) return run_c1(variant, lambda, est_opt, common);
    if (grid_cmd->parsed()) return run_grid_sup(l, variant, grid_opt, common);
    if (fit_cmd->parsed()) return run_fit(model, in_path, common);
    if (fp_cmd->parsed()) return run_fixed_point(lambda, nu1, common);
    if (bound_cmd->parsed())
      return run_bound(q, kappa_mode, kappa_value, lambda, nu1, common);
    if (check_cmd->parsed()) return run_check(suite, samples, common);
    if (t1_cmd->parsed()) return run_table1(est_opt, common);
    if (t2_cmd->parsed()) {
      std::vector<real> grid = kTableGrid;
      if (t2_cmd->count("--lambda")) grid = {lambda};
      return run_table2(est_opt, grid, common);
    }
    if (fig1_cmd->parsed())
      return run_fig_algA("fig1", Variant::abs, est_opt, common);
    if (fig2_cmd->parsed()) {
      grid_opt.n_points = 10;
      return run_fig_algB("fig2", Variant::abs, grid_opt, common);
    }
    if (fig3_cmd->parsed())
      return run_fig_algA("fig3", Variant::neg, est_opt, common);
    if (fig4_cmd->parsed()) {
      grid_opt.n_points = 10;
      // the negative-part maximizer is not symmetric; default to full draws
      if (!fig4_cmd->count("--sampling")) grid_opt.shape = SampleShape::full;
      return run_fig_algB("fig4", Variant::neg, grid_opt, common);
    }
  } catch (const ParamRange& e) {
    std::cerr << "cavcal: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cavcal: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NoBracket& e) {
    std::cerr << "cavcal: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "cavcal: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitOk;
}
