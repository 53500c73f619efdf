#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "varlex/generators.hpp"
#include "varlex/io.hpp"
#include "varlex/lab.hpp"
#include "varlex/maximal.hpp"
#include "varlex/norm.hpp"

namespace {

constexpr const char* kVersion = "varlex 1.0.0";

using nlohmann::ordered_json;

std::string dir_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out_path);
  if (!os)
    throw varlex::Error(varlex::ErrorCode::InvalidInput,
                        "cannot open '" + out_path + "' for writing");
  os << j.dump(2) << "\n";
}

std::shared_ptr<const varlex::Domain> load_domain_file(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw varlex::Error(varlex::ErrorCode::InvalidInput, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw varlex::Error(varlex::ErrorCode::InvalidInput,
                        "domain '" + path + "': " + ex.what());
  }
  return varlex::build_domain_from_spec(varlex::domain_spec_from_json(j), dir_of(path));
}

struct VerifyInputs {
  std::shared_ptr<const varlex::Domain> dom;
  varlex::ExponentPair pair;
  varlex::GridFunction f;
  varlex::CubeFamily family;
  varlex::CaseMeta meta;
};

VerifyInputs inputs_from_config(const varlex::RunConfig& cfg,
                                const std::string& base_dir,
                                const std::string& case_id) {
  auto dom = varlex::build_domain_from_spec(cfg.domain, base_dir);
  varlex::ExponentField p = varlex::load_exponent(cfg.exponent, dom, base_dir);
  varlex::ExponentPair pair = varlex::derive_q(p, cfg.alpha);
  varlex::GridFunction f = varlex::build_function(cfg.function, cfg.domain, dom, base_dir);
  varlex::CubeFamily family = cfg.max_side > 0
                                  ? varlex::CubeFamily::for_domain(*dom, cfg.max_side)
                                  : varlex::CubeFamily::for_domain(*dom);
  varlex::CaseMeta meta;
  meta.case_id = case_id;
  meta.alpha = cfg.alpha;
  meta.dim = dom->dim();
  meta.resolution = {dom->res(0), dom->dim() == 2 ? dom->res(1) : 1};
  meta.max_side = family.max_side;
  meta.seed = cfg.seed;
  meta.exponent_family = cfg.exponent.describe();
  meta.mask = cfg.domain.mask;
  return VerifyInputs{std::move(dom), std::move(pair), std::move(f), family,
                      std::move(meta)};
}

int run_validate_exponent(const std::string& exponent_spec,
                          const std::string& domain_path, double alpha,
                          double max_c, const std::string& out_path) {
  const varlex::ExponentSpec spec = varlex::exponent_spec_from_string(exponent_spec);
  std::shared_ptr<const varlex::Domain> dom;
  if (!domain_path.empty()) {
    dom = load_domain_file(domain_path);
  } else if (spec.family != varlex::ExponentSpec::Family::Csv) {
    throw varlex::Error(varlex::ErrorCode::InvalidInput,
                        "validate-exponent: --domain is required unless the "
                        "exponent comes from a csv file");
  }
  const varlex::ExponentField p = varlex::load_exponent(spec, dom);

  ordered_json j;
  j["exponent"] = spec.describe();
  j["p_min"] = p.min();
  j["p_max"] = p.max();
  const double local_c = varlex::local_log_holder_constant(p);
  const double decay_c = varlex::decay_log_holder_constant(p);
  j["local_log_holder_c"] = local_c;
  j["decay_log_holder_c"] = decay_c;

  bool pass = true;
  if (alpha > 0.0) {
    const int n = p.domain()->dim();
    if (!(alpha < n))
      throw varlex::Error(varlex::ErrorCode::InvalidInput,
                          "validate-exponent: alpha must lie in (0, n)");
    const bool ok = p.max() < n / alpha;
    j["alpha"] = alpha;
    j["pairing_ok"] = ok;
    pass = pass && ok;
  }
  if (max_c > 0.0) {
    j["max_c"] = max_c;
    const bool ok = local_c <= max_c && decay_c <= max_c;
    j["log_holder_within_max_c"] = ok;
    pass = pass && ok;
  }
  j["pass"] = pass;
  emit(j, out_path);
  return pass ? 0 : 2;
}

int run_norm(const std::string& function_path, const std::string& exponent_spec,
             const std::string& domain_path, double tol, const std::string& out_path) {
  std::shared_ptr<const varlex::Domain> dom;
  if (!domain_path.empty()) dom = load_domain_file(domain_path);
  const varlex::GridFunction f = varlex::read_grid_csv_file(function_path, dom);
  const varlex::ExponentField p = varlex::load_exponent(
      varlex::exponent_spec_from_string(exponent_spec), f.domain());
  const varlex::LuxemburgResult r = varlex::luxemburg_norm(f, p, tol);
  ordered_json j;
  j["norm"] = r.norm;
  j["iterations"] = r.iterations;
  j["residual"] = r.residual;
  emit(j, out_path);
  return 0;
}

int run_maximal(const std::string& function_path, const std::string& domain_path,
                double alpha, int max_side, bool oracle, bool bench,
                const std::string& out_path) {
  std::shared_ptr<const varlex::Domain> dom;
  if (!domain_path.empty()) dom = load_domain_file(domain_path);
  const varlex::GridFunction f = varlex::read_grid_csv_file(function_path, dom);
  const varlex::CubeFamily family =
      max_side > 0 ? varlex::CubeFamily::for_domain(*f.domain(), max_side)
                   : varlex::CubeFamily::for_domain(*f.domain());

  if (bench) {
    const auto time_one = [&](auto&& op) {
      const auto t0 = std::chrono::steady_clock::now();
      const varlex::GridFunction out = op();
      const auto t1 = std::chrono::steady_clock::now();
      (void)out;
      return std::chrono::duration<double>(t1 - t0).count();
    };
    const double fast_s =
        time_one([&] { return varlex::fractional_maximal(f, alpha, family); });
    const double naive_s =
        time_one([&] { return varlex::naive_maximal(f, alpha, family); });
    const double cells = static_cast<double>(f.domain()->active_count());
    ordered_json j;
    j["cells"] = f.domain()->active_count();
    j["max_side"] = family.max_side;
    j["fast_seconds"] = fast_s;
    j["naive_seconds"] = naive_s;
    j["fast_cells_per_second"] = cells / fast_s;
    j["naive_cells_per_second"] = cells / naive_s;
    j["speedup"] = naive_s / fast_s;
    emit(j, out_path);
    return 0;
  }

  const varlex::GridFunction out = oracle
                                       ? varlex::naive_maximal(f, alpha, family)
                                       : varlex::fractional_maximal(f, alpha, family);
  if (out_path.empty()) {
    varlex::write_grid_csv(std::cout, out);
  } else {
    varlex::write_grid_csv_file(out_path, out);
  }
  return 0;
}

int run_verify(const std::string& mode, const std::string& config_path,
               bool dump_fields, const std::string& out_path) {
  const varlex::RunConfig cfg = varlex::load_run_config(config_path);
  VerifyInputs in = inputs_from_config(cfg, dir_of(config_path), mode + ":" + config_path);

  varlex::VerificationReport rep;
  if (mode == "lemma") {
    rep = varlex::verify_lemma(in.f, in.pair, in.family, in.meta, dump_fields);
  } else if (mode == "prop1") {
    rep = varlex::verify_prop1(in.f, in.pair, in.family, in.meta, dump_fields);
  } else if (mode == "prop2") {
    rep = varlex::verify_prop2(in.f, in.pair, in.family, in.meta, dump_fields);
  } else {
    throw varlex::Error(varlex::ErrorCode::InvalidInput,
                        "verify: mode must be lemma, prop1, or prop2");
  }
  emit(varlex::report_to_json(rep), out_path);
  return rep.pass ? 0 : 2;
}

int run_sweep(std::uint64_t seed, int cases, const std::string& config_path,
              const std::string& csv_path, const std::string& out_path) {
  varlex::RunConfig cfg;
  std::string base_dir;
  if (!config_path.empty()) {
    cfg = varlex::load_run_config(config_path);
    base_dir = dir_of(config_path);
  } else {
    const varlex::GeneratedCase c = varlex::make_sweep_case(seed);
    cfg.domain = c.domain;
    cfg.exponent = c.exponent;
    cfg.alpha = 0.0;  // resolved below from the built field
  }

  auto dom = varlex::build_domain_from_spec(cfg.domain, base_dir);
  varlex::ExponentField p = varlex::load_exponent(cfg.exponent, dom, base_dir);
  const double alpha = cfg.alpha > 0.0 ? cfg.alpha
                                       : varlex::resolve_alpha(0, dom->dim(), p.max());
  varlex::ExponentPair pair = varlex::derive_q(p, alpha);
  const varlex::CubeFamily family = varlex::CubeFamily::for_domain(*dom);

  varlex::CaseMeta meta;
  meta.case_id = "sweep";
  meta.alpha = alpha;
  meta.dim = dom->dim();
  meta.resolution = {dom->res(0), dom->dim() == 2 ? dom->res(1) : 1};
  meta.max_side = family.max_side;
  meta.seed = seed;
  meta.exponent_family = cfg.exponent.describe();
  meta.mask = cfg.domain.mask;

  const varlex::DomainSpec dspec = cfg.domain;
  const auto generator = [&](int id) {
    return varlex::sweep_function(seed, id, dspec).sample(dom);
  };
  const varlex::SweepReport rep =
      varlex::bound_sweep(generator, cases, pair, family, meta);

  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os)
      throw varlex::Error(varlex::ErrorCode::InvalidInput,
                          "cannot open '" + csv_path + "' for writing");
    os << "id,ratio,norm_f,norm_mf\n";
    for (const auto& e : rep.entries)
      os << e.case_id << ',' << varlex::format_double(e.ratio) << ','
         << varlex::format_double(e.norm_f) << ','
         << varlex::format_double(e.norm_mf) << '\n';
  }
  emit(varlex::sweep_to_json(rep), out_path);
  return 0;
}

int run_bench(int dim, int grid, double alpha, int max_side, std::uint64_t seed,
              const std::string& out_path) {
  varlex::DomainSpec d;
  d.dim = dim;
  d.lo = {0.0, 0.0};
  d.hi = {1.0, 1.0};
  d.res = {grid, dim == 2 ? grid : 1};
  auto dom = d.build();
  const varlex::GridFunction f = varlex::mixture_function(seed, d).sample(dom);
  const varlex::CubeFamily family =
      max_side > 0 ? varlex::CubeFamily::for_domain(*dom, max_side)
                   : varlex::CubeFamily::for_domain(*dom);
  const double a = alpha >= 0.0 ? alpha : dim / 4.0;

  const auto t0 = std::chrono::steady_clock::now();
  const varlex::GridFunction fast = varlex::fractional_maximal(f, a, family);
  const auto t1 = std::chrono::steady_clock::now();
  const varlex::GridFunction naive = varlex::naive_maximal(f, a, family);
  const auto t2 = std::chrono::steady_clock::now();

  double max_dev = 0.0;
  for (const std::int64_t c : dom->active_cells()) {
    const double denom = std::max(std::abs(fast[c]), std::abs(naive[c]));
    if (denom > 0.0) max_dev = std::max(max_dev, std::abs(fast[c] - naive[c]) / denom);
  }

  const double fast_s = std::chrono::duration<double>(t1 - t0).count();
  const double naive_s = std::chrono::duration<double>(t2 - t1).count();
  const double cells = static_cast<double>(dom->active_count());
  ordered_json j;
  j["n"] = dim;
  j["grid"] = grid;
  j["cells"] = dom->active_count();
  j["max_side"] = family.max_side;
  j["alpha"] = a;
  j["fast_seconds"] = fast_s;
  j["naive_seconds"] = naive_s;
  j["fast_cells_per_second"] = cells / fast_s;
  j["naive_cells_per_second"] = cells / naive_s;
  j["speedup"] = naive_s / fast_s;
  j["max_relative_deviation"] = max_dev;
  emit(j, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent Lebesgue norms, fractional maximal operators, "
               "and pointwise-inequality verification on cell grids"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // validate-exponent
  auto* validate = app.add_subcommand(
      "validate-exponent", "report exponent bounds and log-Hoelder constants");
  std::string ve_exponent, ve_domain, ve_out;
  double ve_alpha = 0.0, ve_max_c = 0.0;
  validate->add_option("--exponent", ve_exponent, "exponent spec or file")->required();
  validate->add_option("--domain", ve_domain, "domain JSON file");
  validate->add_option("--alpha", ve_alpha, "check sup p < n/alpha");
  validate->add_option("--max-c", ve_max_c, "pass/fail threshold for both constants");
  validate->add_option("--out", ve_out, "write JSON here instead of stdout");

  // norm
  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a grid function");
  std::string n_function, n_exponent, n_domain, n_out;
  double n_tol = 1e-10;
  norm->add_option("--function", n_function, "grid function CSV")->required();
  norm->add_option("--exponent", n_exponent, "exponent spec or file")->required();
  norm->add_option("--domain", n_domain, "domain JSON file (else inferred)");
  norm->add_option("--tol", n_tol, "relative bracket tolerance");
  norm->add_option("--out", n_out, "write JSON here instead of stdout");

  // maximal
  auto* maximal = app.add_subcommand("maximal", "fractional maximal operator");
  std::string m_function, m_domain, m_out;
  double m_alpha = 0.0;
  int m_max_side = 0;
  bool m_oracle = false, m_bench = false;
  maximal->add_option("--function", m_function, "grid function CSV")->required();
  maximal->add_option("--alpha", m_alpha, "order alpha in [0, n)")->required();
  maximal->add_option("--max-side", m_max_side, "largest cube side in cells");
  maximal->add_flag("--oracle", m_oracle, "use the direct enumeration path");
  maximal->add_flag("--bench", m_bench, "time fast vs naive instead of writing output");
  maximal->add_option("--domain", m_domain, "domain JSON file (else inferred)");
  maximal->add_option("--out", m_out, "output CSV path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run an inequality verification");
  std::string v_mode, v_config, v_out;
  bool v_dump = false;
  verify->add_option("mode", v_mode, "lemma | prop1 | prop2")->required();
  verify->add_option("--config", v_config, "run configuration JSON")->required();
  verify->add_flag("--dump-fields", v_dump, "include per-cell lhs/rhs arrays");
  verify->add_option("--out", v_out, "write JSON here instead of stdout");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "norm-ratio sweep over a seeded family");
  std::uint64_t s_seed = 1;
  int s_cases = 100;
  std::string s_config, s_csv, s_out;
  sweep->add_option("--seed", s_seed, "family seed");
  sweep->add_option("--cases", s_cases, "number of functions");
  sweep->add_option("--config", s_config, "domain/exponent/alpha configuration");
  sweep->add_option("--csv", s_csv, "also write per-case ratios CSV here");
  sweep->add_option("--out", s_out, "write JSON here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "kernel throughput on synthetic data");
  int b_dim = 2, b_grid = 64, b_max_side = 0;
  double b_alpha = -1.0;
  std::uint64_t b_seed = 1;
  std::string b_out;
  bench->add_option("--n", b_dim, "dimension (1 or 2)")->check(CLI::Range(1, 2));
  bench->add_option("--grid", b_grid, "cells per axis");
  bench->add_option("--alpha", b_alpha, "order (default n/4)");
  bench->add_option("--max-side", b_max_side, "largest cube side in cells");
  bench->add_option("--seed", b_seed, "function seed");
  bench->add_option("--out", b_out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ordered_json j;
    j["error"] = {{"code", "invalid-input"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 1;
  }

  try {
    if (*validate)
      return run_validate_exponent(ve_exponent, ve_domain, ve_alpha, ve_max_c, ve_out);
    if (*norm) return run_norm(n_function, n_exponent, n_domain, n_tol, n_out);
    if (*maximal)
      return run_maximal(m_function, m_domain, m_alpha, m_max_side, m_oracle,
                         m_bench, m_out);
    if (*verify) return run_verify(v_mode, v_config, v_dump, v_out);
    if (*sweep) return run_sweep(s_seed, s_cases, s_config, s_csv, s_out);
    if (*bench) return run_bench(b_dim, b_grid, b_alpha, b_max_side, b_seed, b_out);
  } catch (const varlex::Error& e) {
    ordered_json j;
    j["error"] = {{"code", varlex::error_code_name(e.code())}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = {{"code", "internal"}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
    return 1;
  }
  return 0;
}
