// Command-line front end for the adaptive lattice cubature library.
//
// Subcommands:
//   integrate       one adaptive run on a registered integrand
//   replicate-asian repeated geometric Asian pricing with random volatilities
//   build-vector    component-by-component generating-vector construction
//   diagnose        vector metadata and a coefficient-decay trace
//
// Exit codes: 0 success, 1 usage/configuration error, 2 tolerance not met
// within the level budget.

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latcub/cbc.hpp"
#include "latcub/engine.hpp"
#include "latcub/integrands.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVectorDirEnv = "LATTICE_CUBE_VECTOR_DIR";

std::string resolve_vector_path(const std::string& given) {
  namespace fs = std::filesystem;
  if (given.empty()) throw std::invalid_argument("no generating vector given (--vector)");
  if (fs::exists(given)) return given;
  if (const char* dir = std::getenv(kVectorDirEnv)) {
    const fs::path joined = fs::path(dir) / given;
    if (fs::exists(joined)) return joined.string();
  }
  throw std::invalid_argument("generating vector not found: " + given);
}

json parse_params(const std::string& arg) {
  if (arg.empty()) return json::object();
  if (arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot open parameter file " + arg.substr(1));
    return json::parse(in);
  }
  return json::parse(arg);
}

struct ConeOptions {
  std::vector<double> c;  // scale, decay
  int ell_star = 6;
  int lag = 4;

  latcub::ConeSpec build() const {
    if (c.empty()) {
      latcub::ConeSpec cone = latcub::ConeSpec::default_cone();
      cone.ell_star = ell_star;
      cone.lag = lag;
      if (ell_star != 6 || lag != 4)
        cone = latcub::ConeSpec::geometric(5.0, 2.0, ell_star, lag);
      return cone;
    }
    if (c.size() != 2) throw std::invalid_argument("--cone-c expects scale,decay");
    return latcub::ConeSpec::geometric(c[0], c[1], ell_star, lag);
  }

  json describe() const {
    return {{"ell_star", ell_star},
            {"lag", lag},
            {"c_scale", c.empty() ? 5.0 : c[0]},
            {"c_decay", c.empty() ? 2.0 : c[1]}};
  }
};

void add_cone_flags(CLI::App* cmd, ConeOptions& cone) {
  cmd->add_option("--cone-c", cone.c, "inflation factor C(m) = scale * decay^-m")->delimiter(',');
  cmd->add_option("--ell-star", cone.ell_star, "first reliable coefficient level");
  cmd->add_option("--lag", cone.lag, "levels between the read block and the front");
}

void emit(const json& out, const std::string& path, const std::string& format) {
  std::ostringstream text;
  if (format == "json") {
    text << out.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : out.items())
      text << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
  if (path.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text.str();
  }
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << h;
  return s.str();
}

json result_json(const latcub::CubatureResult& res, const latcub::GeneratingVector& gv,
                 const ConeOptions& cone) {
  json trace = json::array();
  for (const auto& t : res.trace)
    trace.push_back({{"m", t.m}, {"s_tilde", t.s_tilde}, {"bound", t.bound}});
  return {{"estimate", res.estimate},
          {"error_bound", res.error_bound},
          {"converged", res.converged},
          {"final_level", res.final_level},
          {"n_samples", res.n_samples},
          {"evaluation_count", res.evaluation_count},
          {"wall_seconds", res.wall_seconds},
          {"shift_seed", res.shift_seed},
          {"transform_flops", res.transform_flops},
          {"vector_hash", hash_hex(gv.content_hash())},
          {"cone", cone.describe()},
          {"trace", trace}};
}

int cmd_integrate(const std::string& name, const std::string& params_arg, double tol,
                  const std::string& vector_path, std::uint64_t seed, int m_budget,
                  const ConeOptions& cone_opts, const std::string& out, const std::string& format) {
  const latcub::GeneratingVector gv = latcub::GeneratingVector::load(resolve_vector_path(vector_path));
  const latcub::RegisteredIntegrand reg = latcub::make_integrand(name, parse_params(params_arg));

  latcub::CubatureRequest req;
  req.f = reg.f;
  req.dimension = reg.dimension;
  req.tolerance = tol;
  req.cone = cone_opts.build();
  req.gv = gv;
  req.shift_seed = seed;
  req.m_budget = m_budget;

  const latcub::CubatureResult res = latcub::integrate(req);
  json doc = result_json(res, gv, cone_opts);
  doc["integrand"] = name;
  doc["description"] = reg.description;
  doc["dimension"] = reg.dimension;
  doc["tolerance"] = tol;
  if (reg.exact) {
    doc["exact"] = *reg.exact;
    doc["abs_error"] = std::abs(res.estimate - *reg.exact);
  }
  emit(doc, out, format);
  return res.converged ? 0 : 2;
}

int cmd_replicate_asian(int reps, const std::vector<int>& dims, const std::vector<double>& sigma_range,
                        double tol, const std::string& vector_path, std::uint64_t seed,
                        const ConeOptions& cone_opts, const std::string& out,
                        const std::string& format) {
  if (sigma_range.size() != 2 || !(sigma_range[0] > 0) || !(sigma_range[1] >= sigma_range[0]))
    throw std::invalid_argument("--sigma-range expects lo,hi with 0 < lo <= hi");
  const latcub::GeneratingVector gv = latcub::GeneratingVector::load(resolve_vector_path(vector_path));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sigma_dist(sigma_range[0], sigma_range[1]);

  json runs = json::array();
  int hits = 0, converged = 0, total = 0;
  for (int d : dims) {
    for (int r = 0; r < reps; ++r) {
      latcub::AsianOptionParams p;
      p.sigma = sigma_dist(rng);
      p.monitoring_dates = d;
      const double exact = latcub::exact_geometric_price(p);

      latcub::CubatureRequest req;
      req.f = [p](const Eigen::ArrayXd& u) { return latcub::asian_geometric_payoff(p, u); };
      req.dimension = d;
      req.tolerance = tol;
      req.cone = cone_opts.build();
      req.gv = gv;
      req.shift_seed = rng();
      const latcub::CubatureResult res = latcub::integrate(req);

      const double err = std::abs(res.estimate - exact);
      ++total;
      if (res.converged) ++converged;
      if (err <= tol) ++hits;
      runs.push_back({{"dimension", d},
                      {"sigma", p.sigma},
                      {"exact", exact},
                      {"estimate", res.estimate},
                      {"abs_error", err},
                      {"within_tolerance", err <= tol},
                      {"converged", res.converged},
                      {"final_level", res.final_level},
                      {"shift_seed", res.shift_seed}});
    }
  }
  json doc = {{"integrand", "asian-geometric"},
              {"tolerance", tol},
              {"replications", total},
              {"converged", converged},
              {"within_tolerance", hits},
              {"success_rate", total ? static_cast<double>(hits) / total : 0.0},
              {"seed", seed},
              {"vector_hash", hash_hex(gv.content_hash())},
              {"cone", cone_opts.describe()},
              {"runs", runs}};
  emit(doc, out, format);
  return converged == total ? 0 : 2;
}

int cmd_build_vector(std::int64_t base, int levels, int dims, double weight_power,
                     int full_scan_level, const std::string& out, const std::string& log_path) {
  if (out.empty()) throw std::invalid_argument("build-vector requires --out");
  const latcub::WeightSpec weights = latcub::WeightSpec::power_weights(dims, weight_power);
  const latcub::CbcResult res = latcub::cbc_construct(base, levels, dims, weights, full_scan_level);
  res.gv.save(out);
  if (!log_path.empty()) {
    json log = res.log_json();
    log["weight_power"] = weight_power;
    log["full_scan_level"] = full_scan_level;
    log["vector_hash"] = hash_hex(res.gv.content_hash());
    log["output"] = out;
    std::ofstream f(log_path);
    if (!f) throw std::runtime_error("cannot write " + log_path);
    f << log.dump(2) << "\n";
  }
  std::cout << "wrote " << out << " (hash " << hash_hex(res.gv.content_hash()) << ")\n";
  return 0;
}

int cmd_diagnose(const std::string& vector_path, const std::string& name,
                 const std::string& params_arg, double tol, std::uint64_t seed,
                 const ConeOptions& cone_opts, const std::string& out, const std::string& format) {
  const latcub::GeneratingVector gv = latcub::GeneratingVector::load(resolve_vector_path(vector_path));
  json doc = {{"base", gv.base()},
              {"max_level", gv.max_level()},
              {"dimension", gv.dimension()},
              {"point_count", gv.point_count()},
              {"vector_hash", hash_hex(gv.content_hash())}};
  json head = json::array();
  for (int j = 0; j < std::min(gv.dimension(), 8); ++j) head.push_back(gv.components()[j]);
  doc["components_head"] = head;

  int rc = 0;
  if (!name.empty()) {
    const latcub::RegisteredIntegrand reg = latcub::make_integrand(name, parse_params(params_arg));
    latcub::CubatureRequest req;
    req.f = reg.f;
    req.dimension = reg.dimension;
    req.tolerance = tol;
    req.cone = cone_opts.build();
    req.gv = gv;
    req.shift_seed = seed;
    const latcub::TracedCubatureResult res = latcub::integrate_traced(req);
    json decay = json::array();
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      const auto& mags = res.kappa_magnitudes[i];
      json blocks = json::array();
      for (int l = 0; latcub::ipow(2, l) <= mags.size(); ++l) {
        double s = 0.0;
        for (latcub::Index k = l == 0 ? 0 : latcub::ipow(2, l - 1); k < latcub::ipow(2, l); ++k)
          s += mags[k];
        blocks.push_back(s);
      }
      decay.push_back({{"m", res.trace[i].m}, {"block_sums", blocks}});
    }
    doc["run"] = result_json(res, gv, cone_opts);
    doc["run"]["integrand"] = name;
    doc["coefficient_decay"] = decay;
    rc = res.converged ? 0 : 2;
  }
  emit(doc, out, format);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive rank-1 lattice cubature"};
  app.require_subcommand(1);

  std::string integrand, params, vector_path, out, format = "json", log_path;
  double tol = 1e-3;
  std::uint64_t seed = 0;
  int m_budget = -1;

  auto* cmd_int = app.add_subcommand("integrate", "one adaptive cubature run");
  cmd_int->add_option("--integrand", integrand, "registered integrand name")->required();
  cmd_int->add_option("--params", params, "JSON parameter block, inline or @file");
  cmd_int->add_option("--tol", tol, "absolute error tolerance");
  cmd_int->add_option("--vector", vector_path, "generating vector file")->required();
  cmd_int->add_option("--seed", seed, "random-shift seed");
  cmd_int->add_option("--max-level", m_budget, "level budget (default: vector depth)");
  cmd_int->add_option("--out", out, "write the report here instead of stdout");
  cmd_int->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  ConeOptions cone_int;
  add_cone_flags(cmd_int, cone_int);

  int reps = 100;
  std::vector<int> dims{1, 2, 4, 8, 16};
  std::vector<double> sigma_range{0.1, 0.7};
  double asian_tol = 0.02;
  auto* cmd_rep = app.add_subcommand("replicate-asian", "repeated geometric Asian pricing");
  cmd_rep->add_option("--reps", reps, "replications per dimension");
  cmd_rep->add_option("--dims", dims, "monitoring-date counts")->delimiter(',');
  cmd_rep->add_option("--sigma-range", sigma_range, "volatility range lo,hi")->delimiter(',');
  cmd_rep->add_option("--tol", asian_tol, "absolute error tolerance");
  cmd_rep->add_option("--vector", vector_path, "generating vector file")->required();
  cmd_rep->add_option("--seed", seed, "master seed for volatilities and shifts");
  cmd_rep->add_option("--out", out, "write the report here instead of stdout");
  cmd_rep->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  ConeOptions cone_rep;
  add_cone_flags(cmd_rep, cone_rep);

  std::int64_t base = 2;
  int levels = 20, build_dims = 64, full_scan_level = 12;
  double weight_power = 2.0;
  auto* cmd_build = app.add_subcommand("build-vector", "construct a generating vector");
  cmd_build->add_option("--base", base, "prime base");
  cmd_build->add_option("--levels", levels, "levels (vector holds base^levels nodes)");
  cmd_build->add_option("--dims", build_dims, "dimensions");
  cmd_build->add_option("--weight-power", weight_power, "gamma_j = j^-power");
  cmd_build->add_option("--full-scan-level", full_scan_level, "largest level with a full candidate scan");
  cmd_build->add_option("--out", out, "output vector file")->required();
  cmd_build->add_option("--log", log_path, "construction log (JSON)");

  auto* cmd_diag = app.add_subcommand("diagnose", "vector metadata and coefficient decay");
  cmd_diag->add_option("--vector", vector_path, "generating vector file")->required();
  cmd_diag->add_option("--integrand", integrand, "optional integrand for a traced run");
  cmd_diag->add_option("--params", params, "JSON parameter block, inline or @file");
  cmd_diag->add_option("--tol", tol, "absolute error tolerance");
  cmd_diag->add_option("--seed", seed, "random-shift seed");
  cmd_diag->add_option("--out", out, "write the report here instead of stdout");
  cmd_diag->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  ConeOptions cone_diag;
  add_cone_flags(cmd_diag, cone_diag);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_int->parsed())
      return cmd_integrate(integrand, params, tol, vector_path, seed, m_budget, cone_int, out, format);
    if (cmd_rep->parsed())
      return cmd_replicate_asian(reps, dims, sigma_range, asian_tol, vector_path, seed, cone_rep,
                                 out, format);
    if (cmd_build->parsed())
      return cmd_build_vector(base, levels, build_dims, weight_power, full_scan_level, out, log_path);
    if (cmd_diag->parsed())
      return cmd_diagnose(vector_path, integrand, params, tol, seed, cone_diag, out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
