// galiray: command line front end for the verification suite.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "galiray/cocycles.hpp"
#include "galiray/errors.hpp"
#include "galiray/harness.hpp"
#include "galiray/verify.hpp"

using namespace galiray;

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

struct Pair {
  GalileiElement r;
  GalileiElement s;
  std::optional<PolyGaussianState> state;
};

Pair read_pair(const std::string& path, int dim) {
  const nlohmann::json j = read_json_file(path);
  if (!j.contains("r") || !j.contains("s")) throw ConfigError(path + ": expected keys 'r' and 's'");
  Pair p{j.at("r").get<GalileiElement>(), j.at("s").get<GalileiElement>(), std::nullopt};
  if (j.contains("state")) p.state = state_from_json(j.at("state"));
  if (dim > 0 && (p.r.dim() != dim || p.s.dim() != dim)) {
    throw DimensionError(path + ": pair dimension does not match the representation");
  }
  return p;
}

void print_summary(const SuiteReport& report) {
  for (const CheckResult& c : report.checks) {
    std::cout << std::left << std::setw(20) << status_name(c.status) << std::setw(44) << c.check
              << " max_residual=" << std::scientific << std::setprecision(3) << c.max_residual
              << " n=" << c.n_cases << "\n";
  }
  std::cout << "overall: " << (report.pass ? "pass" : "fail") << "\n";
}

int verify_all(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& json_out) {
  SuiteConfig config = config_path.empty() ? SuiteConfig::defaults() : load_config(config_path);
  apply_environment(config);
  if (seed) config.seed = *seed;
  config.validate();
  const SuiteReport report = run_suite(config);
  const std::string doc = report.to_json().dump(2);
  if (json_out == "-") {
    std::cout << doc << "\n";
  } else {
    print_summary(report);
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      if (!out) throw ConfigError("cannot write '" + json_out + "'");
      out << doc << "\n";
    }
  }
  return exit_status(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galilei group ray representations: cocycles, multipliers, generators"};
  app.require_subcommand(1);

  std::string config_path;
  std::string json_out;
  std::optional<std::uint64_t> seed;
  auto* va = app.add_subcommand("verify-all", "run the full verification suite");
  va->add_option("--config", config_path, "config file (key = value, or JSON)")->check(CLI::ExistingFile);
  va->add_option("--seed", seed, "suite seed (overrides config and GALIRAY_SEED)");
  va->add_option("--json", json_out, "write the JSON report to this file ('-' for stdout)");

  std::string exponent;
  int dim = 3;
  std::size_t triples = 1000;
  double t = 0.0;
  std::uint64_t cseed = 1;
  double scale = 1.0;
  auto* co = app.add_subcommand("cocycle", "cocycle identity on random triples");
  co->add_option("name", exponent, "xi0, xi1, xi2, xi_eta, xi_eta_literal, xi_t")->required();
  co->add_option("--dim", dim, "spatial dimension")->check(CLI::Range(1, 3));
  co->add_option("--triples", triples, "number of triples")->check(CLI::PositiveNumber);
  co->add_option("--t", t, "time label for xi_t");
  co->add_option("--seed", cseed, "seed");
  co->add_option("--scale", scale, "coordinate scale");

  std::string kind;
  std::string pair_path;
  double mt = 0.0;
  auto* mu = app.add_subcommand("multiplier", "extract the multiplier of a pair");
  mu->add_option("--rep", kind, "representation kind")->required();
  mu->add_option("--t", mt, "time label");
  mu->add_option("--pair", pair_path, "JSON {\"r\": ..., \"s\": ..., \"state\"?: ...}")->check(CLI::ExistingFile);

  std::string x_name;
  std::string y_name;
  double gamma = 1.0;
  int idim = 3;
  auto* ie = app.add_subcommand("infexp", "infinitesimal exponent of a basis pair");
  ie->add_option("name", exponent, "exponent name")->required();
  ie->add_option("--x", x_name, "basis element, e.g. b1")->required();
  ie->add_option("--y", y_name, "basis element, e.g. d1")->required();
  ie->add_option("--dim", idim, "spatial dimension")->check(CLI::Range(1, 3));
  ie->add_option("--gamma", gamma, "gamma");

  std::string hkind;
  auto* he = app.add_subcommand("heisenberg", "fit the Heisenberg-picture constant");
  he->add_option("--rep", hkind, "representation kind")->required();

  double agamma = 1.0;
  double at = 0.0;
  std::string apair;
  auto* ac = app.add_subcommand("action", "time contribution -gamma <v_r, W_r v_s> t of a pair");
  ac->add_option("--gamma", agamma, "gamma")->required();
  ac->add_option("--t", at, "time label")->required();
  ac->add_option("--pair", apair, "JSON {\"r\": ..., \"s\": ...}")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*va) return verify_all(config_path, seed, json_out);

    if (*co) {
      const CheckResult r = cocycle_check(exponent, dim, triples, cseed, scale, SuiteConfig::defaults().tolerance("cocycle"), t);
      nlohmann::json j{{"check", r.check}, {"dim", dim},     {"seed", r.seed},
                       {"n_cases", r.n_cases}, {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance}, {"pass", r.pass}, {"details", r.details}};
      std::cout << j.dump(2) << "\n";
      return r.pass ? 0 : 1;
    }

    if (*mu) {
      const RepDescriptor rep = RepDescriptor::defaults(rep_kind(kind));
      Pair p{GalileiElement::identity(rep.dim()), GalileiElement::identity(rep.dim()), std::nullopt};
      if (!pair_path.empty()) p = read_pair(pair_path, rep.dim());
      const PolyGaussianState state = p.state ? *p.state : PolyGaussianState::gaussian(Vector::Zero(rep.dim()), 1.0);
      const MultiplierReport m = extract_multiplier(rep, p.r, p.s, TimeLabel{mt}, state);
      nlohmann::json j = m;
      j["rep"] = rep;
      j["t"] = mt;
      j["pass"] = m.pass(SuiteConfig::defaults().tolerance("spread"), SuiteConfig::defaults().tolerance("modulus"));
      std::cout << j.dump(2) << "\n";
      return j["pass"].get<bool>() ? 0 : 1;
    }

    if (*ie) {
      ExponentParams params;
      params.gamma = gamma;
      const PhaseExponent xi = PhaseExponent::from_name(exponent, idim, params);
      const auto v = infinitesimal_exponent(xi, AlgebraElement::basis(idim, x_name), AlgebraElement::basis(idim, y_name));
      nlohmann::json j = v;
      j["exponent"] = xi.name();
      j["x"] = x_name;
      j["y"] = y_name;
      std::cout << j.dump(2) << "\n";
      return v.converged ? 0 : 1;
    }

    if (*he) {
      const RepDescriptor rep = RepDescriptor::defaults(rep_kind(hkind));
      const HeisenbergFit fit = heisenberg_fit(rep, {}, {0.0, 0.5, 1.7});
      std::cout << nlohmann::json(fit).dump(2) << "\n";
      return 0;
    }

    if (*ac) {
      const Pair p = read_pair(apair, 0);
      require_same_dim(p.r.dim(), p.s.dim(), "action pair");
      const double value = action_contribution(agamma, p.r, p.s, at);
      nlohmann::json j{{"gamma", agamma}, {"t", at}, {"xi_t", value}, {"phase", {std::cos(value), std::sin(value)}}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const galiray::Error& e) {
    std::cerr << "galiray: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
