// Command-line front end: computes primary bifurcation points, index-jump
// certificates, continued branches and diagnostic reports for the
// stationary Lugiato-Lefever equation, writing CSV/JSON/SVG files.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "llebif/export.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bifurcation structure of the stationary Lugiato-Lefever equation"};
  app.require_subcommand(1);
  app.fallthrough();

  llebif::io::RunConfig cfg;
  std::string config_path;

  app.add_option("--config", config_path, "JSON config file; flags override");
  app.add_option("--d", cfg.d, "dispersion coefficient");
  app.add_option("--f", cfg.f, "forcing amplitude");
  int q_flag = 0, p_flag = 0;
  app.add_option("--q", q_flag, "period divisor of the symmetric subspace");
  app.add_option("--p", p_flag, "period divisor of the ambient space");
  app.add_option("--L", cfg.L, "truncation order");
  app.add_option("--N", cfg.N, "collocation resolution (>= 3L)");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--budget", cfg.budget, "continuation step budget");
  app.add_option("--slot", cfg.slot, "which point of the mode-q pair (1 or 2)");
  app.add_option("--sign", cfg.switch_sign, "branch-switch direction (+1/-1)");
  app.add_option("--amplitude", cfg.switch_amplitude, "branch-switch amplitude");
  app.add_option("--newton-tol", cfg.newton_tol, "corrector tolerance");
  app.add_option("--return-tol", cfg.return_tol, "trivial-curve return tolerance");
  app.add_option("--max-step", cfg.max_step, "largest arclength step");
  app.add_option("--samples", cfg.samples, "trivial-curve export resolution");
  app.add_option("--n-max", cfg.n_max, "counterexample levels to check");
  app.add_option("--a-cut", cfg.a_cut, "counterexample localization rate");

  for (const char* name :
       {"trivial", "primary", "index", "certify", "branch", "secondary",
        "counterexample", "diagram"})
    app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "{\"error\":{\"type\":\"ConfigError\",\"message\":"
                   "\"cannot read config file\"}}\n";
      return 1;
    }
    llebif::io::json j;
    try {
      in >> j;
      auto file_cfg = llebif::io::RunConfig::from_json(j);
      // flags passed on the command line win over the file
      if (app.count("--d") == 0) cfg.d = file_cfg.d;
      if (app.count("--f") == 0) cfg.f = file_cfg.f;
      if (app.count("--q") == 0) cfg.q = file_cfg.q;
      if (app.count("--p") == 0) cfg.p_div = file_cfg.p_div;
      if (app.count("--L") == 0) cfg.L = file_cfg.L;
      if (app.count("--N") == 0) cfg.N = file_cfg.N;
      if (app.count("--out") == 0) cfg.out_dir = file_cfg.out_dir;
      if (app.count("--budget") == 0) cfg.budget = file_cfg.budget;
      if (app.count("--slot") == 0) cfg.slot = file_cfg.slot;
      if (app.count("--sign") == 0) cfg.switch_sign = file_cfg.switch_sign;
      if (app.count("--amplitude") == 0)
        cfg.switch_amplitude = file_cfg.switch_amplitude;
      if (app.count("--newton-tol") == 0) cfg.newton_tol = file_cfg.newton_tol;
      if (app.count("--return-tol") == 0) cfg.return_tol = file_cfg.return_tol;
      if (app.count("--max-step") == 0) cfg.max_step = file_cfg.max_step;
      if (app.count("--samples") == 0) cfg.samples = file_cfg.samples;
      if (app.count("--n-max") == 0) cfg.n_max = file_cfg.n_max;
      if (app.count("--a-cut") == 0) cfg.a_cut = file_cfg.a_cut;
    } catch (const std::exception& e) {
      std::cerr << "{\"error\":{\"type\":\"ConfigError\",\"message\":\""
                << e.what() << "\"}}\n";
      return 1;
    }
  }
  if (app.count("--q") > 0) cfg.q = q_flag;
  if (app.count("--p") > 0) cfg.p_div = p_flag;
  llebif::io::apply_env_fallback(cfg);

  const auto* sub = app.get_subcommands().front();
  const auto cmd = llebif::io::parse_command(sub->get_name());
  if (!cmd) {
    std::cerr << "unknown command\n";
    return 1;
  }
  return llebif::io::run(cfg, *cmd, std::cout, std::cerr);
}
