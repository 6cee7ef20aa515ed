#include "llebif/export.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace llebif::io {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json json_number(double v) {
  return json(std::strtod(format_number(v).c_str(), nullptr));
}

std::optional<Command> parse_command(const std::string& name) {
  static const std::map<std::string, Command> table = {
      {"trivial", Command::Trivial},
      {"primary", Command::Primary},
      {"index", Command::Index},
      {"certify", Command::Certify},
      {"branch", Command::Branch},
      {"secondary", Command::Secondary},
      {"counterexample", Command::Counterexample},
      {"diagram", Command::Diagram},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::string command_name(Command cmd) {
  switch (cmd) {
    case Command::Trivial: return "trivial";
    case Command::Primary: return "primary";
    case Command::Index: return "index";
    case Command::Certify: return "certify";
    case Command::Branch: return "branch";
    case Command::Secondary: return "secondary";
    case Command::Counterexample: return "counterexample";
    case Command::Diagram: return "diagram";
  }
  return "?";
}

void RunConfig::validate() const {
  if (newton_tol <= 0 || return_tol <= 0 || max_step <= 0)
    throw ConfigError("config: tolerances and steps must be positive");
  if (N < 3 * L) throw ConfigError("config: need N >= 3L");
  if (L < 1) throw ConfigError("config: need L >= 1");
  if (budget < 1) throw ConfigError("config: budget must be positive");
  if (samples < 2) throw ConfigError("config: need at least 2 samples");
  if (grid_size < 100)
    throw ConfigError("config: scan grid too coarse to bracket roots");
  if (q && *q < 1) throw ConfigError("config: q must be positive");
  if (p_div && *p_div < 1) throw ConfigError("config: p must be positive");
  if (q && p_div && *q % *p_div != 0)
    throw ConfigError("config: p must divide q");
  if (slot != 1 && slot != 2) throw ConfigError("config: slot must be 1 or 2");
  if (switch_sign != 1 && switch_sign != -1)
    throw ConfigError("config: sign must be +1 or -1");
  Paramsd check(d, f);  // rejects d = 0 and f = 0
  (void)check;
}

ContinuationConfig<double> RunConfig::continuation() const {
  ContinuationConfig<double> cc;
  cc.newton_tol = newton_tol;
  cc.return_tol = return_tol;
  cc.max_step = max_step;
  cc.budget = budget;
  return cc;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig cfg;
  if (j.contains("d")) cfg.d = j.at("d").get<double>();
  if (j.contains("f")) cfg.f = j.at("f").get<double>();
  if (j.contains("q")) cfg.q = j.at("q").get<int>();
  if (j.contains("p")) cfg.p_div = j.at("p").get<int>();
  if (j.contains("L")) cfg.L = j.at("L").get<int>();
  if (j.contains("N")) cfg.N = j.at("N").get<int>();
  if (j.contains("newton_tol")) cfg.newton_tol = j.at("newton_tol").get<double>();
  if (j.contains("return_tol")) cfg.return_tol = j.at("return_tol").get<double>();
  if (j.contains("max_step")) cfg.max_step = j.at("max_step").get<double>();
  if (j.contains("budget")) cfg.budget = j.at("budget").get<int>();
  if (j.contains("slot")) cfg.slot = j.at("slot").get<int>();
  if (j.contains("sign")) cfg.switch_sign = j.at("sign").get<int>();
  if (j.contains("switch_amplitude"))
    cfg.switch_amplitude = j.at("switch_amplitude").get<double>();
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("grid_size")) cfg.grid_size = j.at("grid_size").get<int>();
  if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
  if (j.contains("a_cut")) cfg.a_cut = j.at("a_cut").get<double>();
  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  return cfg;
}

json RunConfig::to_json() const {
  json j;
  j["d"] = json_number(d);
  j["f"] = json_number(f);
  if (q) j["q"] = *q;
  if (p_div) j["p"] = *p_div;
  j["L"] = L;
  j["N"] = N;
  j["newton_tol"] = json_number(newton_tol);
  j["return_tol"] = json_number(return_tol);
  j["max_step"] = json_number(max_step);
  j["budget"] = budget;
  j["slot"] = slot;
  j["sign"] = switch_sign;
  j["switch_amplitude"] = json_number(switch_amplitude);
  j["samples"] = samples;
  j["grid_size"] = grid_size;
  j["n_max"] = n_max;
  j["a_cut"] = json_number(a_cut);
  j["out"] = out_dir;
  return j;
}

void apply_env_fallback(RunConfig& cfg) {
  if (cfg.out_dir == ".") {
    if (const char* env = std::getenv("LLEBIF_OUT")) cfg.out_dir = env;
  }
}

namespace {

json point_json(const PrimaryBifPoint<double>& bp) {
  json j;
  j["k"] = bp.k;
  j["slot"] = bp.slot;
  j["t"] = json_number(bp.t);
  j["zeta"] = json_number(bp.point.zeta);
  j["a_re"] = json_number(bp.point.a.real());
  j["a_im"] = json_number(bp.point.a.imag());
  return j;
}

json jump_json(const IndexJump<double>& jump) {
  json j;
  j["k"] = jump.at.k;
  j["slot"] = jump.at.slot;
  j["t"] = json_number(jump.at.t);
  j["p"] = jump.p_div;
  j["eps"] = json_number(jump.eps);
  j["iota_left"] = jump.iota_left;
  j["iota_right"] = jump.iota_right;
  j["sign_zeta_prime"] = jump.sign_zeta_prime;
  j["delta_star"] = jump.delta_star;
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << body;
}

}  // namespace

json primary_table_json(const Paramsd& p,
                        const std::vector<PrimaryBifPoint<double>>& pts,
                        int kmax) {
  json j;
  j["d"] = json_number(p.d);
  j["f"] = json_number(p.f);
  j["kmax"] = kmax;
  j["count"] = pts.size();
  j["points"] = json::array();
  for (const auto& bp : pts) j["points"].push_back(point_json(bp));
  return j;
}

std::string primary_table_csv(const std::vector<PrimaryBifPoint<double>>& pts,
                              int kmax) {
  auto find = [&](int k, int slot) -> const PrimaryBifPoint<double>* {
    for (const auto& bp : pts)
      if (bp.k == k && bp.slot == slot) return &bp;
    return nullptr;
  };

  std::ostringstream out;
  out << "quantity";
  for (int k = 1; k <= kmax; ++k) out << ",k=" << k;
  out << "\n";

  struct Getter {
    int slot;
    double (*fn)(const PrimaryBifPoint<double>&);
  };
  auto row = [&](const std::string& name, const Getter& getter) {
    out << name;
    for (int k = 1; k <= kmax; ++k) {
      out << ",";
      if (const auto* bp = find(k, getter.slot))
        out << format_number(getter.fn(*bp));
    }
    out << "\n";
  };
  const std::pair<std::string, Getter> rows[] = {
      {"t_1", {1, [](const PrimaryBifPoint<double>& b) { return b.t; }}},
      {"t_2", {2, [](const PrimaryBifPoint<double>& b) { return b.t; }}},
      {"zeta_1",
       {1, [](const PrimaryBifPoint<double>& b) { return b.point.zeta; }}},
      {"zeta_2",
       {2, [](const PrimaryBifPoint<double>& b) { return b.point.zeta; }}},
      {"re_a_1",
       {1, [](const PrimaryBifPoint<double>& b) { return b.point.a.real(); }}},
      {"im_a_1",
       {1, [](const PrimaryBifPoint<double>& b) { return b.point.a.imag(); }}},
      {"re_a_2",
       {2, [](const PrimaryBifPoint<double>& b) { return b.point.a.real(); }}},
      {"im_a_2",
       {2, [](const PrimaryBifPoint<double>& b) { return b.point.a.imag(); }}},
  };
  for (const auto& [name, getter] : rows) row(name, getter);
  return out.str();
}

json certificate_json(const Certificate<double>& cert, const Paramsd& p) {
  json j;
  j["d"] = json_number(p.d);
  j["f"] = json_number(p.f);
  j["q"] = cert.q;
  j["p"] = cert.p_div;
  j["total"] = cert.total;
  j["certified"] = cert.certified;
  j["points"] = json::array();
  for (const auto& bp : cert.points) j["points"].push_back(point_json(bp));
  j["jumps"] = json::array();
  for (const auto& jm : cert.jumps) j["jumps"].push_back(jump_json(jm));
  return j;
}

Certificate<double> certificate_from_json(const json& j) {
  Certificate<double> cert;
  cert.q = j.at("q").get<int>();
  cert.p_div = j.at("p").get<int>();
  cert.total = j.at("total").get<int>();
  cert.certified = j.at("certified").get<bool>();
  const Paramsd p(j.at("d").get<double>(), j.at("f").get<double>());
  for (const auto& pj : j.at("points")) {
    PrimaryBifPoint<double> bp;
    bp.k = pj.at("k").get<int>();
    bp.slot = pj.at("slot").get<int>();
    bp.t = pj.at("t").get<double>();
    bp.point = eval_trivial(bp.t, p);
    // keep the document's own (rounded) values for the stored fields
    bp.point.zeta = pj.at("zeta").get<double>();
    bp.point.a = {pj.at("a_re").get<double>(), pj.at("a_im").get<double>()};
    cert.points.push_back(bp);
  }
  for (const auto& jj : j.at("jumps")) {
    IndexJump<double> jump;
    jump.at.k = jj.at("k").get<int>();
    jump.at.slot = jj.at("slot").get<int>();
    jump.at.t = jj.at("t").get<double>();
    jump.at.point = eval_trivial(jump.at.t, p);
    jump.p_div = jj.at("p").get<int>();
    jump.eps = jj.at("eps").get<double>();
    jump.iota_left = jj.at("iota_left").get<int>();
    jump.iota_right = jj.at("iota_right").get<int>();
    jump.sign_zeta_prime = jj.at("sign_zeta_prime").get<int>();
    jump.delta_star = jj.at("delta_star").get<int>();
    cert.jumps.push_back(jump);
  }
  return cert;
}

json index_report_json(const Paramsd& p, int p_div,
                       const std::vector<IndexJump<double>>& jumps) {
  json j;
  j["d"] = json_number(p.d);
  j["f"] = json_number(p.f);
  j["p"] = p_div;
  j["jumps"] = json::array();
  for (const auto& jm : jumps) j["jumps"].push_back(jump_json(jm));
  return j;
}

std::string trivial_csv(const Paramsd& p, int samples) {
  std::ostringstream out;
  out << "t,re_a,im_a,zeta,re_a_prime,im_a_prime,zeta_prime\n";
  const double lo = -0.999, hi = 0.999;
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * double(i) / double(samples - 1);
    const auto pt = eval_trivial(t, p);
    out << format_number(pt.t) << "," << format_number(pt.a.real()) << ","
        << format_number(pt.a.imag()) << "," << format_number(pt.zeta) << ","
        << format_number(pt.a_prime.real()) << ","
        << format_number(pt.a_prime.imag()) << ","
        << format_number(pt.zeta_prime) << "\n";
  }
  return out.str();
}

std::string branch_csv(const Branch<double>& branch,
                       const CosineGrid<double>& grid) {
  (void)grid;
  std::ostringstream out;
  out << "s,zeta,c0_re,c0_im,amplitude,morse_in_ambient,sym_residual\n";
  for (const auto& bp : branch.points) {
    out << format_number(bp.s) << "," << format_number(bp.state.zeta) << ","
        << format_number(bp.state.coeffs(0).real()) << ","
        << format_number(bp.state.coeffs(0).imag()) << ","
        << format_number(bp.amplitude) << "," << bp.morse_in_ambient << ","
        << format_number(bp.sym_residual) << "\n";
  }
  return out.str();
}

namespace {
std::string terminus_name(TerminusKind kind) {
  switch (kind) {
    case TerminusKind::ReturnedToTrivial: return "returned_to_trivial";
    case TerminusKind::StepLimit: return "step_limit";
    case TerminusKind::Diverged: return "diverged";
  }
  return "?";
}
}  // namespace

json branch_meta_json(const Branch<double>& branch, const Paramsd& p) {
  json j;
  j["d"] = json_number(p.d);
  j["f"] = json_number(p.f);
  j["ambient"] = branch.ambient_div;
  j["num_points"] = branch.points.size();
  if (branch.origin) j["origin"] = point_json(*branch.origin);
  json t;
  t["kind"] = terminus_name(branch.terminus.kind);
  if (branch.terminus.kind == TerminusKind::ReturnedToTrivial) {
    t["nearest_k"] = branch.terminus.k;
    t["nearest_slot"] = branch.terminus.slot;
    t["distance"] = json_number(branch.terminus.distance);
    t["zeta"] = json_number(branch.points.back().state.zeta);
  }
  j["terminus"] = t;
  return j;
}

json secondary_report_json(
    const Branch<double>& branch,
    const std::vector<std::pair<BranchPoint<double>, BranchPoint<double>>>&
        pairs,
    const Paramsd& p) {
  json j = branch_meta_json(branch, p);
  j["changes"] = json::array();
  for (const auto& [lo, hi] : pairs) {
    json c;
    c["s_lo"] = json_number(lo.s);
    c["s_hi"] = json_number(hi.s);
    c["zeta_lo"] = json_number(lo.state.zeta);
    c["zeta_hi"] = json_number(hi.state.zeta);
    c["amplitude_lo"] = json_number(lo.amplitude);
    c["amplitude_hi"] = json_number(hi.amplitude);
    c["morse_lo"] = lo.morse_in_ambient;
    c["morse_hi"] = hi.morse_in_ambient;
    c["sym_residual_lo"] = json_number(lo.sym_residual);
    c["sym_residual_hi"] = json_number(hi.sym_residual);
    j["changes"].push_back(c);
  }
  return j;
}

json counterexample_report_json(const counterexample::Report<double>& rep,
                                double a_cut, int n_max) {
  json j;
  j["a_cut"] = json_number(a_cut);
  j["n_max"] = n_max;
  auto claim = [](const counterexample::ClaimResult<double>& c) {
    json cj;
    cj["passed"] = c.passed;
    cj["detail"] = c.detail;
    return cj;
  };
  j["smallness"] = claim(rep.smallness);
  j["derivative_sign"] = claim(rep.derivative_sign);
  j["zeros"] = claim(rep.zeros);
  j["all_passed"] = rep.all_passed;
  return j;
}

std::string diagram_svg(const Paramsd& p, const Branch<double>& branch,
                        const std::vector<std::pair<BranchPoint<double>,
                                                    BranchPoint<double>>>&
                            changes) {
  const double W = 800, H = 560, ml = 70, mr = 20, mt = 20, mb = 50;

  double zmin = 1e300, zmax = -1e300, amax = 0;
  for (const auto& bp : branch.points) {
    zmin = std::min(zmin, bp.state.zeta);
    zmax = std::max(zmax, bp.state.zeta);
    amax = std::max(amax, bp.amplitude);
  }
  const auto prims = all_primary_points(p);
  for (const auto& bp : prims) {
    zmin = std::min(zmin, bp.point.zeta);
    zmax = std::max(zmax, bp.point.zeta);
  }
  const double zpad = 0.05 * (zmax - zmin + 1e-12);
  zmin -= zpad;
  zmax += zpad;
  amax = amax * 1.08 + 1e-12;

  auto X = [&](double z) { return ml + (z - zmin) / (zmax - zmin) * (W - ml - mr); };
  auto Y = [&](double a) { return H - mb - a / amax * (H - mt - mb); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";

  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"#999\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"#999\"/>\n";
  svg << "<text x=\"" << (W / 2) << "\" y=\"" << H - 12
      << "\" font-size=\"14\" text-anchor=\"middle\">detuning</text>\n";
  svg << "<text x=\"18\" y=\"" << (H / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 "
      << (H / 2) << ")\">amplitude</text>\n";

  // constant-solution family: the zero-amplitude axis
  svg << "<line x1=\"" << X(zmin) << "\" y1=\"" << Y(0) << "\" x2=\""
      << X(zmax) << "\" y2=\"" << Y(0)
      << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (const auto& bp : prims)
    svg << "<circle cx=\"" << format_number(X(bp.point.zeta)) << "\" cy=\""
        << Y(0) << "\" r=\"3\" fill=\"black\"/>\n";

  // traced branch
  svg << "<polyline fill=\"none\" stroke=\"#1f4fbf\" stroke-width=\"1.5\" "
         "points=\"";
  for (const auto& bp : branch.points)
    svg << format_number(X(bp.state.zeta)) << ","
        << format_number(Y(bp.amplitude)) << " ";
  svg << "\"/>\n";

  // ambient index changes
  for (const auto& [lo, hi] : changes) {
    const double z = 0.5 * (lo.state.zeta + hi.state.zeta);
    const double a = 0.5 * (lo.amplitude + hi.amplitude);
    svg << "<circle cx=\"" << format_number(X(z)) << "\" cy=\""
        << format_number(Y(a))
        << "\" r=\"5\" fill=\"none\" stroke=\"#c22\" stroke-width=\"2\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

// Shared flow for branch-based commands.
struct TracedRun {
  Branch<double> branch;
  std::vector<std::pair<BranchPoint<double>, BranchPoint<double>>> changes;
};

TracedRun trace_for(const RunConfig& cfg, bool with_changes) {
  if (!cfg.q) throw ConfigError("this command needs q");
  const auto p = cfg.params();
  const int ambient = cfg.p_div.value_or(*cfg.q);
  const auto pair_pts = find_primary_points(*cfg.q, p, cfg.grid_size);
  const PrimaryBifPoint<double>* origin = nullptr;
  for (const auto& bp : pair_pts)
    if (bp.slot == cfg.slot) origin = &bp;
  if (!origin)
    throw MissingPair("no mode-" + std::to_string(*cfg.q) +
                      " point with slot " + std::to_string(cfg.slot));

  const CosineGrid<double> grid(cfg.L, cfg.N);
  const auto cc = cfg.continuation();
  auto [start, dir] = switch_and_correct(*origin, cfg.switch_sign,
                                         cfg.switch_amplitude, grid, p, cc);
  galerkin::VectorXs<double> hint =
      galerkin::VectorXs<double>::Zero(2 * (grid.L() + 1) + 1);
  hint.head(2 * (grid.L() + 1)) = dir.head(2 * (grid.L() + 1));

  TracedRun run;
  run.branch = trace_branch(
      start, ambient, cc, grid, p,
      std::optional<PrimaryBifPoint<double>>(*origin),
      std::optional<galerkin::VectorXs<double>>(hint));
  if (with_changes)
    run.changes = locate_secondary(run.branch, ambient, grid, p, cc);
  return run;
}

}  // namespace

int run(const RunConfig& cfg, Command cmd, std::ostream& out,
        std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    cfg.validate();
    const auto p = cfg.params();
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);

    switch (cmd) {
      case Command::Trivial: {
        write_file(dir / "trivial.csv", trivial_csv(p, cfg.samples));
        out << "wrote " << (dir / "trivial.csv").string() << "\n";
        break;
      }
      case Command::Primary: {
        const int kmax = compute_kmax(p, cfg.grid_size);
        const auto pts = all_primary_points(p, cfg.grid_size);
        write_file(dir / "primary.csv", primary_table_csv(pts, kmax));
        write_file(dir / "primary.json",
                   primary_table_json(p, pts, kmax).dump(2) + "\n");
        out << "kmax=" << kmax << ", " << pts.size() << " points\n";
        break;
      }
      case Command::Index: {
        const int p_div = cfg.p_div.value_or(1);
        std::vector<IndexJump<double>> jumps;
        for (const auto& bp : all_primary_points(p, cfg.grid_size))
          jumps.push_back(index_jump(bp, p_div, p));
        write_file(dir / "index.json",
                   index_report_json(p, p_div, jumps).dump(2) + "\n");
        out << jumps.size() << " index jumps in ambient p=" << p_div << "\n";
        break;
      }
      case Command::Certify: {
        if (!cfg.q || !cfg.p_div)
          throw ConfigError("certify needs both q and p");
        const auto cert = certify(*cfg.q, *cfg.p_div, p);
        write_file(dir / "certificate.json",
                   certificate_json(cert, p).dump(2) + "\n");
        out << "q=" << cert.q << " p=" << cert.p_div
            << " total=" << cert.total
            << (cert.certified ? " certified" : " not certified") << "\n";
        break;
      }
      case Command::Branch: {
        const auto run_data = trace_for(cfg, /*with_changes=*/false);
        const CosineGrid<double> grid(cfg.L, cfg.N);
        write_file(dir / "branch.csv", branch_csv(run_data.branch, grid));
        write_file(dir / "branch.json",
                   branch_meta_json(run_data.branch, p).dump(2) + "\n");
        out << run_data.branch.points.size() << " points, terminus "
            << terminus_name(run_data.branch.terminus.kind) << "\n";
        break;
      }
      case Command::Secondary: {
        const auto run_data = trace_for(cfg, /*with_changes=*/true);
        write_file(
            dir / "secondary.json",
            secondary_report_json(run_data.branch, run_data.changes, p)
                    .dump(2) +
                "\n");
        out << run_data.changes.size() << " ambient index changes\n";
        break;
      }
      case Command::Counterexample: {
        const auto c = counterexample::make_params(cfg.a_cut);
        const auto rep = counterexample::run_checks(cfg.n_max, c);
        write_file(dir / "counterexample.json",
                   counterexample_report_json(rep, cfg.a_cut, cfg.n_max)
                           .dump(2) +
                       "\n");
        out << "smallness: " << (rep.smallness.passed ? "pass" : "FAIL")
            << "\nderivative_sign: "
            << (rep.derivative_sign.passed ? "pass" : "FAIL")
            << "\nzeros: " << (rep.zeros.passed ? "pass" : "FAIL") << "\n";
        if (!rep.all_passed) {
          json e;
          e["error"]["type"] = "ReportedFailure";
          e["error"]["message"] = "counterexample checks failed";
          err << e.dump() << "\n";
          return 1;
        }
        break;
      }
      case Command::Diagram: {
        const auto run_data = trace_for(cfg, /*with_changes=*/true);
        write_file(dir / "diagram.svg",
                   diagram_svg(p, run_data.branch, run_data.changes));
        out << "wrote " << (dir / "diagram.svg").string() << "\n";
        break;
      }
    }
    return 0;
  } catch (const Error& e) {
    json ej;
    // keep the concrete type visible to machine consumers
    std::string type = "Error";
    if (dynamic_cast<const ConfigError*>(&e)) type = "ConfigError";
    else if (dynamic_cast<const DomainError*>(&e)) type = "DomainError";
    else if (dynamic_cast<const GenericityViolation*>(&e)) type = "GenericityViolation";
    else if (dynamic_cast<const ResonantMode*>(&e)) type = "ResonantMode";
    else if (dynamic_cast<const DegeneratePoint*>(&e)) type = "DegeneratePoint";
    else if (dynamic_cast<const TurningPointBifurcation*>(&e)) type = "TurningPointBifurcation";
    else if (dynamic_cast<const NoStableEps*>(&e)) type = "NoStableEps";
    else if (dynamic_cast<const OutOfWindow*>(&e)) type = "OutOfWindow";
    else if (dynamic_cast<const MissingPair*>(&e)) type = "MissingPair";
    else if (dynamic_cast<const NoConvergence*>(&e)) type = "NoConvergence";
    else if (dynamic_cast<const SingularJacobian*>(&e)) type = "SingularJacobian";
    else if (dynamic_cast<const ReportedFailure*>(&e)) type = "ReportedFailure";
    ej["error"]["type"] = type;
    ej["error"]["message"] = e.what();
    err << ej.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json ej;
    ej["error"]["type"] = "unexpected";
    ej["error"]["message"] = e.what();
    err << ej.dump() << "\n";
    return 2;
  }
}

}  // namespace llebif::io
