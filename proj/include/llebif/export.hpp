#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "llebif/certificates.hpp"
#include "llebif/continuation.hpp"
#include "llebif/counterexample.hpp"
#include "llebif/params.hpp"
#include "llebif/primary_points.hpp"

namespace llebif::io {

using json = nlohmann::ordered_json;

/// Fixed 12-significant-digit formatting used by every exporter, so that
/// identical runs produce byte-identical files.
std::string format_number(double v);

/// A json number carrying exactly the 12-significant-digit value.
json json_number(double v);

enum class Command {
  Trivial,
  Primary,
  Index,
  Certify,
  Branch,
  Secondary,
  Counterexample,
  Diagram,
};

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command cmd);

/// Everything a run needs; defaults match the library defaults.
struct RunConfig {
  double d = 0.1;
  double f = 1.6;
  std::optional<int> q;
  std::optional<int> p_div;
  int L = 32;
  int N = 128;
  double newton_tol = 1e-10;
  double return_tol = 1e-2;
  double max_step = 5e-2;
  int budget = 5000;
  int slot = 1;               // which point of the mode-q pair seeds a branch
  int switch_sign = 1;
  double switch_amplitude = 1e-2;
  int samples = 2001;         // trivial-curve export resolution
  int grid_size = 10000;      // root-bracketing scan resolution
  int n_max = 10;             // counterexample levels
  double a_cut = 2.5;
  std::string out_dir = ".";

  void validate() const;

  Paramsd params() const { return Paramsd(d, f); }
  ContinuationConfig<double> continuation() const;

  static RunConfig from_json(const json& j);
  json to_json() const;
};

/// Apply the output-directory fallback from the environment (LLEBIF_OUT).
void apply_env_fallback(RunConfig& cfg);

// -- structured exports ----------------------------------------------------

json primary_table_json(const Paramsd& p,
                        const std::vector<PrimaryBifPoint<double>>& pts,
                        int kmax);
std::string primary_table_csv(const std::vector<PrimaryBifPoint<double>>& pts,
                              int kmax);

json certificate_json(const Certificate<double>& cert, const Paramsd& p);
Certificate<double> certificate_from_json(const json& j);

json index_report_json(const Paramsd& p, int p_div,
                       const std::vector<IndexJump<double>>& jumps);

std::string trivial_csv(const Paramsd& p, int samples);

std::string branch_csv(const Branch<double>& branch,
                       const CosineGrid<double>& grid);
json branch_meta_json(const Branch<double>& branch, const Paramsd& p);

json secondary_report_json(
    const Branch<double>& branch,
    const std::vector<std::pair<BranchPoint<double>, BranchPoint<double>>>&
        pairs,
    const Paramsd& p);

json counterexample_report_json(const counterexample::Report<double>& rep,
                                double a_cut, int n_max);

/// Bifurcation diagram: detuning horizontal, amplitude vertical; the
/// constant-solution family black, the traced branch blue, ambient index
/// changes marked.
std::string diagram_svg(const Paramsd& p, const Branch<double>& branch,
                        const std::vector<std::pair<BranchPoint<double>,
                                                    BranchPoint<double>>>&
                            changes);

/// Execute one command: compute, write the output files into cfg.out_dir
/// and return 0, or emit a machine-readable error object to `err` and
/// return nonzero.
int run(const RunConfig& cfg, Command cmd, std::ostream& out,
        std::ostream& err);

}  // namespace llebif::io
