// SPDX-License-Identifier: MIT
//
// Command-line front end: coefficient tables, state preparation, the
// verification sweep, pulse-cost scaling scans, and tomography round trips,
// all with deterministic file outputs. Every run writes a machine-readable
// summary.json into the output directory (overridable with --output-dir or
// the SPINWALK_OUTPUT_DIR environment variable) and prints the same JSON to
// stdout. Identical configuration and seed produce byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinwalk/cg.hpp"
#include "spinwalk/engine.hpp"
#include "spinwalk/half_integer.hpp"
#include "spinwalk/io.hpp"
#include "spinwalk/plan.hpp"
#include "spinwalk/tomography.hpp"
#include "spinwalk/verify.hpp"

namespace {

using spinwalk::CGTable;
using spinwalk::CoupledLabel;
using spinwalk::Origin;
using spinwalk::SpinPair;
using spinwalk::StateVector;
using spinwalk::StepKind;
using json = spinwalk::io::json;

constexpr std::uint64_t kDefaultSeed = 12345;

std::string joined(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

void finish(const std::string& outdir, json& summary) {
  const std::string text = summary.dump(2) + "\n";
  spinwalk::io::write_text(joined(outdir, "summary.json"), text);
  std::cout << summary.dump() << "\n";
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto k = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

int cmd_cg_table(const std::string& j1_text, const std::string& j2_text, bool both,
                 const std::string& format, const std::string& outdir) {
  const SpinPair sp{spinwalk::parse_halfint(j1_text), spinwalk::parse_halfint(j2_text)};
  const CGTable oracle = spinwalk::cg_full_table(sp);

  json summary;
  summary["command"] = "cg-table";
  summary["j1"] = sp.j1().str();
  summary["j2"] = sp.j2().str();
  summary["entries"] = oracle.entries.size();
  json files = json::array();

  const auto emit = [&](const CGTable& table, const std::string& stem) {
    const std::string name = stem + (format == "csv" ? ".csv" : ".json");
    const std::string body = format == "csv" ? spinwalk::io::table_to_csv(table)
                                             : spinwalk::io::table_to_json(table).dump(2) + "\n";
    spinwalk::io::write_text(joined(outdir, name), body);
    files.push_back(name);
  };
  emit(oracle, "table_oracle");

  if (both) {
    const CGTable walk = spinwalk::cg_table_via_walks(sp);
    emit(walk, "table_walk");
    double sum = 0.0;
    for (std::size_t k = 0; k < oracle.entries.size(); ++k) {
      const double d = walk.entries[k].value - oracle.entries[k].value;
      sum += d * d;
    }
    summary["epsilon"] = std::sqrt(sum / static_cast<double>(oracle.entries.size()));
  }

  summary["files"] = std::move(files);
  finish(outdir, summary);
  return 0;
}

int cmd_prepare(const std::string& j1_text, const std::string& j2_text,
                const std::string& j_text, const std::string& m_text, const std::string& origin,
                bool clamp, const std::vector<std::string>& emit, const std::string& outdir) {
  const SpinPair sp{spinwalk::parse_halfint(j1_text), spinwalk::parse_halfint(j2_text)};
  const CoupledLabel target{spinwalk::parse_halfint(j_text), spinwalk::parse_halfint(m_text)};
  const std::map<std::string, Origin> origins{
      {"auto", Origin::Auto}, {"top", Origin::Top}, {"bottom", Origin::Bottom}};
  const auto origin_it = origins.find(origin);
  if (origin_it == origins.end())
    throw std::invalid_argument("unknown origin '" + origin + "' (auto, top, bottom)");
  for (const std::string& item : emit)
    if (item != "unitaries")
      throw std::invalid_argument("unknown --emit item '" + item + "' (supported: unitaries)");

  const spinwalk::WalkPlan plan = spinwalk::plan(sp, target, origin_it->second);
  const spinwalk::Trajectory traj = spinwalk::execute(plan, clamp);
  const std::vector<double> separation = spinwalk::epsilon_path(sp, target, origin_it->second);

  json summary;
  summary["command"] = "prepare";
  summary["j1"] = sp.j1().str();
  summary["j2"] = sp.j2().str();
  summary["target"]["j"] = target.j.str();
  summary["target"]["m"] = target.m.str();
  summary["origin"] = plan.origin == Origin::Top ? "top" : "bottom";
  summary["steps"] = plan.steps.size();
  json files = json::array();

  spinwalk::io::write_text(joined(outdir, "plan.json"),
                           spinwalk::io::plan_to_json(plan).dump(2) + "\n");
  files.push_back("plan.json");
  spinwalk::io::write_text(joined(outdir, "trajectory.csv"),
                           spinwalk::io::trajectory_to_csv(plan, traj));
  files.push_back("trajectory.csv");
  spinwalk::io::write_text(joined(outdir, "final_state.json"),
                           spinwalk::io::state_to_json(traj.states.back()).dump(2) + "\n");
  files.push_back("final_state.json");

  if (std::find(emit.begin(), emit.end(), "unitaries") != emit.end()) {
    json list = json::array();
    for (const Eigen::MatrixXcd& u : spinwalk::decomposition(plan))
      list.push_back(spinwalk::io::matrix_to_json(u));
    spinwalk::io::write_text(joined(outdir, "unitaries.json"), list.dump(2) + "\n");
    files.push_back("unitaries.json");
  }

  double max_leak = 0.0, max_norm_dev = 0.0;
  for (const spinwalk::StepDiagnostics& d : traj.diags) {
    max_leak = std::max(max_leak, d.leakage);
    max_norm_dev = std::max(max_norm_dev, d.norm_dev);
  }
  summary["max_leakage"] = max_leak;
  summary["max_norm_dev"] = max_norm_dev;
  summary["final_separation"] = separation.back();
  summary["files"] = std::move(files);
  finish(outdir, summary);
  return 0;
}

int cmd_verify(const std::string& jmax_text, const std::string& outdir) {
  const spinwalk::HalfInt jmax = spinwalk::parse_halfint(jmax_text);
  if (jmax < spinwalk::HalfInt::from_twice(1))
    throw std::invalid_argument("--jmax must be at least 1/2");

  std::string csv = "j1,j2,eps_table,eps_table_aligned,eps_edge_max,eps_side_max,residual_max,pass\n";
  bool all_pass = true;
  double worst_table = 0.0, worst_residual = 0.0;
  std::int64_t pairs = 0;
  for (std::int64_t tj1 = 1; tj1 <= jmax.twice(); ++tj1) {
    for (std::int64_t tj2 = 0; tj2 <= tj1; ++tj2) {
      const SpinPair sp{spinwalk::HalfInt::from_twice(tj1), spinwalk::HalfInt::from_twice(tj2)};
      const spinwalk::VerificationReport report = spinwalk::run_verification(sp);
      const auto path_max = [&](const std::string& key) {
        const std::vector<double>& eps = report.eps_paths.at(key);
        return *std::max_element(eps.begin(), eps.end());
      };
      double residual_max = 0.0;
      for (const auto& [name, value] : report.identity_residuals)
        residual_max = std::max(residual_max, value);
      csv += sp.j1().str() + "," + sp.j2().str() + "," +
             spinwalk::io::format_double(report.eps_table) + "," +
             spinwalk::io::format_double(report.eps_table_aligned) + "," +
             spinwalk::io::format_double(path_max("edge")) + "," +
             spinwalk::io::format_double(path_max("side")) + "," +
             spinwalk::io::format_double(residual_max) + "," + (report.pass ? "1" : "0") + "\n";
      all_pass = all_pass && report.pass;
      worst_table = std::max(worst_table, report.eps_table);
      worst_residual = std::max(worst_residual, residual_max);
      ++pairs;
    }
  }

  spinwalk::io::write_text(joined(outdir, "verify.csv"), csv);
  json summary;
  summary["command"] = "verify";
  summary["jmax"] = jmax.str();
  summary["pairs"] = pairs;
  summary["all_pass"] = all_pass;
  summary["worst_eps_table"] = worst_table;
  summary["worst_residual"] = worst_residual;
  summary["files"] = json::array({"verify.csv"});
  finish(outdir, summary);
  return all_pass ? 0 : 2;
}

int cmd_scaling(const std::string& walk, bool diag, const std::string& jmax_text,
                const std::string& j1_text, const std::string& j2_text,
                const std::string& outdir) {
  const std::map<std::string, StepKind> kinds{
      {"M", StepKind::M}, {"L", StepKind::L}, {"R", StepKind::R}};
  const auto kind_it = kinds.find(walk);
  if (kind_it == kinds.end())
    throw std::invalid_argument("unknown --walk '" + walk + "' (M, L, R)");
  const StepKind kind = kind_it->second;

  std::string csv = "j1,j2,kind,j,m,t,hmax,tau\n";
  const auto append_scan = [&](const SpinPair& sp) {
    double max_tau = 0.0;
    for (const spinwalk::ScanPoint& p : spinwalk::scaling_scan(sp, kind)) {
      csv += sp.j1().str() + "," + sp.j2().str() + "," + spinwalk::step_kind_name(p.kind) + "," +
             p.j.str() + "," + p.m.str() + "," + spinwalk::io::format_double(p.t) + "," +
             spinwalk::io::format_double(p.hmax) + "," + spinwalk::io::format_double(p.tau) + "\n";
      max_tau = std::max(max_tau, p.tau);
    }
    return max_tau;
  };

  json summary;
  summary["command"] = "scaling";
  summary["walk"] = walk;
  int exit_code = 0;

  if (diag) {
    const spinwalk::HalfInt jmax = spinwalk::parse_halfint(jmax_text);
    if (!jmax.is_integer() || jmax < spinwalk::HalfInt(2))
      throw std::invalid_argument("--jmax must be an integer of at least 2 for --diag");
    std::vector<double> log_j, log_tau;
    for (std::int64_t k = 2; k <= jmax.twice() / 2; ++k) {
      const SpinPair sp{spinwalk::HalfInt(static_cast<int>(k)),
                        spinwalk::HalfInt(static_cast<int>(k))};
      const double max_tau = append_scan(sp);
      log_j.push_back(std::log(static_cast<double>(k)));
      log_tau.push_back(std::log(max_tau));
    }
    const double slope = lsq_slope(log_j, log_tau);
    summary["jmax"] = jmax.str();
    summary["slope"] = slope;
    if (kind == StepKind::M) {
      summary["band"] = json::array({0.7, 1.3});
      if (slope < 0.7 || slope > 1.3) exit_code = 2;
    } else if (kind == StepKind::L) {
      summary["band"] = json::array({2.5, 3.5});
      if (slope < 2.5 || slope > 3.5) exit_code = 2;
    }
    summary["pass"] = exit_code == 0;
  } else {
    if (j1_text.empty() || j2_text.empty())
      throw std::invalid_argument("scaling needs either --diag or both --j1 and --j2");
    const SpinPair sp{spinwalk::parse_halfint(j1_text), spinwalk::parse_halfint(j2_text)};
    summary["j1"] = sp.j1().str();
    summary["j2"] = sp.j2().str();
    summary["max_tau"] = append_scan(sp);
  }

  spinwalk::io::write_text(joined(outdir, "scaling.csv"), csv);
  summary["files"] = json::array({"scaling.csv"});
  finish(outdir, summary);
  return exit_code;
}

int cmd_tomo(int n_opt, const std::string& state_path, std::int64_t shots, std::uint64_t seed,
             bool exact, bool pure, const std::string& outdir) {
  StateVector psi;
  if (!state_path.empty()) {
    std::ifstream in(state_path);
    if (!in) throw std::runtime_error("cannot read state file: " + state_path);
    json parsed = json::parse(in);
    psi = spinwalk::io::state_from_json(parsed);
  } else {
    if (n_opt < 1)
      throw std::invalid_argument("tomo needs --state or a positive --n to draw a random state");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss;
    psi = StateVector(Eigen::Index{1} << n_opt);
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      psi(i) = spinwalk::Complex(gauss(rng), gauss(rng));
  }
  psi = spinwalk::embed_qubits(psi);
  psi.normalize();
  const int n = spinwalk::qubit_count(psi.size());
  if (n < 1) throw std::invalid_argument("state must span at least one qubit");
  if (n_opt > 0 && n != n_opt)
    throw std::invalid_argument("--n=" + std::to_string(n_opt) + " but the state occupies " +
                                std::to_string(n) + " qubits");

  json summary;
  summary["command"] = "tomo";
  summary["n"] = n;
  summary["shots"] = exact ? 0 : shots;
  summary["seed"] = seed;
  summary["exact"] = exact;
  summary["pure"] = pure;
  json files = json::array();
  json reconstruction;

  if (pure) {
    const spinwalk::PureTomography run =
        spinwalk::run_pure_tomography(psi, exact ? 0 : shots, seed, exact);
    spinwalk::io::write_text(joined(outdir, "records.json"),
                             spinwalk::io::records_to_json(run.records).dump(2) + "\n");
    files.push_back("records.json");
    reconstruction["type"] = "pure";
    reconstruction["n"] = n;
    json settings = json::array();
    for (const spinwalk::ShotRecord& rec : run.records) settings.push_back(rec.axes);
    reconstruction["settings"] = std::move(settings);
    reconstruction["state"] = spinwalk::io::state_to_json(run.state);
    summary["settings_used"] = run.records.size();
    summary["fidelity"] = std::abs(run.state.normalized().dot(psi));
  } else {
    const std::vector<spinwalk::ShotRecord> records =
        spinwalk::measure_all_axes(psi, exact ? 0 : shots, seed, exact);
    const auto [coeffs, rho] = spinwalk::reconstruct_density(records, n);
    spinwalk::io::write_text(joined(outdir, "records.json"),
                             spinwalk::io::records_to_json(records).dump(2) + "\n");
    files.push_back("records.json");
    reconstruction["type"] = "density";
    reconstruction["n"] = n;
    reconstruction["coefficients"] = coeffs.R;
    reconstruction["rho"] = spinwalk::io::matrix_to_json(rho.rho);
    summary["settings_used"] = records.size();
    summary["purity"] = spinwalk::purity(rho);
    summary["fidelity"] = spinwalk::fidelity(rho, spinwalk::pure_density(psi));
  }

  spinwalk::io::write_text(joined(outdir, "reconstruction.json"),
                           reconstruction.dump(2) + "\n");
  files.push_back("reconstruction.json");
  summary["files"] = std::move(files);
  finish(outdir, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled-pair walk engine: tables, preparation, verification, scaling, tomography"};
  app.require_subcommand(1);

  std::string j1_text, j2_text, j_text, m_text;
  std::string origin = "auto";
  std::string format = "json";
  std::string outdir = ".";
  std::string jmax_text = "3";
  std::string walk = "L";
  std::string state_path;
  std::vector<std::string> emit;
  bool both = false, clamp = false, diag = false, exact = false, pure = false;
  int n_opt = 0;
  std::int64_t shots = 16384;
  std::uint64_t seed = kDefaultSeed;

  const auto add_outdir = [&](CLI::App* sub) {
    sub->add_option("--output-dir", outdir, "directory for output files")
        ->envname("SPINWALK_OUTPUT_DIR");
  };

  CLI::App* cg = app.add_subcommand("cg-table", "write the coefficient table(s) for one pair");
  cg->add_option("--j1", j1_text, "first spin (fraction text, j1 >= j2)")->required();
  cg->add_option("--j2", j2_text, "second spin")->required();
  cg->add_flag("--both", both, "also generate the walk-built table and report epsilon");
  cg->add_option("--format", format, "table format")->check(CLI::IsMember({"json", "csv"}));
  add_outdir(cg);

  CLI::App* prep = app.add_subcommand("prepare", "plan and execute a walk to one coupled state");
  prep->add_option("--j1", j1_text, "first spin")->required();
  prep->add_option("--j2", j2_text, "second spin")->required();
  prep->add_option("--j", j_text, "target total spin")->required();
  prep->add_option("--m", m_text, "target projection")->required();
  prep->add_option("--origin", origin, "walk origin")->check(CLI::IsMember({"auto", "top", "bottom"}));
  prep->add_flag("--clamp", clamp, "project out off-window amplitude after each step");
  prep->add_option("--emit", emit, "extra artifacts (unitaries)");
  add_outdir(prep);

  CLI::App* ver = app.add_subcommand("verify", "sweep pairs up to --jmax through every check");
  ver->add_option("--jmax", jmax_text, "largest j1 in the sweep (half-integer text)");
  add_outdir(ver);

  CLI::App* scal = app.add_subcommand("scaling", "pulse-cost scan and slope fit");
  scal->add_option("--walk", walk, "transition kind")->check(CLI::IsMember({"M", "L", "R"}));
  scal->add_flag("--diag", diag, "scan j1 = j2 from 2 to --jmax and fit the max-tau slope");
  scal->add_option("--jmax", jmax_text, "largest j1 for --diag");
  scal->add_option("--j1", j1_text, "single-pair mode: first spin");
  scal->add_option("--j2", j2_text, "single-pair mode: second spin");
  add_outdir(scal);

  CLI::App* tomo = app.add_subcommand("tomo", "measurement round trip on a register state");
  tomo->add_option("--n", n_opt, "qubit count (required without --state)");
  tomo->add_option("--state", state_path, "input state JSON (amplitudes are normalized on load)");
  tomo->add_option("--shots", shots, "shots per measurement setting");
  tomo->add_option("--seed", seed, "seed for shot sampling (and the random state without --state)");
  tomo->add_flag("--exact", exact, "use exact outcome probabilities instead of sampling");
  tomo->add_flag("--pure", pure, "use the few-setting pure-state pipeline");
  add_outdir(tomo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(cg)) return cmd_cg_table(j1_text, j2_text, both, format, outdir);
    if (app.got_subcommand(prep))
      return cmd_prepare(j1_text, j2_text, j_text, m_text, origin, clamp, emit, outdir);
    if (app.got_subcommand(ver)) return cmd_verify(jmax_text, outdir);
    if (app.got_subcommand(scal))
      return cmd_scaling(walk, diag, jmax_text, j1_text, j2_text, outdir);
    if (app.got_subcommand(tomo))
      return cmd_tomo(n_opt, state_path, shots, seed, exact, pure, outdir);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
