// SPDX-License-Identifier: MIT

#include "spinwalk/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace spinwalk::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json label_to_json(const CoupledLabel& c) {
  json j;
  j["j"] = c.j.str();
  j["m"] = c.m.str();
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json state_to_json(const StateVector& psi) {
  json j;
  j["dim"] = psi.size();
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.size(); ++i) amps.push_back(complex_to_json(psi(i)));
  j["amplitudes"] = std::move(amps);
  return j;
}

StateVector state_from_json(const json& j) {
  const auto& amps = j.at("amplitudes");
  if (!amps.is_array() || amps.empty())
    throw std::invalid_argument("state JSON needs a nonempty 'amplitudes' array");
  StateVector psi(static_cast<Eigen::Index>(amps.size()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const auto& pair = amps.at(static_cast<std::size_t>(i));
    psi(i) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  if (j.contains("dim") && j.at("dim").get<Eigen::Index>() != psi.size())
    throw std::invalid_argument("state JSON 'dim' disagrees with its amplitude count");
  return psi;
}

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json table_to_json(const CGTable& table) {
  json j;
  j["j1"] = table.sp.j1().str();
  j["j2"] = table.sp.j2().str();
  json entries = json::array();
  for (const CGEntry& e : table.entries) {
    json row;
    row["j"] = e.j.str();
    row["m"] = e.m.str();
    row["m1"] = e.m1.str();
    row["m2"] = e.m2.str();
    row["value"] = e.value;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

std::string table_to_csv(const CGTable& table) {
  std::string out = "j,m,m1,m2,value\n";
  for (const CGEntry& e : table.entries) {
    out += e.j.str() + "," + e.m.str() + "," + e.m1.str() + "," + e.m2.str() + "," +
           format_double(e.value) + "\n";
  }
  return out;
}

json plan_to_json(const WalkPlan& plan) {
  json j;
  j["j1"] = plan.sp.j1().str();
  j["j2"] = plan.sp.j2().str();
  j["origin"] = plan.origin == Origin::Top ? "top" : "bottom";
  j["target"] = label_to_json(plan.target);
  j["global_phase"] = complex_to_json(plan.global_phase);
  json steps = json::array();
  for (const WalkStep& s : plan.steps) {
    json step;
    step["kind"] = step_kind_name(s.kind);
    step["from"] = label_to_json(s.from);
    step["to"] = label_to_json(s.to);
    step["t"] = s.t;
    step["phase"] = complex_to_json(s.phase_fix);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

std::string trajectory_to_csv(const WalkPlan& plan, const Trajectory& traj) {
  std::string out = "step,kind,from_j,from_m,to_j,to_m,t,tau,leakage,norm_dev\n";
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const WalkStep& s = plan.steps[k];
    const StepDiagnostics& d = traj.diags.at(k);
    out += std::to_string(k + 1) + "," + step_kind_name(s.kind) + "," + s.from.j.str() + "," +
           s.from.m.str() + "," + s.to.j.str() + "," + s.to.m.str() + "," + format_double(s.t) +
           "," + format_double(d.tau) + "," + format_double(d.leakage) + "," +
           format_double(d.norm_dev) + "\n";
  }
  return out;
}

json record_to_json(const ShotRecord& rec) {
  json j;
  j["axes"] = rec.axes;
  if (rec.exact) {
    j["exact"] = true;
    json probs;
    for (const auto& [key, p] : rec.probabilities) probs[key] = p;
    j["probabilities"] = std::move(probs);
  } else {
    j["shots"] = rec.shots;
    json counts;
    for (const auto& [key, c] : rec.counts) counts[key] = c;
    j["counts"] = std::move(counts);
  }
  return j;
}

ShotRecord record_from_json(const json& j) {
  ShotRecord rec;
  rec.axes = j.at("axes").get<std::string>();
  if (j.value("exact", false)) {
    rec.exact = true;
    for (const auto& [key, p] : j.at("probabilities").items())
      rec.probabilities[key] = p.get<double>();
  } else {
    rec.shots = j.at("shots").get<std::int64_t>();
    for (const auto& [key, c] : j.at("counts").items())
      rec.counts[key] = c.get<std::int64_t>();
  }
  return rec;
}

json records_to_json(const std::vector<ShotRecord>& recs) {
  json arr = json::array();
  for (const ShotRecord& rec : recs) arr.push_back(record_to_json(rec));
  return arr;
}

std::vector<ShotRecord> records_from_json(const json& j) {
  std::vector<ShotRecord> recs;
  for (const auto& item : j) recs.push_back(record_from_json(item));
  return recs;
}

json density_to_json(const DensityMatrix& rho) {
  json j;
  j["n"] = rho.n;
  j["rho"] = matrix_to_json(rho.rho);
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace spinwalk::io
