// SPDX-License-Identifier: MIT
//
// Deterministic JSON/CSV serialization for coefficient tables, walk plans,
// trajectories, state vectors, density matrices, and measurement records.
// Objects keep insertion order, floating-point text uses "%.17g" with "."
// decimals, and half-integers render as fractions ("3/2"), so identical
// inputs always produce byte-identical files.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spinwalk/cg.hpp"
#include "spinwalk/engine.hpp"
#include "spinwalk/plan.hpp"
#include "spinwalk/sparse.hpp"
#include "spinwalk/tomography.hpp"

namespace spinwalk::io {

using json = nlohmann::ordered_json;

/// Shortest text that round-trips the double exactly ("%.17g").
std::string format_double(double v);

/// {"dim": D, "amplitudes": [[re, im], ...]}
json state_to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

/// [[[re, im], ...] per row] — dense complex matrix.
json matrix_to_json(const Eigen::MatrixXcd& m);

/// {"j1","j2","entries":[{"j","m","m1","m2","value"}...]} with half-integers
/// as fraction strings, in table order.
json table_to_json(const CGTable& table);

/// CSV with header j,m,m1,m2,value — one row per structural entry.
std::string table_to_csv(const CGTable& table);

/// {"j1","j2","origin","target":{"j","m"},"global_phase":[re,im],
///  "steps":[{"kind","from":{"j","m"},"to":{"j","m"},"t","phase":[re,im]}...]}
json plan_to_json(const WalkPlan& plan);

/// CSV with header step,kind,from_j,from_m,to_j,to_m,t,tau,leakage,norm_dev.
std::string trajectory_to_csv(const WalkPlan& plan, const Trajectory& traj);

/// Sampled: {"axes","shots","counts":{bitstring:count}};
/// exact:   {"axes","exact":true,"probabilities":{bitstring:p}}.
json record_to_json(const ShotRecord& rec);
ShotRecord record_from_json(const json& j);
json records_to_json(const std::vector<ShotRecord>& recs);
std::vector<ShotRecord> records_from_json(const json& j);

/// {"n", "rho": matrix} for a validated density matrix.
json density_to_json(const DensityMatrix& rho);

/// Write text to a file, creating parent directories; throws on I/O failure.
void write_text(const std::string& path, const std::string& content);

}  // namespace spinwalk::io
