// SPDX-License-Identifier: MIT

#include "spinwalk/engine.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinwalk/evolve.hpp"
#include "spinwalk/operators.hpp"

namespace spinwalk {

namespace {

/// Anchor labels of a step's window Hamiltonian: the higher-(j,m) member of
/// the pair, independent of travel direction.
std::pair<HalfInt, HalfInt> step_anchor(const WalkStep& s) {
  const HalfInt j = s.from.j < s.to.j ? s.to.j : s.from.j;
  const HalfInt m = s.from.m < s.to.m ? s.to.m : s.from.m;
  return {j, m};
}

SparseHermitian step_hamiltonian(const SpinPair& sp, const WalkStep& s,
                                 std::size_t index) {
  const auto [j, m] = step_anchor(s);
  try {
    switch (s.kind) {
      case StepKind::M:
        return build_M(sp, m);
      case StepKind::L:
        return build_L(sp, j, m);
      case StepKind::R:
        return build_R(sp, j, m);
    }
    throw std::domain_error("unknown step kind");
  } catch (const std::exception& e) {
    throw std::domain_error("step " + std::to_string(index) + ": " + e.what());
  }
}

/// true for every encoded index inside the window's two m-planes.
std::vector<bool> window_mask(const SpinPair& sp, HalfInt m_hi) {
  std::vector<bool> in(static_cast<std::size_t>(sp.dim()), false);
  const HalfInt m_lo = HalfInt::from_twice(m_hi.twice() - 2);
  for (const HalfInt m : {m_hi, m_lo}) {
    for (const BasisIndex l : enumerate_m_plane(sp, m)) {
      in[static_cast<std::size_t>(l)] = true;
    }
  }
  return in;
}

StateVector origin_state(const SpinPair& sp, Origin origin) {
  const HalfInt j1 = origin == Origin::Top ? sp.j1() : -sp.j1();
  const HalfInt j2 = origin == Origin::Top ? sp.j2() : -sp.j2();
  StateVector psi = StateVector::Zero(sp.dim());
  psi[encode(sp, ProductLabel{j1, j2})] = Complex{1.0, 0.0};
  return psi;
}

Trajectory run(const WalkPlan& plan, bool clamp, StateVector psi) {
  const SpinPair& sp = plan.sp;
  if (psi.size() != sp.dim()) {
    throw std::invalid_argument("execute: initial state has dimension " +
                                std::to_string(psi.size()) + ", expected " +
                                std::to_string(sp.dim()));
  }
  Trajectory traj;
  traj.states.reserve(plan.steps.size() + 1);
  traj.diags.reserve(plan.steps.size());
  traj.states.push_back(psi);
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const WalkStep& s = plan.steps[k];
    const SparseHermitian h = step_hamiltonian(sp, s, k);
    psi = evolve(h, s.t, traj.states.back());
    psi *= s.phase_fix;

    StepDiagnostics d;
    d.tau = s.t * h.norm_max();
    const std::vector<bool> in = window_mask(sp, step_anchor(s).second);
    for (Eigen::Index l = 0; l < psi.size(); ++l) {
      if (!in[static_cast<std::size_t>(l)]) {
        d.leakage += std::norm(psi[l]);
        if (clamp) psi[l] = Complex{0.0, 0.0};
      }
    }
    d.norm_dev = std::abs(1.0 - psi.norm());
    traj.diags.push_back(d);
    traj.states.push_back(psi);
  }
  return traj;
}

}  // namespace

Trajectory execute(const WalkPlan& plan, bool clamp) {
  const CoupledLabel start = plan.start_label();
  if (!(start == origin_label(plan.sp, plan.origin))) {
    throw std::invalid_argument(
        "execute: plan does not start at its origin eigenstate; "
        "supply the initial state explicitly");
  }
  return run(plan, clamp, origin_state(plan.sp, plan.origin));
}

Trajectory execute(const WalkPlan& plan, bool clamp, StateVector psi0) {
  return run(plan, clamp, std::move(psi0));
}

CGTable cg_table_via_walks(const SpinPair& sp) {
  CGTable table{sp, {}};
  for (const CoupledLabel& col : coupled_labels(sp)) {
    const Trajectory traj = execute(plan(sp, col), /*clamp=*/false);
    const StateVector& psi = traj.states.back();
    const std::vector<BasisIndex> idx = enumerate_m_plane(sp, col.m);
    const std::vector<ProductLabel> labels = plane_labels(sp, col.m);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      table.entries.push_back(
          {col.j, col.m, labels[k].m1, labels[k].m2, psi[idx[k]].real()});
    }
  }
  return table;
}

std::vector<Eigen::MatrixXcd> decomposition(const WalkPlan& plan) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(plan.steps.size());
  for (std::size_t k = 0; k < plan.steps.size(); ++k) {
    const WalkStep& s = plan.steps[k];
    const SparseHermitian h = step_hamiltonian(plan.sp, s, k);
    out.push_back(s.phase_fix * unitary_of(h, s.t));
  }
  return out;
}

std::vector<ScanPoint> scaling_scan(const SpinPair& sp, StepKind kind) {
  std::vector<ScanPoint> out;
  for (int tj = sp.jmax().twice(); tj >= sp.jmin().twice(); tj -= 2) {
    const HalfInt j = HalfInt::from_twice(tj);
    for (int tm = tj; tm >= -tj; tm -= 2) {
      const HalfInt m = HalfInt::from_twice(tm);
      double t = 0.0;
      try {
        t = pulse_time(kind, sp, j, m);
      } catch (const std::domain_error&) {
        continue;  // not a legal transition box
      }
      SparseHermitian h = kind == StepKind::M   ? build_M(sp, m)
                          : kind == StepKind::L ? build_L(sp, j, m)
                                                : build_R(sp, j, m);
      const double hmax = h.norm_max();
      out.push_back({kind, j, m, t, hmax, t * hmax});
    }
  }
  return out;
}

}  // namespace spinwalk
