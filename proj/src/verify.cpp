// SPDX-License-Identifier: MIT

#include "spinwalk/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "spinwalk/cg.hpp"
#include "spinwalk/engine.hpp"
#include "spinwalk/operators.hpp"

namespace spinwalk {

namespace {

// Pinned pass thresholds for run_verification.
constexpr double kTableTol = 1e-10;     // rms over all structural table entries
constexpr double kPathTol = 1e-6;       // per-step rms separation along paths
constexpr double kIdentityTol = 1e-12;  // normalized residual, max-abs/(1+‖LHS‖_max)

using Mat = Eigen::MatrixXcd;

/// Oracle coupled state as a full-dimension vector: the recurrence column
/// scattered onto its m-plane's encoded indices.
StateVector oracle_state(const SpinPair& sp, const CoupledLabel& c) {
  StateVector v = StateVector::Zero(sp.dim());
  const std::vector<double> col = cg_column(sp, c.j, c.m);
  const std::vector<BasisIndex> idx = enumerate_m_plane(sp, c.m);
  for (std::size_t k = 0; k < idx.size(); ++k) v(idx[k]) = Complex(col[k], 0.0);
  return v;
}

int levi_civita(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  const bool even = (a == 0 && b == 1 && c == 2) || (a == 1 && b == 2 && c == 0) ||
                    (a == 2 && b == 0 && c == 1);
  return even ? 1 : -1;
}

Mat comm(const Mat& x, const Mat& y) { return x * y - y * x; }

/// Max-abs residual of lhs == rhs, normalized so the threshold is scale-free.
double scaled_residual(const Mat& lhs, const Mat& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff() / (1.0 + lhs.cwiseAbs().maxCoeff());
}

}  // namespace

std::vector<double> epsilon_path(const SpinPair& sp, CoupledLabel target, Origin origin) {
  const WalkPlan p = plan(sp, target, origin);
  const Trajectory traj = execute(p, false);
  const double dinv = 1.0 / static_cast<double>(sp.dim());
  std::vector<double> eps;
  eps.reserve(traj.states.size());
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const CoupledLabel label = (k == 0) ? p.start_label() : p.steps[k - 1].to;
    eps.push_back(std::sqrt(dinv * (traj.states[k] - oracle_state(sp, label)).squaredNorm()));
  }
  return eps;
}

std::pair<double, double> epsilon_table_both(const SpinPair& sp) {
  const CGTable walked = cg_table_via_walks(sp);
  const CGTable oracle = cg_full_table(sp);
  const std::size_t n = oracle.entries.size();
  if (walked.entries.size() != n)
    throw std::logic_error("walk and recurrence tables have different sizes");

  double raw_sum = 0.0;
  double aligned_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    // One coupled column is a contiguous run of slots sharing (j, m).
    double sum_minus = 0.0;
    double sum_plus = 0.0;
    std::size_t e = i;
    for (; e < n && oracle.entries[e].j == oracle.entries[i].j &&
           oracle.entries[e].m == oracle.entries[i].m;
         ++e) {
      const CGEntry& w = walked.entries[e];
      const CGEntry& o = oracle.entries[e];
      if (!(w.j == o.j && w.m == o.m && w.m1 == o.m1 && w.m2 == o.m2))
        throw std::logic_error("walk and recurrence tables enumerate different slots");
      sum_minus += (w.value - o.value) * (w.value - o.value);
      sum_plus += (w.value + o.value) * (w.value + o.value);
    }
    raw_sum += sum_minus;
    // The aligned variant lets each column carry its own global sign.
    aligned_sum += std::min(sum_minus, sum_plus);
    i = e;
  }
  const double k = static_cast<double>(n);
  return {std::sqrt(raw_sum / k), std::sqrt(aligned_sum / k)};
}

double epsilon_table(const SpinPair& sp) { return epsilon_table_both(sp).first; }

std::map<std::string, double> algebra_suite(const SpinPair& sp) {
  const auto g = generators(sp);
  const auto d = sp.dim();
  const Complex kI{0.0, 1.0};
  const Mat id = Mat::Identity(d, d);

  const Mat jx = 0.5 * (g->jp + g->jm);
  const Mat jy = -0.5 * kI * (g->jp - g->jm);
  const Mat ax = 0.5 * (g->ap + g->am);
  const Mat ay = -0.5 * kI * (g->ap - g->am);
  const std::array<Mat, 3> J{jx, jy, g->jz};
  const std::array<Mat, 3> A{ax, ay, g->az};
  const Mat& lam = g->lambda;

  const Mat jsq = J[0] * J[0] + J[1] * J[1] + J[2] * J[2];
  std::array<Mat, 3> S;
  for (int a = 0; a < 3; ++a) S[a] = 0.5 * kI * comm(A[a], jsq);

  auto dot = [](const std::array<Mat, 3>& x, const std::array<Mat, 3>& y) {
    return Mat(x[0] * y[0] + x[1] * y[1] + x[2] * y[2]);
  };
  auto cross = [&](const std::array<Mat, 3>& x, const std::array<Mat, 3>& y, int c) {
    Mat out = Mat::Zero(d, d);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (const int e = levi_civita(a, b, c); e != 0)
          out += static_cast<double>(e) * (x[a] * y[b]);
    return out;
  };

  const Mat asq = dot(A, A);
  const Mat ssq = dot(S, S);
  const Mat adots = dot(A, S);
  const Mat core = lam * jsq - asq;  // recurring combination ΛJ² − A²
  const double c1 = sp.j1().value() * (sp.j1().value() + 1.0);
  const double c2 = sp.j2().value() * (sp.j2().value() + 1.0);

  std::map<std::string, double> out;
  auto record = [&out](const char* key, double value) {
    auto [it, inserted] = out.try_emplace(key, value);
    if (!inserted) it->second = std::max(it->second, value);
  };

  // Commutator tables over every component pair, including the vanishing
  // off-axis combinations.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Mat jj_rhs = Mat::Zero(d, d);
      Mat aj_rhs = Mat::Zero(d, d);
      Mat aa_rhs = Mat::Zero(d, d);
      Mat js_rhs = Mat::Zero(d, d);
      Mat ss_rhs = Mat::Zero(d, d);
      for (int c = 0; c < 3; ++c) {
        if (const int e = levi_civita(a, b, c); e != 0) {
          const double ed = static_cast<double>(e);
          jj_rhs += ed * kI * J[c];
          aj_rhs += ed * kI * A[c];
          aa_rhs += ed * kI * (lam * J[c]);
          js_rhs += ed * kI * S[c];
          ss_rhs += ed * (adots * J[c]);
        }
      }
      record("jj-commutators", scaled_residual(comm(J[a], J[b]), jj_rhs));
      record("aj-commutators", scaled_residual(comm(A[a], J[b]), aj_rhs));
      record("aa-commutators", scaled_residual(comm(A[a], A[b]), aa_rhs));
      record("js-commutators", scaled_residual(comm(J[a], S[b]), js_rhs));
      record("ss-commutators", scaled_residual(comm(S[a], S[b]), ss_rhs));
      Mat as_rhs = kI * (A[a] * A[b] - lam * (J[a] * J[b]));
      if (a == b) as_rhs += kI * core;
      record("as-commutators", scaled_residual(comm(A[a], S[b]), as_rhs));
    }
  }

  // The scalar Λ couples to A and S.
  for (int a = 0; a < 3; ++a) {
    record("s-from-lambda-a", scaled_residual(comm(lam, A[a]), kI * S[a]));
    record("s-lambda-commutators",
           scaled_residual(comm(S[a], lam), 0.5 * kI * (A[a] * jsq + jsq * A[a])));
  }

  // Inner products.
  const Mat zero = Mat::Zero(d, d);
  record("aj-inner", scaled_residual(dot(A, J), zero));
  record("aj-inner", scaled_residual(dot(J, A), zero));
  record("sj-inner", scaled_residual(dot(S, J), zero));
  record("sj-inner", scaled_residual(dot(J, S), zero));
  record("as-inner", scaled_residual(adots, kI * core));
  record("as-inner", scaled_residual(dot(S, A), -kI * core));

  // Cross products, component by component.
  for (int c = 0; c < 3; ++c) {
    record("axj-cross", scaled_residual(cross(A, J, c), S[c] + kI * A[c]));
    record("jxa-cross", scaled_residual(cross(J, A, c), -S[c] + kI * A[c]));
    record("sxa-cross", scaled_residual(cross(S, A, c), asq * J[c]));
    record("axs-cross", scaled_residual(cross(A, S, c), -(asq * J[c])));
    record("jxs-cross", scaled_residual(cross(J, S, c), jsq * A[c]));
    record("sxj-cross", scaled_residual(cross(S, J, c), -(A[c] * jsq)));
  }

  // Scalar closures; both Casimirs enter as plain numbers.
  record("a-squared-closure", scaled_residual(asq, c1 * c2 * id - lam - lam * lam));
  record("s-squared-closure", scaled_residual(ssq, asq + asq * jsq - jsq * lam));

  return out;
}

double selection_rule_audit(const SpinPair& sp) {
  const auto g = generators(sp);
  const Mat u = cg_unitary(sp).cast<Complex>();
  const std::vector<CoupledLabel> labels = coupled_labels(sp);
  const auto d = sp.dim();

  // Allowed slots: Δj = ±1 always; Δm = 0 for the z component, ±1 for the
  // raising/lowering components.
  auto audit = [&](const Mat& op, int dm_twice) {
    const Mat rot = u.adjoint() * op * u;
    double worst = 0.0;
    for (BasisIndex r = 0; r < d; ++r) {
      for (BasisIndex c = 0; c < d; ++c) {
        const bool dj_ok = std::abs(labels[r].j.twice() - labels[c].j.twice()) == 2;
        const bool dm_ok = labels[r].m.twice() - labels[c].m.twice() == dm_twice;
        if (dj_ok && dm_ok) continue;
        worst = std::max(worst, std::abs(rot(r, c)));
      }
    }
    return worst;
  };

  return std::max({audit(g->az, 0), audit(g->ap, 2), audit(g->am, -2)});
}

NoiseGrowth noise_growth(const SpinPair& sp, const WalkPlan& path, double delta,
                         std::uint64_t seed) {
  if (!(path.sp.j1() == sp.j1() && path.sp.j2() == sp.j2()))
    throw std::invalid_argument("plan belongs to a different pair");

  const Trajectory clean = execute(path, false);
  const std::vector<Mat> steps = decomposition(path);
  const auto d = sp.dim();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  StateVector noisy = clean.states.front();
  NoiseGrowth out;
  out.observed.reserve(steps.size() + 1);
  out.bound.reserve(steps.size() + 1);
  out.observed.push_back(0.0);
  out.bound.push_back(0.0);

  double cos_prod = 1.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (delta > 0.0) {
      // Random Hermitian error generator, rescaled so max|eigenvalue| = delta.
      Mat raw(d, d);
      for (BasisIndex r = 0; r < d; ++r)
        for (BasisIndex c = 0; c < d; ++c) raw(r, c) = Complex(gauss(rng), gauss(rng));
      const Mat herm = 0.5 * (raw + raw.adjoint());
      const Eigen::SelfAdjointEigenSolver<Mat> es(herm);
      const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
      const double scale = lmax > 0.0 ? delta / lmax : 0.0;
      StateVector y = es.eigenvectors().adjoint() * noisy;
      for (BasisIndex p = 0; p < d; ++p)
        y(p) *= std::exp(Complex(0.0, es.eigenvalues()(p) * scale));
      noisy = es.eigenvectors() * y;
      cos_prod *= std::cos(delta);
    }
    noisy = steps[k] * noisy;
    out.observed.push_back((clean.states[k + 1] - noisy).squaredNorm());
    out.bound.push_back(2.0 * (1.0 - cos_prod));
  }
  return out;
}

VerificationReport run_verification(const SpinPair& sp) {
  VerificationReport report{sp};
  const auto [raw, aligned] = epsilon_table_both(sp);
  report.eps_table = raw;
  report.eps_table_aligned = aligned;
  report.eps_paths["edge"] =
      epsilon_path(sp, CoupledLabel{sp.jmax(), -sp.jmax()}, Origin::Top);
  report.eps_paths["side"] = epsilon_path(sp, CoupledLabel{sp.jmin(), sp.jmin()}, Origin::Top);
  report.identity_residuals = algebra_suite(sp);
  report.identity_residuals["selection-rules"] = selection_rule_audit(sp);

  bool ok = report.eps_table < kTableTol;
  for (const auto& [name, eps] : report.eps_paths)
    for (const double e : eps) ok = ok && e < kPathTol;
  for (const auto& [name, residual] : report.identity_residuals)
    ok = ok && residual < kIdentityTol;
  report.pass = ok;
  return report;
}

}  // namespace spinwalk
