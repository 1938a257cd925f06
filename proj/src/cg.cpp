// SPDX-License-Identifier: MIT

#include "spinwalk/cg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinwalk {

namespace {

constexpr double kPivotTol = 1e-12;

struct PlaneSystem {
  std::vector<ProductLabel> labels;  // k order (descending m2)
  std::vector<double> diag;          // m1·m2
  std::vector<double> off;           // off[k] couples k and k+1
};

PlaneSystem plane_system(const SpinPair& sp, HalfInt m) {
  PlaneSystem sys;
  sys.labels = plane_labels(sp, m);
  const std::size_t n = sys.labels.size();
  sys.diag.resize(n);
  sys.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t k = 0; k < n; ++k) {
    sys.diag[k] = sys.labels[k].m1.value() * sys.labels[k].m2.value();
    if (k + 1 < n) {
      sys.off[k] = 0.5 * j_ladder(sp.j1(), sys.labels[k].m1, +1) *
                   j_ladder(sp.j2(), sys.labels[k].m2, -1);
    }
  }
  return sys;
}

// Eigenvector of the plane's tridiagonal matrix with eigenvalue nearest lam;
// used only when a substitution pivot underflows.
std::vector<double> eigh_fallback(const PlaneSystem& sys, double lam) {
  const auto n = static_cast<Eigen::Index>(sys.diag.size());
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    t(k, k) = sys.diag[static_cast<std::size_t>(k)];
    if (k + 1 < n) {
      t(k, k + 1) = t(k + 1, k) = sys.off[static_cast<std::size_t>(k)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(t);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < n; ++k) {
    if (std::abs(solver.eigenvalues()(k) - lam) < std::abs(solver.eigenvalues()(best) - lam)) {
      best = k;
    }
  }
  const Eigen::VectorXd v = solver.eigenvectors().col(best);
  return {v.data(), v.data() + v.size()};
}

}  // namespace

std::vector<double> cg_column(const SpinPair& sp, HalfInt j, HalfInt m) {
  if (!sp.contains(CoupledLabel{j, m})) {
    throw std::domain_error("cg_column: |" + j.str() + "," + m.str() +
                            "⟩ is not a coupled label of (" + sp.j1().str() + "," +
                            sp.j2().str() + ")");
  }
  const PlaneSystem sys = plane_system(sp, m);
  const std::size_t n = sys.labels.size();
  const double lam = lambda_eig(sp, j);

  std::vector<double> c(n, 0.0);
  c[n - 1] = 1.0;
  bool degenerate = false;
  for (std::size_t k = n - 1; k >= 1; --k) {
    if (std::abs(sys.off[k - 1]) < kPivotTol) {
      degenerate = true;
      break;
    }
    const double upper = (k + 1 < n) ? sys.off[k] * c[k + 1] : 0.0;
    c[k - 1] = -((sys.diag[k] - lam) * c[k] + upper) / sys.off[k - 1];
  }
  if (degenerate) c = eigh_fallback(sys, lam);

  double norm = 0.0;
  for (const double v : c) norm += v * v;
  norm = std::sqrt(norm);
  const double sign = c[n - 1] < 0.0 ? -1.0 : 1.0;
  for (double& v : c) v *= sign / norm;
  return c;
}

CGTable cg_full_table(const SpinPair& sp) {
  CGTable table{sp, {}};
  for (const CoupledLabel& col : coupled_labels(sp)) {
    const std::vector<double> c = cg_column(sp, col.j, col.m);
    const std::vector<ProductLabel> labels = plane_labels(sp, col.m);
    for (std::size_t k = 0; k < c.size(); ++k) {
      table.entries.push_back({col.j, col.m, labels[k].m1, labels[k].m2, c[k]});
    }
  }
  return table;
}

std::int64_t cg_entry_count(const SpinPair& sp) {
  const std::int64_t d1 = sp.d1();
  const std::int64_t d2 = sp.d2();
  const std::int64_t tj2 = sp.j2().twice();
  return d1 * d2 * d2 - tj2 * (tj2 + 2) * d2 / 3;
}

Eigen::MatrixXd cg_unitary(const SpinPair& sp) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(sp.dim(), sp.dim());
  for (const CoupledLabel& col : coupled_labels(sp)) {
    const auto cidx = static_cast<Eigen::Index>(coupled_index(sp, col));
    const std::vector<double> c = cg_column(sp, col.j, col.m);
    const std::vector<BasisIndex> rows = enumerate_m_plane(sp, col.m);
    for (std::size_t k = 0; k < c.size(); ++k) {
      u(static_cast<Eigen::Index>(rows[k]), cidx) = c[k];
    }
  }
  return u;
}

}  // namespace spinwalk
