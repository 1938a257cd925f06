// SPDX-License-Identifier: MIT

#include "spinwalk/operators.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinwalk {

namespace {

constexpr Complex kI{0.0, 1.0};

// Single-spin component matrices in descending-m order (row r holds m = j-r).
Eigen::MatrixXcd spin_z(HalfInt j) {
  const auto n = static_cast<Eigen::Index>(j.twice() + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    out(r, r) = HalfInt::from_twice(j.twice() - 2 * r).value();
  }
  return out;
}

Eigen::MatrixXcd spin_plus(HalfInt j) {
  const auto n = static_cast<Eigen::Index>(j.twice() + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 1; r < n; ++r) {
    const HalfInt m = HalfInt::from_twice(j.twice() - 2 * r);
    out(r - 1, r) = j_ladder(j, m, +1);
  }
  return out;
}

// Lift a single-spin matrix to the encoded product basis (identity on the
// other spin). `first` selects which factor the matrix acts on.
Eigen::MatrixXcd lift(const SpinPair& sp, const Eigen::MatrixXcd& a, bool first) {
  const auto d1 = static_cast<Eigen::Index>(sp.d1());
  const auto d2 = static_cast<Eigen::Index>(sp.d2());
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(d1 * d2));
  for (Eigen::Index r1 = 0; r1 < d1; ++r1) {
    const HalfInt m1 = HalfInt::from_twice(sp.j1().twice() - 2 * r1);
    for (Eigen::Index r2 = 0; r2 < d2; ++r2) {
      const HalfInt m2 = HalfInt::from_twice(sp.j2().twice() - 2 * r2);
      perm[static_cast<std::size_t>(r1 * d2 + r2)] =
          static_cast<Eigen::Index>(encode(sp, {m1, m2}));
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d1 * d2, d1 * d2);
  if (first) {
    for (Eigen::Index r = 0; r < d1; ++r) {
      for (Eigen::Index c = 0; c < d1; ++c) {
        if (a(r, c) == Complex{0.0, 0.0}) continue;
        for (Eigen::Index k = 0; k < d2; ++k) {
          out(perm[static_cast<std::size_t>(r * d2 + k)],
              perm[static_cast<std::size_t>(c * d2 + k)]) = a(r, c);
        }
      }
    }
  } else {
    for (Eigen::Index r = 0; r < d2; ++r) {
      for (Eigen::Index c = 0; c < d2; ++c) {
        if (a(r, c) == Complex{0.0, 0.0}) continue;
        for (Eigen::Index k = 0; k < d1; ++k) {
          out(perm[static_cast<std::size_t>(k * d2 + r)],
              perm[static_cast<std::size_t>(k * d2 + c)]) = a(r, c);
        }
      }
    }
  }
  return out;
}

// Product of two generator matrices. Every factor here has O(1) nonzero
// entries per row, so an explicit sparse traversal beats dense GEMM by
// orders of magnitude at large spins while producing the same dense result.
Eigen::MatrixXcd sparse_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index n = a.rows();
  std::vector<std::vector<std::pair<Eigen::Index, Complex>>> rows_b(
      static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (b(r, c) != Complex{0.0, 0.0}) rows_b[static_cast<std::size_t>(r)].emplace_back(c, b(r, c));
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex va = a(r, k);
      if (va == Complex{0.0, 0.0}) continue;
      for (const auto& [c, vb] : rows_b[static_cast<std::size_t>(k)]) {
        out(r, c) += va * vb;
      }
    }
  }
  return out;
}

std::shared_ptr<const GeneratorSet> make_generators(const SpinPair& sp) {
  auto g = std::make_shared<GeneratorSet>(GeneratorSet{sp});
  const Eigen::MatrixXcd s1p = spin_plus(sp.j1());
  const Eigen::MatrixXcd s2p = spin_plus(sp.j2());
  g->j1z = lift(sp, spin_z(sp.j1()), true);
  g->j1p = lift(sp, s1p, true);
  g->j1m = lift(sp, s1p.adjoint(), true);
  g->j2z = lift(sp, spin_z(sp.j2()), false);
  g->j2p = lift(sp, s2p, false);
  g->j2m = lift(sp, s2p.adjoint(), false);
  g->jz = g->j1z + g->j2z;
  g->jp = g->j1p + g->j2p;
  g->jm = g->j1m + g->j2m;
  g->lambda = sparse_product(g->j1z, g->j2z) +
              0.5 * (sparse_product(g->j1p, g->j2m) + sparse_product(g->j1m, g->j2p));
  g->az = 0.5 * kI * (sparse_product(g->j1p, g->j2m) - sparse_product(g->j1m, g->j2p));
  g->ap = kI * (sparse_product(g->j1z, g->j2p) - sparse_product(g->j1p, g->j2z));
  g->am = g->ap.adjoint();
  g->az_jp = sparse_product(g->az, g->jp);
  g->jp_az = sparse_product(g->jp, g->az);
  g->lam_ap = sparse_product(g->lambda, g->ap);
  g->ap_lam = sparse_product(g->ap, g->lambda);
  return g;
}

// Zero every row and column outside the window planes {m, m-1} in place.
void project_window(const SpinPair& sp, HalfInt m, Eigen::MatrixXcd& h) {
  std::vector<bool> keep(static_cast<std::size_t>(sp.dim()), false);
  for (const BasisIndex k : enumerate_m_plane(sp, m)) keep[static_cast<std::size_t>(k)] = true;
  for (const BasisIndex k : enumerate_m_plane(sp, m - HalfInt(1))) {
    keep[static_cast<std::size_t>(k)] = true;
  }
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    if (keep[static_cast<std::size_t>(k)]) continue;
    h.row(k).setZero();
    h.col(k).setZero();
  }
}

void require_window(const char* who, const SpinPair& sp, HalfInt m) {
  if (m > sp.jmax() || (m - HalfInt(1)).abs() > sp.jmax() ||
      (m.twice() - sp.jmax().twice()) % 2 != 0) {
    throw std::domain_error(std::string(who) + ": window (" + m.str() + ", " +
                            (m - HalfInt(1)).str() + ") not inside the pyramid of (" +
                            sp.j1().str() + "," + sp.j2().str() + ")");
  }
}

}  // namespace

std::shared_ptr<const GeneratorSet> generators(const SpinPair& sp) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const GeneratorSet>>
      cache;
  const std::pair<std::int64_t, std::int64_t> key{sp.j1().twice(), sp.j2().twice()};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = make_generators(sp);
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() >= 4) cache.clear();  // bounded; callers hold shared_ptrs
  cache.emplace(key, made);
  return made;
}

SparseHermitian build_projector(const SpinPair& sp, HalfInt m) {
  if (m.abs() > sp.jmax() || (m.twice() - sp.jmax().twice()) % 2 != 0) {
    throw std::domain_error("build_projector: plane m=" + m.str() +
                            " not inside the pyramid of (" + sp.j1().str() + "," +
                            sp.j2().str() + ")");
  }
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
  for (const BasisIndex k : enumerate_m_plane(sp, m)) p(k, k) = 1.0;
  return SparseHermitian::from_dense(p);
}

SparseHermitian build_projector_pair(const SpinPair& sp, HalfInt m) {
  require_window("build_projector_pair", sp, m);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(sp.dim(), sp.dim());
  for (const BasisIndex k : enumerate_m_plane(sp, m)) p(k, k) = 1.0;
  for (const BasisIndex k : enumerate_m_plane(sp, m - HalfInt(1))) p(k, k) = 1.0;
  return SparseHermitian::from_dense(p);
}

SparseHermitian build_M(const SpinPair& sp, HalfInt m) {
  require_window("build_M", sp, m);
  const auto g = generators(sp);
  Eigen::MatrixXcd h = g->jp + g->jm;
  project_window(sp, m, h);
  return SparseHermitian::from_dense(h);
}

SparseHermitian build_block_AzJp(const SpinPair& sp, std::optional<HalfInt> m) {
  const auto g = generators(sp);
  Eigen::MatrixXcd h = g->az_jp;
  h += h.adjoint().eval();
  if (m) {
    require_window("build_block_AzJp", sp, *m);
    project_window(sp, *m, h);
  }
  return SparseHermitian::from_dense(h);
}

SparseHermitian build_block_Ap(const SpinPair& sp) {
  const auto g = generators(sp);
  return SparseHermitian::from_dense(g->ap + g->am);
}

SparseHermitian build_block_LambdaAp(const SpinPair& sp) {
  const auto g = generators(sp);
  Eigen::MatrixXcd h = g->lam_ap + g->ap_lam;
  h += h.adjoint().eval();
  return SparseHermitian::from_dense(h);
}

std::pair<double, double> pinch_params(const SpinPair& sp, HalfInt j, HalfInt m, bool left) {
  const double jv = j.value();
  const double mv = m.value();
  const double script =
      sp.j1().value() * (sp.j1().value() + 1.0) + sp.j2().value() * (sp.j2().value() + 1.0) - 1.0;
  // The A_+ coefficient comes from commuting J_+A_z = A_zJ_+ - A_+, so the
  // displayed forms map to p = ∓(j² ± 2jm + 𝒮) and p + q = 2j.
  const double p = left ? (jv * jv + 2.0 * jv * mv + script)
                        : -(jv * jv - 2.0 * jv * mv + script);
  return {p, 2.0 * jv - p};
}

namespace {

SparseHermitian build_pinched(const SpinPair& sp, HalfInt j, HalfInt m, bool left) {
  const char* who = left ? "build_L" : "build_R";
  const CoupledLabel depart = left ? CoupledLabel{j, m} : CoupledLabel{j, m - HalfInt(1)};
  const CoupledLabel arrive =
      left ? CoupledLabel{j - HalfInt(1), m - HalfInt(1)} : CoupledLabel{j - HalfInt(1), m};
  if (j <= sp.jmin() || !sp.contains(depart) || !sp.contains(arrive)) {
    throw std::domain_error(std::string(who) + ": move |" + depart.j.str() + "," +
                            depart.m.str() + "⟩ → |" + arrive.j.str() + "," + arrive.m.str() +
                            "⟩ is not inside the pyramid of (" + sp.j1().str() + "," +
                            sp.j2().str() + ")");
  }
  require_window(who, sp, m);
  const auto [p, q] = pinch_params(sp, j, m, left);
  const double uv = left ? -1.0 : 1.0;
  const auto g = generators(sp);
  Eigen::MatrixXcd h = p * g->jp_az + q * g->az_jp + uv * (g->lam_ap + g->ap_lam);
  h += h.adjoint().eval();
  project_window(sp, m, h);
  return SparseHermitian::from_dense(h);
}

}  // namespace

SparseHermitian build_L(const SpinPair& sp, HalfInt j, HalfInt m) {
  return build_pinched(sp, j, m, true);
}

SparseHermitian build_R(const SpinPair& sp, HalfInt j, HalfInt m) {
  return build_pinched(sp, j, m, false);
}

SparseHermitian build_general_H(const SpinPair& sp, Complex p, Complex q, Complex u, Complex v) {
  const auto g = generators(sp);
  Eigen::MatrixXcd h = p * g->jp_az + q * g->az_jp + u * g->lam_ap + v * g->ap_lam;
  h += h.adjoint().eval();
  return SparseHermitian::from_dense(h);
}

}  // namespace spinwalk
