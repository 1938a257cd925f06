// SPDX-License-Identifier: MIT

#include "spinwalk/tomography.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <deque>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace spinwalk {

namespace {

using Mat = Eigen::MatrixXcd;

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPhasePresence = 1e-12;   // "occupied" cutoff for phase rules
constexpr double kInterferenceTol = 1e-6;  // minimum resolvable phase signal

int checked_qubits(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

/// Bit of basis index l belonging to qubit i (1-based, qubit 1 = MSB).
int qubit_bit(std::uint64_t l, int n, int qubit) {
  return static_cast<int>((l >> (n - qubit)) & 1u);
}

const Mat& single_qubit_rotation(char axis) {
  static const Mat ident = Mat::Identity(2, 2);
  static const Mat rot_for_x = [] {
    // exp(+iπ/4·Y): turns the X axis into the Z axis.
    Mat u(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    u << r, r, -r, r;
    return u;
  }();
  static const Mat rot_for_y = [] {
    // exp(−iπ/4·X): turns the Y axis into the Z axis.
    Mat u(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex mi{0.0, -1.0};
    u << Complex{r, 0.0}, mi * r, mi * r, Complex{r, 0.0};
    return u;
  }();
  switch (axis) {
    case 'X':
      return rot_for_x;
    case 'Y':
      return rot_for_y;
    case 'Z':
      return ident;
    default:
      throw std::invalid_argument(std::string("invalid axis character '") + axis + "'");
  }
}

/// kron(extra, acc): prepends a 2×2 factor on the left.
Mat kron_grow(const Mat& extra, const Mat& acc) {
  Mat next(acc.rows() * 2, acc.cols() * 2);
  next.topLeftCorner(acc.rows(), acc.cols()) = extra(0, 0) * acc;
  next.topRightCorner(acc.rows(), acc.cols()) = extra(0, 1) * acc;
  next.bottomLeftCorner(acc.rows(), acc.cols()) = extra(1, 0) * acc;
  next.bottomRightCorner(acc.rows(), acc.cols()) = extra(1, 1) * acc;
  return next;
}

Mat rotation_for_axes(const std::string& axes) {
  // Qubit 1 owns the left tensor factor, so fold from the last qubit inward.
  Mat u = Mat::Identity(1, 1);
  for (auto it = axes.rbegin(); it != axes.rend(); ++it)
    u = kron_grow(single_qubit_rotation(*it), u);
  return u;
}

ShotRecord record_from_probabilities(const std::string& axes, const Eigen::VectorXd& probs,
                                     std::int64_t shots, std::uint64_t seed, bool exact) {
  const int n = static_cast<int>(axes.size());
  ShotRecord rec;
  rec.axes = axes;
  rec.exact = exact;
  if (exact) {
    for (Eigen::Index l = 0; l < probs.size(); ++l)
      if (probs(l) > 0.0) rec.probabilities[bitstring(static_cast<std::uint64_t>(l), n)] = probs(l);
    return rec;
  }
  if (shots <= 0) throw std::invalid_argument("sampled records need shots > 0");
  // Inverse-CDF sampling with explicitly constructed uniforms, so the stream
  // is pinned by the seed alone.
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index l = 0; l < probs.size(); ++l) {
    acc += std::max(probs(l), 0.0);
    cdf[static_cast<std::size_t>(l)] = acc;
  }
  if (acc <= 0.0) throw std::invalid_argument("probabilities sum to zero");
  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::int64_t> hits;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cdf.begin(), probs.size() - 1));
    ++hits[idx];
  }
  rec.shots = shots;
  for (const auto& [l, c] : hits) rec.counts[bitstring(l, n)] = c;
  return rec;
}

/// One phase determination: child inherits its phase from parent through the
/// interference of the two settings that rotate exactly the differing qubits.
struct PhaseLink {
  std::uint64_t parent = 0;
  std::uint64_t child = 0;
  std::vector<int> flipped;  // differing qubits, ascending
  std::string axes1, axes2;  // (u,w) = (m,0) and (m−1,1) settings
};

struct PhasePlan {
  std::vector<std::uint64_t> occupied;  // ascending
  std::vector<PhaseLink> links;         // resolution order: parents first
};

PhaseLink make_link(std::uint64_t parent, std::uint64_t child, int n) {
  PhaseLink link;
  link.parent = parent;
  link.child = child;
  for (int q = 1; q <= n; ++q)
    if (qubit_bit(parent, n, q) != qubit_bit(child, n, q)) link.flipped.push_back(q);
  // Measuring-axis letters: a rotation exp(−iπ/4·X) is requested with 'Y'
  // (it reads out Y), and exp(+iπ/4·Y) with 'X'.
  link.axes1.assign(static_cast<std::size_t>(n), 'Z');
  for (const int q : link.flipped) link.axes1[static_cast<std::size_t>(q - 1)] = 'Y';
  link.axes2 = link.axes1;
  link.axes2[static_cast<std::size_t>(link.flipped.back() - 1)] = 'X';
  return link;
}

int hamming(std::uint64_t a, std::uint64_t b) {
  int d = 0;
  for (std::uint64_t x = a ^ b; x != 0; x &= x - 1) ++d;
  return d;
}

/// Occupancy, connected components, per-component trees, and inter-component
/// links, all derived from Z-basis probabilities alone.
PhasePlan build_phase_plan(const std::vector<double>& p, int n,
                           const std::vector<double>& thresholds) {
  PhasePlan plan;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t l = 0; l < dim; ++l)
    if (p[l] > thresholds[l]) plan.occupied.push_back(l);
  if (plan.occupied.empty())
    throw std::invalid_argument("no outcome exceeds the occupancy threshold");

  std::map<std::uint64_t, bool> occupied_set;
  for (const std::uint64_t l : plan.occupied) occupied_set[l] = true;

  // Simply-connected components in ascending order of their lowest vertex.
  std::map<std::uint64_t, int> component;
  std::vector<std::vector<std::uint64_t>> members;
  for (const std::uint64_t seed : plan.occupied) {
    if (component.count(seed)) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::deque<std::uint64_t> queue{seed};
    component[seed] = id;
    while (!queue.empty()) {
      const std::uint64_t v = queue.front();
      queue.pop_front();
      members[static_cast<std::size_t>(id)].push_back(v);
      for (int q = 1; q <= n; ++q) {
        const std::uint64_t w = v ^ (std::uint64_t{1} << (n - q));
        if (occupied_set.count(w) && !component.count(w)) {
          component[w] = id;
          queue.push_back(w);
        }
      }
    }
  }

  // Per-component tree rooted at `root`, edges in breadth-first discovery
  // order with neighbors explored by ascending qubit number.
  const auto grow_tree = [&](std::uint64_t root, const std::vector<std::uint64_t>& verts) {
    std::map<std::uint64_t, bool> seen;
    for (const std::uint64_t v : verts) seen[v] = false;
    seen[root] = true;
    std::deque<std::uint64_t> queue{root};
    while (!queue.empty()) {
      const std::uint64_t v = queue.front();
      queue.pop_front();
      for (int q = 1; q <= n; ++q) {
        const std::uint64_t w = v ^ (std::uint64_t{1} << (n - q));
        const auto it = seen.find(w);
        if (it != seen.end() && !it->second) {
          it->second = true;
          plan.links.push_back(make_link(v, w, n));
          queue.push_back(w);
        }
      }
    }
  };

  std::vector<std::uint64_t> phased;
  grow_tree(members[0][0], members[0]);
  phased.insert(phased.end(), members[0].begin(), members[0].end());
  for (std::size_t c = 1; c < members.size(); ++c) {
    // Nearest already-phased vertex, ties broken by lowest parent then child.
    std::uint64_t best_parent = 0;
    std::uint64_t best_child = 0;
    int best_d = n + 1;
    std::vector<std::uint64_t> verts = members[c];
    std::sort(verts.begin(), verts.end());
    std::vector<std::uint64_t> parents = phased;
    std::sort(parents.begin(), parents.end());
    for (const std::uint64_t v1 : parents) {
      for (const std::uint64_t v2 : verts) {
        const int d = hamming(v1, v2);
        if (d < best_d) {
          best_d = d;
          best_parent = v1;
          best_child = v2;
        }
      }
    }
    const PhaseLink link = make_link(best_parent, best_child, n);
    // The interference formula reads a single pair only if no other occupied
    // vertex sits inside the flipped-qubit Hamming sphere of the parent.
    std::uint64_t mask = 0;
    for (const int q : link.flipped) mask |= std::uint64_t{1} << (n - q);
    for (const std::uint64_t w : plan.occupied) {
      if (w == link.parent || w == link.child) continue;
      if (((w ^ link.parent) & ~mask) == 0)
        throw std::domain_error("phase link " + bitstring(link.parent, n) + " -> " +
                                bitstring(link.child, n) +
                                " is obstructed by occupied vertex " + bitstring(w, n));
    }
    plan.links.push_back(link);
    grow_tree(best_child, members[c]);
    phased.insert(phased.end(), members[c].begin(), members[c].end());
  }
  return plan;
}

std::vector<double> z_probabilities(const ShotRecord& z_record) {
  const int n = static_cast<int>(z_record.axes.size());
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<double> p(dim, 0.0);
  for (std::uint64_t l = 0; l < dim; ++l) p[l] = record_frequency(z_record, l);
  return p;
}

std::vector<double> occupancy_thresholds(const std::vector<double>& p, std::int64_t shots,
                                         std::optional<double> override_threshold) {
  std::vector<double> thr(p.size(), 0.0);
  for (std::size_t l = 0; l < p.size(); ++l) {
    if (override_threshold) {
      thr[l] = *override_threshold;
    } else if (shots > 0) {
      const double sigma = std::sqrt(std::max(p[l] * (1.0 - p[l]), 0.0) /
                                     static_cast<double>(shots));
      thr[l] = std::max(1e-9, 5.0 * sigma);
    } else {
      thr[l] = 1e-9;
    }
  }
  return thr;
}

const ShotRecord& find_record(const std::vector<ShotRecord>& records, const std::string& axes) {
  for (const ShotRecord& rec : records)
    if (rec.axes == axes) return rec;
  throw std::invalid_argument("missing measurement record for axes " + axes);
}

/// Clip tiny negative eigenvalues and renormalize: metrics only, per the
/// shot-noise handling rule; the caller's matrix is untouched.
Mat cleansed(const DensityMatrix& rho) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(rho.rho);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  const double total = vals.sum();
  if (total <= 0.0) throw std::domain_error("density matrix has no positive weight");
  vals /= total;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector apply_phase_rule(StateVector v) {
  for (Eigen::Index l = 0; l < v.size(); ++l) {
    if (std::abs(v(l)) > kPhasePresence) {
      v *= std::conj(v(l)) / std::abs(v(l));
      break;
    }
  }
  return v;
}

}  // namespace

DensityMatrix make_density(int n, Eigen::MatrixXcd rho, double tol) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("density matrix dimension does not match qubit count");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::domain_error("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > kTraceTol)
    throw std::domain_error("density matrix trace is not 1");
  const Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::domain_error("density matrix eigenvalue below -tolerance");
  return DensityMatrix{n, std::move(rho)};
}

DensityMatrix pure_density(const StateVector& psi) {
  const int n = checked_qubits(psi.size());
  return make_density(n, psi * psi.adjoint(), 1e-10);
}

Eigen::MatrixXcd pauli_basis(int n, std::uint64_t k) {
  static const std::array<Mat, 4> sigma = [] {
    std::array<Mat, 4> s;
    const Complex i{0.0, 1.0};
    s[0] = Mat::Identity(2, 2);
    s[1] = Mat::Zero(2, 2);
    s[1] << 0, 1, 1, 0;
    s[2] = Mat::Zero(2, 2);
    s[2] << 0, -i, i, 0;
    s[3] = Mat::Zero(2, 2);
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  if (n < 1 || k >= (std::uint64_t{1} << (2 * n)))
    throw std::invalid_argument("pauli label out of range for the qubit count");
  // Base-4 digits of k, qubit 1 most significant; fold from qubit n inward so
  // qubit 1's factor lands on the left.
  Mat out = Mat::Identity(1, 1);
  std::uint64_t rest = k;
  for (int q = n; q >= 1; --q) {
    out = kron_grow(sigma[rest % 4], out);
    rest /= 4;
  }
  return out;
}

Eigen::MatrixXcd density_from_coefficients(const PauliCoefficients& coeffs) {
  const Eigen::Index dim = Eigen::Index{1} << coeffs.n;
  Mat rho = Mat::Identity(dim, dim) / static_cast<double>(dim);
  for (std::uint64_t k = 1; k < coeffs.R.size(); ++k)
    if (coeffs.R[k] != 0.0) rho += coeffs.R[k] * pauli_basis(coeffs.n, k);
  return rho;
}

Eigen::MatrixXd g_matrix(int n) {
  if (n < 1) throw std::invalid_argument("g_matrix needs n >= 1");
  const Eigen::Index rows = (Eigen::Index{1} << n) - 1;
  Eigen::MatrixXd g(rows, rows);
  for (Eigen::Index q = 0; q < rows; ++q)
    for (Eigen::Index b = 1; b <= rows; ++b) {
      const auto overlap = static_cast<std::uint64_t>(q) & static_cast<std::uint64_t>(b);
      g(q, b - 1) = (std::popcount(overlap) % 2 == 0) ? 1.0 : -1.0;
    }
  return g;
}

std::string bitstring(std::uint64_t l, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 1; q <= n; ++q)
    if (qubit_bit(l, n, q)) s[static_cast<std::size_t>(q - 1)] = '1';
  return s;
}

double record_frequency(const ShotRecord& rec, std::uint64_t l) {
  const std::string key = bitstring(l, static_cast<int>(rec.axes.size()));
  if (rec.exact) {
    const auto it = rec.probabilities.find(key);
    return it == rec.probabilities.end() ? 0.0 : it->second;
  }
  const auto it = rec.counts.find(key);
  if (it == rec.counts.end() || rec.shots <= 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(rec.shots);
}

ShotRecord simulate_shots(const StateVector& psi, const std::string& axes, std::int64_t shots,
                          std::uint64_t seed, bool exact) {
  const int n = checked_qubits(psi.size());
  if (static_cast<int>(axes.size()) != n)
    throw std::invalid_argument("axes length does not match the qubit count");
  const StateVector rotated = rotation_for_axes(axes) * psi;
  const Eigen::VectorXd probs = rotated.cwiseAbs2();
  return record_from_probabilities(axes, probs, shots, seed, exact);
}

ShotRecord simulate_shots(const DensityMatrix& rho, const std::string& axes, std::int64_t shots,
                          std::uint64_t seed, bool exact) {
  if (static_cast<int>(axes.size()) != rho.n)
    throw std::invalid_argument("axes length does not match the qubit count");
  const Mat u = rotation_for_axes(axes);
  const Eigen::VectorXd probs = (u * rho.rho * u.adjoint()).diagonal().real();
  return record_from_probabilities(axes, probs, shots, seed, exact);
}

std::vector<std::string> all_axis_settings(int n) {
  std::vector<std::string> out;
  const std::uint64_t total = [](int m) {
    std::uint64_t t = 1;
    for (int i = 0; i < m; ++i) t *= 3;
    return t;
  }(n);
  const char letters[3] = {'X', 'Y', 'Z'};
  for (std::uint64_t id = 0; id < total; ++id) {
    std::string axes(static_cast<std::size_t>(n), 'X');
    std::uint64_t rem = id;
    for (int q = n; q >= 1; --q) {
      axes[static_cast<std::size_t>(q - 1)] = letters[rem % 3];
      rem /= 3;
    }
    out.push_back(std::move(axes));
  }
  return out;
}

std::uint64_t axis_setting_id(const std::string& axes) {
  std::uint64_t id = 0;
  for (const char a : axes) {
    const std::uint64_t digit = a == 'X' ? 0 : a == 'Y' ? 1 : a == 'Z' ? 2 : 3;
    if (digit == 3) throw std::invalid_argument(std::string("invalid axis character '") + a + "'");
    id = id * 3 + digit;
  }
  return id;
}

namespace {

template <typename State>
std::vector<ShotRecord> measure_all_axes_impl(const State& state, std::int64_t shots,
                                              std::uint64_t seed, bool exact, int n) {
  std::vector<ShotRecord> records;
  for (const std::string& axes : all_axis_settings(n))
    records.push_back(simulate_shots(state, axes, shots, seed ^ axis_setting_id(axes), exact));
  return records;
}

}  // namespace

std::vector<ShotRecord> measure_all_axes(const StateVector& psi, std::int64_t shots,
                                         std::uint64_t seed, bool exact) {
  return measure_all_axes_impl(psi, shots, seed, exact, checked_qubits(psi.size()));
}

std::vector<ShotRecord> measure_all_axes(const DensityMatrix& rho, std::int64_t shots,
                                         std::uint64_t seed, bool exact) {
  return measure_all_axes_impl(rho, shots, seed, exact, rho.n);
}

std::pair<PauliCoefficients, DensityMatrix> reconstruct_density(
    const std::vector<ShotRecord>& records, int n) {
  std::map<std::string, const ShotRecord*> by_axes;
  for (const ShotRecord& rec : records) by_axes[rec.axes] = &rec;

  std::string missing;
  bool all_exact = true;
  for (const std::string& axes : all_axis_settings(n)) {
    const auto it = by_axes.find(axes);
    if (it == by_axes.end()) {
      missing += missing.empty() ? axes : (", " + axes);
      continue;
    }
    all_exact = all_exact && it->second->exact;
    if (!it->second->exact) {
      std::int64_t total = 0;
      for (const auto& [key, c] : it->second->counts) total += c;
      if (total != it->second->shots)
        throw std::invalid_argument("record for axes " + axes +
                                    " has counts that do not sum to its shot total");
    }
  }
  if (!missing.empty())
    throw std::invalid_argument("missing measurement records for axes: " + missing);

  std::int64_t min_shots = 0;
  for (const ShotRecord& rec : records)
    if (!rec.exact && (min_shots == 0 || rec.shots < min_shots)) min_shots = rec.shots;

  const Eigen::Index rows = (Eigen::Index{1} << n) - 1;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(g_matrix(n));
  const double uniform = 1.0 / static_cast<double>(Eigen::Index{1} << n);

  PauliCoefficients coeffs{n, std::vector<double>(std::size_t{1} << (2 * n), 0.0)};
  std::vector<int> hits(coeffs.R.size(), 0);
  for (const std::string& axes : all_axis_settings(n)) {
    const ShotRecord& rec = *by_axes.at(axes);
    Eigen::VectorXd p(rows);
    for (Eigen::Index l = 0; l < rows; ++l)
      p(l) = record_frequency(rec, static_cast<std::uint64_t>(l));
    const Eigen::VectorXd r = lu.solve((p.array() - uniform).matrix());
    for (Eigen::Index b = 1; b <= rows; ++b) {
      // Base-4 Pauli label: digit a_i where bit b_i is set, else 0.
      std::uint64_t label = 0;
      for (int q = 1; q <= n; ++q) {
        const std::uint64_t digit =
            qubit_bit(static_cast<std::uint64_t>(b), n, q)
                ? axis_setting_id(axes.substr(static_cast<std::size_t>(q - 1), 1)) + 1
                : 0;
        label = label * 4 + digit;
      }
      coeffs.R[label] += r(b - 1);
      ++hits[label];
    }
  }
  for (std::size_t k = 1; k < coeffs.R.size(); ++k)
    if (hits[k] > 0) coeffs.R[k] /= static_cast<double>(hits[k]);

  // Statistical negativity shrinks like 1/sqrt(shots); keep a 0.05 floor.
  const double tol =
      all_exact ? 1e-10
                : std::max(0.05, 5.0 / std::sqrt(static_cast<double>(std::max<std::int64_t>(
                                     min_shots, 1))));
  DensityMatrix rho = make_density(n, density_from_coefficients(coeffs), tol);
  return {std::move(coeffs), std::move(rho)};
}

double purity(const DensityMatrix& rho) {
  const Mat r = cleansed(rho);
  return (r * r).trace().real();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto matrix_sqrt = [](const Mat& m) {
    const Eigen::SelfAdjointEigenSolver<Mat> es(m);
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Mat(es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint());
  };
  // tr sqrt(sqrt(sigma)*rho*sqrt(sigma)) equals the nuclear norm of
  // sqrt(rho)*sqrt(sigma); summing singular values keeps numerical noise at
  // machine scale instead of its square root.
  const Mat product = matrix_sqrt(cleansed(rho)) * matrix_sqrt(cleansed(sigma));
  return Eigen::JacobiSVD<Mat>(product).singularValues().sum();
}

std::vector<std::string> pure_settings(const ShotRecord& z_record,
                                       std::optional<double> occupancy_threshold) {
  const int n = static_cast<int>(z_record.axes.size());
  if (z_record.axes != std::string(static_cast<std::size_t>(n), 'Z'))
    throw std::invalid_argument("pure_settings needs the all-Z record");
  const std::vector<double> p = z_probabilities(z_record);
  const PhasePlan plan =
      build_phase_plan(p, n, occupancy_thresholds(p, z_record.shots, occupancy_threshold));
  std::vector<std::string> settings{z_record.axes};
  for (const PhaseLink& link : plan.links) {
    for (const std::string& axes : {link.axes1, link.axes2})
      if (std::find(settings.begin(), settings.end(), axes) == settings.end())
        settings.push_back(axes);
  }
  return settings;
}

StateVector reconstruct_pure(const std::vector<ShotRecord>& records, int n,
                             std::optional<double> occupancy_threshold) {
  const ShotRecord& z_record = find_record(records, std::string(static_cast<std::size_t>(n), 'Z'));
  const std::vector<double> p = z_probabilities(z_record);
  const PhasePlan plan =
      build_phase_plan(p, n, occupancy_thresholds(p, z_record.shots, occupancy_threshold));

  std::map<std::uint64_t, double> amp;
  std::map<std::uint64_t, double> theta;
  for (const std::uint64_t l : plan.occupied) amp[l] = std::sqrt(p[l]);
  theta[plan.occupied.front()] = 0.0;

  for (const PhaseLink& link : plan.links) {
    const double rl = amp.at(link.parent);
    const double rk = amp.at(link.child);
    const auto m = static_cast<int>(link.flipped.size());
    const double scale = std::pow(2.0, m);
    const double p1 = record_frequency(find_record(records, link.axes1), link.parent);
    const double p2 = record_frequency(find_record(records, link.axes2), link.parent);
    const double x1 = (scale * p1 - rl * rl - rk * rk) / (2.0 * rl * rk);
    const double x2 = (scale * p2 - rl * rl - rk * rk) / (2.0 * rl * rk);
    // Interference factors: circuit 1 contributes (−i)^m, circuit 2 swaps the
    // last rotation for exp(+iπ/4·Y) and picks up (−1)^{parent bit there}.
    // Only their arguments enter the fit, so work with angles directly.
    const double half_pi = std::acos(0.0);
    const double a1 = -m * half_pi;
    const double a2 = -(m - 1) * half_pi +
                      (qubit_bit(link.parent, n, link.flipped.back()) ? 2.0 * half_pi : 0.0);
    // x_i = cos(Δ − a_i) with Δ = θ_parent − θ_child: solve for (cosΔ, sinΔ).
    const double det = std::sin(a2 - a1);
    const double cos_d = (std::sin(a2) * x1 - std::sin(a1) * x2) / det;
    const double sin_d = (std::cos(a1) * x2 - std::cos(a2) * x1) / det;
    if (std::hypot(cos_d, sin_d) < kInterferenceTol)
      throw std::domain_error("interference between " + bitstring(link.parent, n) + " and " +
                              bitstring(link.child, n) + " is too weak to fix the phase");
    theta[link.child] = theta.at(link.parent) - std::atan2(sin_d, cos_d);
  }

  StateVector psi = StateVector::Zero(Eigen::Index{1} << n);
  for (const std::uint64_t l : plan.occupied)
    psi(static_cast<Eigen::Index>(l)) = std::polar(amp.at(l), theta.at(l));
  return apply_phase_rule(std::move(psi));
}

PureTomography run_pure_tomography(const StateVector& psi, std::int64_t shots,
                                   std::uint64_t seed, bool exact,
                                   std::optional<double> occupancy_threshold) {
  const int n = checked_qubits(psi.size());
  const std::string all_z(static_cast<std::size_t>(n), 'Z');
  PureTomography out;
  out.records.push_back(
      simulate_shots(psi, all_z, shots, seed ^ axis_setting_id(all_z), exact));
  for (const std::string& axes : pure_settings(out.records.front(), occupancy_threshold)) {
    if (axes == all_z) continue;
    out.records.push_back(
        simulate_shots(psi, axes, shots, seed ^ axis_setting_id(axes), exact));
  }
  out.state = reconstruct_pure(out.records, n, occupancy_threshold);
  return out;
}

StateVector dominant_pure(const DensityMatrix& rho) {
  const Eigen::SelfAdjointEigenSolver<Mat> es(rho.rho);
  const Eigen::Index top = es.eigenvalues().size() - 1;
  if (top >= 1 && es.eigenvalues()(top) - es.eigenvalues()(top - 1) < 1e-10)
    throw std::domain_error("dominant eigenvalue is degenerate");
  return apply_phase_rule(es.eigenvectors().col(top));
}

int qubit_count(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return n;
}

StateVector embed_qubits(const StateVector& psi) {
  const int n = qubit_count(psi.size());
  StateVector out = StateVector::Zero(Eigen::Index{1} << n);
  out.head(psi.size()) = psi;
  return out;
}

}  // namespace spinwalk
