// SPDX-License-Identifier: MIT
#include "doctest.h"
#include "spinwalk/basis.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace spinwalk;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

// Independent statement of the ranking rule: enumerate every product label,
// sort by descending m = m1+m2 and then descending m2, and use the position
// in that list as the expected index. No rank-function arithmetic involved.
std::vector<ProductLabel> brute_force_order(const SpinPair& sp) {
  std::vector<ProductLabel> labels;
  for (std::int64_t t1 = sp.j1().twice(); t1 >= -sp.j1().twice(); t1 -= 2) {
    for (std::int64_t t2 = sp.j2().twice(); t2 >= -sp.j2().twice(); t2 -= 2) {
      labels.push_back({h(t1), h(t2)});
    }
  }
  std::stable_sort(labels.begin(), labels.end(), [](const ProductLabel& a, const ProductLabel& b) {
    const auto ma = a.m1 + a.m2, mb = b.m1 + b.m2;
    if (ma != mb) return ma > mb;
    return a.m2 > b.m2;
  });
  return labels;
}

}  // namespace

TEST_CASE("pyramid dimensions for the small worked pairs") {
  const PyramidDims a = pyramid_dims(SpinPair(h(1), h(1)));
  CHECK(a.dim == 4);
  CHECK(a.jmax == HalfInt(1));
  CHECK(a.jmin == HalfInt(0));

  const PyramidDims b = pyramid_dims(SpinPair(h(2), h(1)));
  CHECK(b.dim == 6);
  CHECK(b.jmax == h(3));
  CHECK(b.jmin == h(1));

  const PyramidDims c = pyramid_dims(SpinPair(h(3), h(2)));
  CHECK(c.dim == 12);
  CHECK(c.jmax == h(5));
  CHECK(c.jmin == h(1));
}

TEST_CASE("spin pairs reject j1 < j2 and negative spins") {
  CHECK_THROWS_AS(SpinPair(h(2), h(3)), std::invalid_argument);
  CHECK_THROWS_AS(SpinPair(h(1), h(-1)), std::invalid_argument);
  CHECK_NOTHROW(SpinPair(h(3), h(3)));
  CHECK_NOTHROW(SpinPair(h(4), h(0)));
}

TEST_CASE("spin-half pair encodes to the documented four indices") {
  const SpinPair sp(h(1), h(1));
  CHECK(encode(sp, {h(1), h(1)}) == 0);
  CHECK(encode(sp, {h(-1), h(1)}) == 1);
  CHECK(encode(sp, {h(1), h(-1)}) == 2);
  CHECK(encode(sp, {h(-1), h(-1)}) == 3);
  CHECK(decode(sp, 3) == ProductLabel{h(-1), h(-1)});
}

TEST_CASE("spin-1 x spin-1/2 encoding matches the documented order") {
  const SpinPair sp(h(2), h(1));
  CHECK(encode(sp, {h(2), h(1)}) == 0);
  CHECK(encode(sp, {h(0), h(1)}) == 1);
  CHECK(encode(sp, {h(2), h(-1)}) == 2);
  CHECK(encode(sp, {h(-2), h(1)}) == 3);
  CHECK(encode(sp, {h(0), h(-1)}) == 4);
  CHECK(encode(sp, {h(-2), h(-1)}) == 5);
  CHECK(decode(sp, 4) == ProductLabel{h(0), h(-1)});
}

TEST_CASE("encode rejects labels outside the pyramid") {
  const SpinPair sp(h(2), h(1));
  CHECK_THROWS_AS(encode(sp, {h(4), h(1)}), std::domain_error);   // m1 > j1
  CHECK_THROWS_AS(encode(sp, {h(1), h(1)}), std::domain_error);   // m1 parity
  CHECK_THROWS_AS(encode(sp, {h(2), h(0)}), std::domain_error);   // m2 parity
  CHECK_THROWS_AS(decode(sp, -1), std::domain_error);
  CHECK_THROWS_AS(decode(sp, 6), std::domain_error);
}

TEST_CASE("ranking matches the sort-based oracle for (5/2,2)") {
  const SpinPair sp(h(5), h(4));
  REQUIRE(sp.dim() == 30);
  const auto order = brute_force_order(sp);
  for (std::int64_t l = 0; l < sp.dim(); ++l) {
    CHECK(encode(sp, order[static_cast<std::size_t>(l)]) == l);
    CHECK(decode(sp, l) == order[static_cast<std::size_t>(l)]);
  }
}

TEST_CASE("encode/decode is a bijection for all pairs up to j1 = 10") {
  for (std::int64_t t1 = 0; t1 <= 20; ++t1) {
    for (std::int64_t t2 = t1 % 2; t2 <= t1; t2 += 2) {
      const SpinPair sp(h(t1), h(t2));
      std::vector<bool> seen(static_cast<std::size_t>(sp.dim()), false);
      for (std::int64_t tm1 = -t1; tm1 <= t1; tm1 += 2) {
        for (std::int64_t tm2 = -t2; tm2 <= t2; tm2 += 2) {
          const ProductLabel p{h(tm1), h(tm2)};
          const BasisIndex l = encode(sp, p);
          REQUIRE(l >= 0);
          REQUIRE(l < sp.dim());
          REQUIRE_FALSE(seen[static_cast<std::size_t>(l)]);
          seen[static_cast<std::size_t>(l)] = true;
          REQUIRE(decode(sp, l) == p);
        }
      }
    }
  }
}

TEST_CASE("rank function is nondecreasing and exhausts the dimension") {
  for (std::int64_t t1 = 0; t1 <= 14; t1 += 1) {
    for (std::int64_t t2 = t1 % 2; t2 <= t1; t2 += 2) {
      const SpinPair sp(h(t1), h(t2));
      std::int64_t prev = 0;
      std::int64_t running = 0;
      CHECK(sp.rank_before_line(0) == 0);
      for (std::int64_t d = 0; d < sp.num_planes(); ++d) {
        const std::int64_t r = sp.rank_before_line(d);
        CHECK(r >= prev);
        CHECK(r == running);  // cumulative plane counts are the oracle
        running += sp.plane_count(sp.m_of_line(d));
        prev = r;
      }
      CHECK(sp.rank_before_line(sp.num_planes()) == sp.dim());
    }
  }
}

TEST_CASE("plane enumeration is contiguous, ordered by descending m2") {
  const SpinPair half(h(1), h(1));
  CHECK(enumerate_m_plane(half, HalfInt(0)) == std::vector<BasisIndex>{1, 2});

  const SpinPair sp(h(2), h(1));
  CHECK(enumerate_m_plane(sp, h(3)) == std::vector<BasisIndex>{0});

  const SpinPair w(h(3), h(2));
  const auto plane = enumerate_m_plane(w, h(1));
  CHECK(plane.size() == 3);
  CHECK(plane.size() == static_cast<std::size_t>(w.plane_count(h(1))));

  // Labels decode back in descending-m2 order with the right projection.
  const auto labels = plane_labels(w, h(1));
  REQUIRE(labels.size() == plane.size());
  for (std::size_t i = 0; i < plane.size(); ++i) {
    CHECK(decode(w, plane[i]) == labels[i]);
    CHECK(labels[i].m1 + labels[i].m2 == h(1));
    if (i > 0) CHECK(labels[i].m2 < labels[i - 1].m2);
  }
  CHECK_THROWS_AS(enumerate_m_plane(w, h(7)), std::domain_error);
}

TEST_CASE("per-plane counts match the closed form") {
  for (std::int64_t t1 = 0; t1 <= 10; ++t1) {
    for (std::int64_t t2 = t1 % 2; t2 <= t1; t2 += 2) {
      const SpinPair sp(h(t1), h(t2));
      std::int64_t total = 0;
      for (std::int64_t d = 0; d < sp.num_planes(); ++d) {
        const HalfInt m = sp.m_of_line(d);
        const auto plane = enumerate_m_plane(sp, m);
        CHECK(static_cast<std::int64_t>(plane.size()) == sp.plane_count(m));
        total += sp.plane_count(m);
      }
      CHECK(total == sp.dim());
    }
  }
}

TEST_CASE("coupled labels enumerate the pyramid in plane-major order") {
  const SpinPair sp(h(2), h(1));
  const auto labels = coupled_labels(sp);
  REQUIRE(labels.size() == 6);
  CHECK(labels[0] == CoupledLabel{h(3), h(3)});
  CHECK(labels[1] == CoupledLabel{h(3), h(1)});
  CHECK(labels[2] == CoupledLabel{h(1), h(1)});
  CHECK(labels[3] == CoupledLabel{h(3), h(-1)});
  CHECK(labels[4] == CoupledLabel{h(1), h(-1)});
  CHECK(labels[5] == CoupledLabel{h(3), h(-3)});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    CHECK(coupled_index(sp, labels[i]) == static_cast<std::int64_t>(i));
  }
  CHECK_THROWS_AS(coupled_index(sp, CoupledLabel{h(4), h(0)}), std::domain_error);  // parity
  CHECK_THROWS_AS(coupled_index(sp, CoupledLabel{h(7), h(1)}), std::domain_error);  // j > jmax
}

TEST_CASE("coupled label count equals the dimension for many pairs") {
  for (std::int64_t t1 = 0; t1 <= 12; ++t1) {
    for (std::int64_t t2 = t1 % 2; t2 <= t1; t2 += 2) {
      const SpinPair sp(h(t1), h(t2));
      CHECK(static_cast<std::int64_t>(coupled_labels(sp).size()) == sp.dim());
    }
  }
}
