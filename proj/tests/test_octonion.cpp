#include <gtest/gtest.h>

#include <cmath>

#include "octofc/errors.hpp"
#include "octofc/octonion.hpp"
#include "oracles.hpp"

using namespace octofc;

namespace {
Octonion e(int i) { return Octonion::unit(i); }
}  // namespace

TEST(Octonion, BasisProducts) {
  EXPECT_EQ(e(1) * e(2), e(3));
  EXPECT_EQ(e(2) * e(4), e(6));
  EXPECT_EQ(e(2) * e(1), -e(3));
  EXPECT_EQ(e(5) * e(5), Octonion(-1.0));
  std::mt19937_64 rng(11);
  Octonion x = random_octonion(rng);
  EXPECT_EQ(Octonion(1.0) * x, x);
  EXPECT_EQ(x * Octonion(1.0), x);
}

TEST(Octonion, MatchesStructureConstantOracle) {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    Octonion a = random_octonion(rng), b = random_octonion(rng);
    EXPECT_LE(distance(a * b, oracle::mul(a, b)), 1e-14);
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) EXPECT_EQ(e(i) * e(j), oracle::mul(e(i), e(j))) << i << "," << j;
}

TEST(Octonion, ConjNormInverse) {
  EXPECT_EQ((Octonion(1.0) + e(1)).conj(), Octonion(1.0) - e(1));
  EXPECT_DOUBLE_EQ((Octonion(3.0) + 4.0 * e(5)).norm(), 5.0);
  EXPECT_EQ(e(1).inv(), -e(1));
  EXPECT_THROW(Octonion().inv(), DomainError);
}

TEST(Octonion, Associator) {
  std::mt19937_64 rng(13);
  Octonion x = random_octonion(rng), y = random_octonion(rng), z = random_octonion(rng);
  EXPECT_LE(associator(Octonion(1.0), y, z).norm(), 1e-15);
  EXPECT_LE(associator(x, x, y).norm(), 1e-14);
  EXPECT_LE(distance(associator(e(1), e(2), e(4)), oracle::assoc(e(1), e(2), e(4))), 0.0);
  EXPECT_EQ(associator(e(1), e(2), e(4)), 2.0 * e(7));
  // alternating under transpositions
  EXPECT_LE((associator(x, y, z) + associator(y, x, z)).norm(), 1e-14);
  EXPECT_LE((associator(x, y, z) + associator(x, z, y)).norm(), 1e-14);
  EXPECT_LE((associator(x, y, z) + associator(z, y, x)).norm(), 1e-14);
}

TEST(Octonion, NormMultiplicative) {
  std::mt19937_64 rng(14);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    Octonion a = random_octonion(rng), b = random_octonion(rng);
    worst = std::max(worst, std::abs((a * b).norm() - a.norm() * b.norm()) / (a.norm() * b.norm()));
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Octonion, FiveTermOnBasis) {
  // [xy,z,w] - [x,yz,w] + [x,y,zw] - x[y,z,w] - [x,y,z]w, expanded with the oracle
  auto five = [](const Octonion& x, const Octonion& y, const Octonion& z, const Octonion& w) {
    using oracle::assoc;
    using oracle::mul;
    return assoc(mul(x, y), z, w) - assoc(x, mul(y, z), w) + assoc(x, y, mul(z, w)) -
           mul(x, assoc(y, z, w)) - mul(assoc(x, y, z), w);
  };
  EXPECT_LE(five(e(1), e(2), e(4), e(3)).norm(), 0.0);
  IdentityReport rep = identity_residuals(2000, 5);
  EXPECT_LE(rep.max_scaled, 1e-12);
  EXPECT_EQ(rep.table_defects, 0);
}

TEST(Octonion, RealSamplesExact) {
  Octonion a(2.0), b(-3.0), c(0.5);
  EXPECT_EQ(associator(a, b, c), Octonion());
}

TEST(Octonion, FanoTable) {
  const auto& t = FanoTable::instance();
  EXPECT_EQ(t.closure_defects(), 0);
  for (int i = 1; i < 8; ++i) {
    for (int j = 1; j < 8; ++j) {
      FanoEntry p = t.product(i, j);
      if (i == j) {
        EXPECT_EQ(p.index, 0);
        EXPECT_EQ(p.sign, -1);
      } else {
        EXPECT_NE(p.index, 0);
        EXPECT_EQ(std::abs(p.sign), 1);
        EXPECT_EQ(t.product(j, i).index, p.index);
        EXPECT_EQ(t.product(j, i).sign, -p.sign);
      }
    }
  }
}

TEST(SliceFrame, StandardForE4) {
  SliceFrame f = make_slice_frame(e(4));
  for (int i = 0; i < 8; ++i) EXPECT_EQ(f[i], e(i));
}

TEST(SliceFrame, InvariantsForOtherUnits) {
  std::mt19937_64 rng(15);
  std::vector<Octonion> Js{e(1), e(7), (e(2) + e(3)) / std::sqrt(2.0)};
  for (int k = 0; k < 20; ++k) Js.push_back(random_unit_imaginary(rng));
  for (const auto& J : Js) {
    SliceFrame f = make_slice_frame(J);
    EXPECT_LE(distance(f.J(), J), 1e-15);
    // orthonormal and multiplying like e_i e_j, checked with the oracle product
    for (int i = 0; i < 8; ++i) {
      for (int j = 0; j < 8; ++j) {
        EXPECT_NEAR(dot(f[i], f[j]), i == j ? 1.0 : 0.0, 1e-13);
        Octonion std_prod = oracle::mul(e(i), e(j));
        Octonion expect;
        for (int k = 0; k < 8; ++k) expect += std_prod[k] * f[k];
        EXPECT_LE(distance(oracle::mul(f[i], f[j]), expect), 1e-12);
      }
    }
    EXPECT_LE(frame_table_defect(f), 1e-12);
    SliceFrame again = make_slice_frame(J);
    for (int i = 0; i < 8; ++i) EXPECT_EQ(again[i], f[i]);
  }
  EXPECT_THROW(make_slice_frame(2.0 * e(1)), DomainError);
  EXPECT_THROW(make_slice_frame(Octonion(1.0)), DomainError);
}

TEST(SliceFrame, Coordinates) {
  std::mt19937_64 rng(16);
  SliceFrame f = make_slice_frame(random_unit_imaginary(rng));
  auto c4 = frame_coords(f[4], f);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(c4[i], i == 4 ? 1.0 : 0.0, 1e-14);
  auto c0 = frame_coords(Octonion(1.0), f);
  EXPECT_NEAR(c0[0], 1.0, 1e-15);
  Octonion x = random_octonion(rng);
  EXPECT_LE(distance(from_frame_coords(frame_coords(x, f), f), x), 1e-12);
}

TEST(Octonion, PowAndExp) {
  std::mt19937_64 rng(17);
  Octonion x = random_octonion(rng);
  EXPECT_LE(distance(pow(x, 3), oracle::mul(x, oracle::mul(x, x))), 1e-14);
  EXPECT_LE(distance(pow(x, -1), x.inv()), 1e-14);
  // exp(t e1) = cos t + sin t e1
  Octonion z = exp(0.7 * e(1));
  EXPECT_NEAR(z[0], std::cos(0.7), 1e-15);
  EXPECT_NEAR(z[1], std::sin(0.7), 1e-15);
}
