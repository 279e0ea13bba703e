#include <gtest/gtest.h>

#include "octofc/errors.hpp"
#include "octofc/paralin.hpp"
#include "oracles.hpp"

using namespace octofc;

namespace {
Octonion e(int i) { return Octonion::unit(i); }

OctMatrix diag_op() { return OctMatrix::diagonal({e(1), 2.0 * e(2), 3.0 * e(4)}); }
OctMatrix rotation_op() {
  OctMatrix T(2);
  T(0, 1) = -e(1);
  T(1, 0) = e(1);
  return T;
}
}  // namespace

TEST(Apply, Examples) {
  std::mt19937_64 rng(31);
  OctVector x = random_oct_vector(3, rng);
  EXPECT_LE(distance(OctMatrix::identity(3).apply(x), x), 0.0);
  OctVector y = OctMatrix::left_mult(e(1)).apply(OctVector(std::vector<Octonion>{e(2)}));
  EXPECT_EQ(y[0], e(3));
  OctVector z = rotation_op().apply(OctVector::delta(2, 0));
  EXPECT_EQ(z[0], Octonion());
  EXPECT_EQ(z[1], e(1));
}

TEST(Realize, Examples) {
  EXPECT_TRUE(realize(OctMatrix::identity(2)).m.isIdentity());
  EXPECT_TRUE(r_mult(Octonion(1.0), 3).m.isIdentity());
  std::mt19937_64 rng(32);
  OctMatrix A = random_oct_matrix(3, rng);
  OctVector x = random_oct_vector(3, rng);
  EXPECT_LE(distance(realize(A).apply(x), A.apply(x)), 1e-13);
  Octonion s = random_octonion(rng);
  EXPECT_LE(distance(r_mult(s, 3).apply(x), mul_right(x, s)), 1e-14);
}

TEST(SecondAssoc, Examples) {
  std::mt19937_64 rng(33);
  RealOpMatrix M = realize(random_oct_matrix(2, rng));
  OctVector x = random_oct_vector(2, rng);
  EXPECT_LE(second_assoc(M, Octonion(2.0), x).norm(), 1e-14);
  EXPECT_LE(second_assoc(M, random_octonion(rng), RealVector{{0.4, -1.0}}.embed()).norm(), 1e-14);
  OctVector b = second_assoc(realize(OctMatrix::left_mult(e(1))), e(4), OctVector(std::vector<Octonion>{e(2)}));
  EXPECT_LE(distance(b[0], oracle::assoc(e(1), e(2), e(4))), 0.0);
  EXPECT_EQ(b[0], 2.0 * e(7));
}

TEST(ParaLinear, Classification) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(is_para_linear(realize(random_oct_matrix(3, rng))));
  EXPECT_FALSE(is_para_linear(r_mult(e(1), 1)));
  EXPECT_TRUE(is_para_linear(RealOpMatrix{Eigen::MatrixXd::Zero(16, 16)}));
  // Re B_{e2}(R_{e1}, e4) by hand: (e4 e1) e2 - (e4 e2) e1
  Octonion lhs = oracle::mul(oracle::mul(e(4), e(1)), e(2)) - oracle::mul(oracle::mul(e(4), e(2)), e(1));
  EXPECT_NE(lhs.norm(), 0.0);
}

TEST(ScalarMul, Examples) {
  std::mt19937_64 rng(35);
  Octonion q = random_octonion(rng), p = random_octonion(rng);
  EXPECT_LE(frobenius_distance(scalar_mul(OctMatrix::left_mult(q), p, Side::Right), OctMatrix::left_mult(oracle::mul(q, p))),
            1e-14);
  OctMatrix A = random_oct_matrix(3, rng);
  EXPECT_LE(frobenius_distance(scalar_mul(A, Octonion(1.0), Side::Left), A), 0.0);
  EXPECT_LE(frobenius_distance(scalar_mul(A, Octonion(1.0), Side::Right), A), 0.0);
  // (p.A)(v) = p A(v) and (A.p)(v) = A(v) p on real v
  for (std::size_t j = 0; j < 3; ++j) {
    OctVector v = OctVector::delta(3, j);
    EXPECT_LE(distance(scalar_mul(A, e(1), Side::Left).apply(v), mul_left(e(1), A.apply(v))), 1e-12);
    EXPECT_LE(distance(scalar_mul(A, p, Side::Right).apply(v), mul_right(A.apply(v), p)), 1e-12);
  }
  // A.p agrees with the defining action x -> A(x) p + B_p(A, x) projected to real parts: check on C_J(V)
  Octonion J = e(5);
  Octonion z = Octonion(0.3) + 0.8 * J, w = Octonion(-1.0) + 0.25 * J;
  OctVector x = mul_right(RealVector{{1.0, -0.5, 2.0}}.embed(), z);
  EXPECT_LE(distance(scalar_mul(A, w, Side::Right).apply(x), mul_right(A.apply(x), w)), 1e-12);
}

TEST(RegCompose, Examples) {
  std::mt19937_64 rng(36);
  OctMatrix B = random_oct_matrix(3, rng);
  EXPECT_LE(frobenius_distance(reg_compose(OctMatrix::identity(3), B), B), 0.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(3, 3), b = Eigen::MatrixXd::Random(3, 3);
  EXPECT_LE(frobenius_distance(reg_compose(OctMatrix::from_real(a), OctMatrix::from_real(b)), OctMatrix::from_real(a * b)),
            1e-14);
  EXPECT_LE(frobenius_distance(reg_compose(OctMatrix::left_mult(e(1)), OctMatrix::left_mult(e(2))),
                               OctMatrix::left_mult(e(3))),
            0.0);
  // lif/ext definition: ext(realize(A) realize(B) restricted to Re V)
  OctMatrix A = random_oct_matrix(3, rng);
  RealOpMatrix AB{realize(A).m * realize(B).m};
  OctMatrix via_ext(3);
  for (std::size_t j = 0; j < 3; ++j) {
    OctVector col = AB.apply(OctVector::delta(3, j));
    for (std::size_t i = 0; i < 3; ++i) via_ext(i, j) = col[i];
  }
  EXPECT_LE(frobenius_distance(reg_compose(A, B), via_ext), 1e-13);
  EXPECT_LE(frobenius_distance(reg_compose(A, B), oracle::matmul(A, B)), 1e-13);
}

TEST(RegCompose, RealFactorAssociativeAndTensor) {
  std::mt19937_64 rng(37);
  OctMatrix A = random_oct_matrix(2, rng), C = random_oct_matrix(2, rng);
  OctMatrix R = OctMatrix::from_real(Eigen::MatrixXd::Random(2, 2));
  EXPECT_LE(frobenius_distance(reg_compose(reg_compose(A, R), C), reg_compose(A, reg_compose(R, C))), 1e-13);
  OctMatrix S = OctMatrix::from_real(Eigen::MatrixXd::Random(2, 2));
  Octonion p = random_octonion(rng), q = random_octonion(rng);
  OctMatrix lhs = reg_compose(scalar_mul(R, p, Side::Left), scalar_mul(S, q, Side::Left));
  OctMatrix rhs = scalar_mul(reg_compose(R, S), oracle::mul(p, q), Side::Left);
  EXPECT_LE(frobenius_distance(lhs, rhs), 1e-13);
}

TEST(ExtLif, Examples) {
  std::mt19937_64 rng(38);
  EXPECT_LE(frobenius_distance(ext_map(realize(OctMatrix::identity(3))), OctMatrix::identity(3)), 0.0);
  OctMatrix T = random_oct_matrix(3, rng);
  EXPECT_LE(frobenius_distance(ext_map(realize(T)), T), 1e-15);
  // lif inverts Re o (.) on para-linear maps; ext of Re o T on Re V is the entrywise real part
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(24, 24);
  for (int i = 0; i < 3; ++i) P(8 * i, 8 * i) = 1.0;
  RealOpMatrix ReT{P * realize(T).m};
  EXPECT_LE(frobenius_distance(lif_map(ReT), T), 1e-15);
  EXPECT_LE(frobenius_distance(ext_map(ReT), re_op(T)), 1e-15);
  // ext of any real-linear map on Re V is para-linear and restricts back
  RealOpMatrix G{Eigen::MatrixXd::Random(24, 24)};
  OctMatrix E = ext_map(G);
  EXPECT_TRUE(is_para_linear(realize(E)));
  for (std::size_t j = 0; j < 3; ++j)
    EXPECT_LE(distance(E.apply(OctVector::delta(3, j)), G.apply(OctVector::delta(3, j))), 1e-14);
}

TEST(ReOp, Examples) {
  OctMatrix R = OctMatrix::from_real(Eigen::MatrixXd::Random(2, 2));
  EXPECT_LE(frobenius_distance(re_op(R), R), 0.0);
  EXPECT_LE(re_op(OctMatrix::left_mult(e(1))).frobenius(), 0.0);
  EXPECT_LE(frobenius_distance(re_op(OctMatrix::left_mult(Octonion(2.0) + e(3))), OctMatrix::left_mult(Octonion(2.0))), 0.0);
}

TEST(RegPower, Examples) {
  std::mt19937_64 rng(39);
  OctMatrix T = random_oct_matrix(2, rng);
  for (auto side : {Side::Left, Side::Right}) {
    EXPECT_LE(frobenius_distance(reg_power(T, 0, side), OctMatrix::identity(2)), 0.0);
    EXPECT_LE(frobenius_distance(reg_power(T, 1, side), T), 1e-14);
  }
  for (const auto& P : {diag_op(), rotation_op()}) {
    for (int k = 0; k <= 6; ++k) {
      for (auto side : {Side::Left, Side::Right})
        EXPECT_LE(frobenius_distance(reg_power(P, k, side), oracle::matpow(P, k)), 1e-10 * std::pow(3.0, k));
    }
  }
}

TEST(RegInverse, Examples) {
  for (auto side : {Side::Left, Side::Right})
    EXPECT_LE(frobenius_distance(reg_inverse(realize(OctMatrix::identity(2)), side), OctMatrix::identity(2)), 1e-14);
  std::mt19937_64 rng(40);
  Octonion s = random_octonion(rng);
  OctMatrix Ri = reg_inverse(r_mult(s, 2), Side::Right);
  RealVector v{{0.5, -2.0}};
  EXPECT_LE(distance(Ri.apply(v.embed()), mul_right(v.embed(), s.inv())), 1e-14);
  OctMatrix D = diag_op();
  OctMatrix Di = reg_inverse(D, Side::Right);
  EXPECT_LE(frobenius_distance(reg_compose(D, Di), OctMatrix::identity(3)), 1e-10);
  OctMatrix Z(2);
  EXPECT_THROW(reg_inverse(Z, Side::Right), SingularityError);
  EXPECT_THROW(reg_inverse(realize(OctMatrix::left_mult(e(1))) - r_mult(e(1), 1), Side::Left), SingularityError);
}

TEST(PowerAssoc, Examples) {
  auto real = power_assoc_check(OctMatrix::from_real(Eigen::MatrixXd::Random(3, 3)));
  EXPECT_TRUE(real.ok);
  EXPECT_LE(real.residual, 1e-12);
  EXPECT_TRUE(power_assoc_check(diag_op()).ok);
  EXPECT_TRUE(power_assoc_check(rotation_op()).ok);
  std::mt19937_64 rng(41);
  auto generic = power_assoc_check(random_oct_matrix(2, rng));
  EXPECT_FALSE(generic.ok);
  EXPECT_GT(generic.relative, 1e-6);
}

TEST(Components, Examples) {
  auto dc = component_decompose(diag_op());
  EXPECT_DOUBLE_EQ(dc[1](0, 0), 1.0);
  EXPECT_DOUBLE_EQ(dc[2](1, 1), 2.0);
  EXPECT_DOUBLE_EQ(dc[4](2, 2), 3.0);
  EXPECT_EQ(dc[1].cwiseAbs().sum() + dc[2].cwiseAbs().sum() + dc[4].cwiseAbs().sum(), 6.0);
  EXPECT_LE(component_commutator_defect(diag_op()), 0.0);
  auto rc = component_decompose(rotation_op());
  Eigen::Matrix2d expect;
  expect << 0, -1, 1, 0;
  EXPECT_TRUE(rc[1].isApprox(expect));
  for (int c : {0, 2, 3, 4, 5, 6, 7}) EXPECT_EQ(rc[c].cwiseAbs().sum(), 0.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(3, 3);
  auto real = component_decompose(OctMatrix::from_real(m));
  EXPECT_TRUE(real[0].isApprox(m));
  EXPECT_LE(component_commutator_defect(OctMatrix::from_real(m)), 0.0);
}

TEST(OperatorNorm, Values) {
  EXPECT_NEAR(operator_norm(diag_op()), 3.0, 1e-12);
  EXPECT_NEAR(operator_norm(rotation_op()), 1.0, 1e-12);
  EXPECT_NEAR(min_singular_value(realize(diag_op())), 1.0, 1e-12);
}
