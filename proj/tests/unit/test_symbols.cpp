#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "psido/symbols.hpp"

namespace psido {
namespace {

constexpr double kTol = 1e-13;

double diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

TrigLoop loop_e(int n, int k = 1) { return TrigLoop::scalar_monomial(n, 1.0, k); }

Matrix random_matrix(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

SymbolExpr random_compact(int k, std::mt19937_64& rng) {
  TrigLoop c = TrigLoop::monomial(0, random_matrix(k, rng)) + TrigLoop::monomial(1, random_matrix(k, rng)) +
               TrigLoop::monomial(-2, random_matrix(k, rng));
  return SymbolExpr::separable(c, Profile::bump(1.5) * Profile::rational(), SymbolClass::CompactSupport) +
         SymbolExpr::separable(TrigLoop::monomial(3, random_matrix(k, rng)), Profile::bump(0.7),
                               SymbolClass::CompactSupport);
}

TEST(TrigLoop, Algebra) {
  const TrigLoop a = loop_e(1) + Complex(0.5) * loop_e(-2);
  EXPECT_EQ(a.degree(), 2);
  EXPECT_NEAR(std::abs(a(0.3)(0, 0) - (std::polar(1.0, 0.3) + 0.5 * std::polar(1.0, -0.6))), 0.0, kTol);
  EXPECT_TRUE((loop_e(1) * loop_e(-1)).approx_equal(TrigLoop::identity(1)));
  EXPECT_TRUE(a.adjoint().adjoint().approx_equal(a));
  EXPECT_THROW(loop_e(1, 1) + loop_e(1, 2), std::invalid_argument);
}

TEST(Dilate, Laws) {
  const auto a = SymbolExpr::separable(loop_e(1), Profile::bump(2.0) * Profile::rational(), SymbolClass::CompactSupport);
  const auto rho = SymbolExpr::separable(TrigLoop::identity(1), Profile::rational(), SymbolClass::FullC0);
  for (double x : {0.0, 1.1, 4.0}) {
    for (double xi : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
      EXPECT_LT(diff(dilate(a, 1.0)(x, xi), a(x, xi)), kTol);
      EXPECT_LT(diff(dilate(dilate(a, 0.5), 3.0)(x, xi), dilate(a, 1.5)(x, xi)), kTol);
    }
  }
  EXPECT_NEAR(std::abs(dilate(rho, 2.0)(0.0, 2.0)(0, 0) - 0.5), 0.0, kTol);  // rho(1) = 1/2
  EXPECT_EQ(dilate(a, 2.0).symbol_class(), SymbolClass::CompactSupport);
  EXPECT_THROW(dilate(a, 0.0), std::invalid_argument);
  EXPECT_THROW(dilate(a, -1.0), std::invalid_argument);
}

TEST(Smash, Examples) {
  const auto f = Profile::rational_zero() * Profile::rational();
  EXPECT_TRUE(smash(Profile(0.0), SymbolExpr::unit(2))(0.4, 3.0).isZero());

  const auto g = smash(f, SymbolExpr::unit(2));
  for (double xi : {-2.0, 0.5, 7.0}) {
    EXPECT_LT(diff(g(1.0, xi), f(std::abs(xi)) * Matrix::Identity(2, 2)), kTol);
  }

  const auto sigma = SymbolExpr::homogeneous(loop_e(1), loop_e(-2) + Complex(0.3) * loop_e(0));
  const auto h = smash(f, sigma);
  EXPECT_EQ(h.symbol_class(), SymbolClass::Vanishing00);
  for (double x : {0.0, 0.7, 2.9}) {
    EXPECT_TRUE(h(x, 0.0).isZero());
    EXPECT_LT(diff(h(x, 2.0), f(2.0) * sigma.plus_loop()(x)), kTol);
    EXPECT_LT(diff(h(x, -2.0), f(2.0) * sigma.minus_loop()(x)), kTol);
  }

  // smash(tau_s f, a) = dilate(smash(f, a), 1/s), tau_s f(r) = f(s r).
  for (double s : {0.5, 3.0}) {
    const auto lhs = smash(f.dilate(1.0 / s), sigma);
    const auto rhs = dilate(smash(f, sigma), 1.0 / s);
    for (double xi : {-4.0, -0.3, 0.8, 5.0}) EXPECT_LT(diff(lhs(0.4, xi), rhs(0.4, xi)), kTol);
  }

  EXPECT_THROW(smash(Profile::rational(), sigma), std::invalid_argument);  // f(0) != 0
  EXPECT_THROW(smash(f, SymbolExpr::separable(loop_e(0), f, SymbolClass::Vanishing00)), std::invalid_argument);
}

TEST(PointwiseMul, UnimodularInverse) {
  const auto a = SymbolExpr::homogeneous(loop_e(1), loop_e(-3));
  const auto a_inv = SymbolExpr::homogeneous(loop_e(-1), loop_e(3));
  const auto prod = pointwise_mul(a, a_inv);
  for (double x : {0.0, 1.3, 5.9})
    for (double xi : {-1.0, 2.0}) EXPECT_LT(diff(prod(x, xi), SymbolExpr::unit(1)(x, xi)), kTol);
}

TEST(PointwiseMul, AdjointIdentities) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ux(0.0, kTwoPi), uxi(-3.0, 3.0);
  const auto a = random_compact(2, rng);
  const auto b = random_compact(2, rng);
  const auto ab_star = adjoint(pointwise_mul(a, b));
  const auto b_star_a_star = pointwise_mul(adjoint(b), adjoint(a));
  for (int q = 0; q < 100; ++q) {
    const double x = ux(rng), xi = uxi(rng);
    EXPECT_LT(diff(adjoint(adjoint(a))(x, xi), a(x, xi)), kTol);
    EXPECT_LT(diff(ab_star(x, xi), b_star_a_star(x, xi)), kTol);
    EXPECT_LT(diff(adjoint(a)(x, xi), a(x, xi).adjoint()), kTol);
  }
  EXPECT_THROW(pointwise_mul(a, SymbolExpr::unit(1)), std::invalid_argument);
}

TEST(SymbolExpr, ClassTags) {
  EXPECT_EQ(product_class(SymbolClass::CompactSupport, SymbolClass::FullC0), SymbolClass::CompactSupport);
  EXPECT_EQ(product_class(SymbolClass::HomogeneousZero, SymbolClass::Vanishing00), SymbolClass::Vanishing00);
  EXPECT_EQ(product_class(SymbolClass::HomogeneousZero, SymbolClass::HomogeneousZero), SymbolClass::HomogeneousZero);
  EXPECT_THROW(SymbolExpr::separable(loop_e(0), Profile::rational(), SymbolClass::CompactSupport), std::invalid_argument);
  EXPECT_THROW(SymbolExpr::separable(loop_e(0), Profile::rational(), SymbolClass::Vanishing00), std::invalid_argument);
  EXPECT_THROW(SymbolExpr::separable(loop_e(0), Profile::rational(), SymbolClass::HomogeneousZero),
               std::invalid_argument);
}

TEST(SymbolExpr, PeriodicAndHomogeneous) {
  std::mt19937_64 rng(2);
  const auto a = random_compact(2, rng);
  const auto sigma = SymbolExpr::homogeneous(loop_e(2, 1) + Complex(0.2) * loop_e(-1, 1), loop_e(-1, 1));
  for (double x : {0.1, 2.2, 4.4}) {
    for (double xi : {-2.0, 0.6, 1.9}) {
      EXPECT_LT(diff(a(x + kTwoPi, xi), a(x, xi)), 1e-12);
      for (double lambda : {0.01, 3.0, 1e4}) EXPECT_LT(diff(sigma(x, lambda * xi), sigma(x, xi)), kTol);
    }
  }
}

TEST(CutFunction, Shape) {
  const CutFunction theta(4.0);
  EXPECT_EQ(theta(0.0), 0.0);
  EXPECT_EQ(theta(4.0), 1.0);
  EXPECT_EQ(theta(100.0), 1.0);
  for (double r = 0.0; r < 5.0; r += 0.01) {
    EXPECT_GE(theta(r), 0.0);
    EXPECT_LE(theta(r), 1.0);
  }
  EXPECT_THROW(CutFunction(0.0), std::invalid_argument);
}

}  // namespace
}  // namespace psido
