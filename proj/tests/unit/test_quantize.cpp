#include <cmath>

#include <gtest/gtest.h>

#include "psido/quantize.hpp"

namespace psido {
namespace {

TrigLoop loop_e(int n, int k = 1) { return TrigLoop::scalar_monomial(n, 1.0, k); }

double entry_diff(const FourierOperator& a, const FourierOperator& b) { return (a - b).max_abs(); }

SymbolExpr test_compact() {
  return SymbolExpr::separable(loop_e(0) + Complex(0.5) * loop_e(1), Profile::bump(0.8) * Profile::rational(),
                               SymbolClass::CompactSupport);
}

SymbolExpr test_c00() {
  return SymbolExpr::separable(loop_e(0) + Complex(0.4) * loop_e(1), Profile::rational_zero() * Profile::rational(),
                               SymbolClass::Vanishing00);
}

SymbolExpr test_matrix() {
  Matrix m(2, 2);
  m << 1.0, Complex(0, 0.5), 0.2, -1.0;
  return SymbolExpr::separable(TrigLoop::monomial(-1, m) + TrigLoop::identity(2), Profile::bump(1.2),
                               SymbolClass::CompactSupport);
}

TEST(Atlas, TwoArcsValid) {
  EXPECT_NO_THROW(Atlas::two_arcs().validate());
  EXPECT_NO_THROW(Atlas::trivial().validate());
  Chart bad;
  bad.half_width = 1.0;
  bad.phi_flat = 0.5;
  bad.phi_ramp = 0.2;
  bad.psi_flat = 0.6;
  bad.psi_ramp = 0.5;  // supp psi leaves the chart
  EXPECT_THROW(Atlas({bad}).validate(), std::invalid_argument);
}

TEST(TQuantize, FiberOnlySymbolIsDiagonal) {
  const CircleGrid grid(16, 2);
  const auto rho = Profile::rational();
  const auto a = SymbolExpr::separable(TrigLoop::identity(2), rho, SymbolClass::FullC0);
  const double t = 3.0;
  const auto expected = FourierOperator::radial_diagonal(grid, [&](int n) { return rho(n / t); });
  EXPECT_EQ(entry_diff(t_quantize(a, t, grid), expected), 0.0);
}

TEST(TQuantize, XOnlySymbolIsToeplitz) {
  const CircleGrid grid(12);
  const auto c = loop_e(0) + Complex(0.3, 0.1) * loop_e(2) + Complex(-0.7) * loop_e(-1);
  const auto a = SymbolExpr::fiber_constant(c);
  const auto x1 = t_quantize(a, 1.0, grid);
  EXPECT_EQ(entry_diff(x1, t_quantize(a, 37.0, grid)), 0.0);
  EXPECT_EQ(entry_diff(x1, multiplication_operator(c, grid)), 0.0);
  EXPECT_EQ(x1.block(5, 3)(0, 0), Complex(0.3, 0.1));
  EXPECT_EQ(x1.block(3, 4)(0, 0), Complex(-0.7));
}

TEST(TQuantize, TranslationInvarianceExact) {
  const CircleGrid grid(32, 2);
  for (double t : {1.0, 2.0, 8.0, 32.0, 128.0}) {
    for (double s : {0.5, 2.0, 3.0}) {
      const auto a = test_matrix();
      EXPECT_LT(entry_diff(t_quantize(a, t * s, grid), t_quantize(dilate(a, s), t, grid)), 1e-13) << t << " " << s;
    }
  }
}

TEST(TQuantize, Linear) {
  const CircleGrid grid(16);
  const auto a = test_compact(), b = test_c00();
  const Complex alpha(0.3, -2.0);
  const auto lhs = t_quantize(alpha * a + b, 5.0, grid);
  const auto rhs = alpha * t_quantize(a, 5.0, grid) + t_quantize(b, 5.0, grid);
  EXPECT_LT(entry_diff(lhs, rhs), 1e-14);
  EXPECT_THROW(t_quantize(a, 0.0, grid), std::invalid_argument);
  EXPECT_THROW(t_quantize(a, -1.0, grid), std::invalid_argument);
}

TEST(TQuantizeCharts, ZeroAndDegenerateAtlas) {
  const CircleGrid grid(24);
  const auto zero = SymbolExpr::zero(1, SymbolClass::CompactSupport);
  EXPECT_EQ(t_quantize_charts(zero, 2.0, Atlas::two_arcs(), grid).max_abs(), 0.0);

  const auto c = SymbolExpr::fiber_constant(loop_e(1) + Complex(0.25) * loop_e(-2));
  EXPECT_LT(entry_diff(t_quantize_charts(c, 4.0, Atlas::trivial(), grid), t_quantize(c, 4.0, grid)), 1e-12);
}

TEST(TQuantizeCharts, AgreesAsymptotically) {
  const CircleGrid grid(64);
  const auto a = test_compact();
  double prev = INFINITY, first = 0.0;
  for (double t : {4.0, 8.0, 16.0, 32.0, 64.0}) {
    const double d = operator_norm(t_quantize_charts(a, t, Atlas::two_arcs(), grid) - t_quantize(a, t, grid));
    if (first == 0.0) first = d;
    EXPECT_LT(d, prev) << t;
    prev = d;
  }
  EXPECT_LT(prev, 0.05 * first);
}

TEST(OpQuantize, Examples) {
  const CircleGrid grid(10, 2);
  const CutFunction theta(4.0);
  const auto id = op_quantize(SymbolExpr::unit(2), theta, grid);
  EXPECT_EQ(entry_diff(id, FourierOperator::radial_diagonal(grid, [&](int n) { return theta(n); })), 0.0);

  const auto sign = SymbolExpr::homogeneous(TrigLoop::identity(2), Complex(-1.0) * TrigLoop::identity(2));
  const auto op = op_quantize(sign, theta, grid);
  for (int n = -10; n <= 10; ++n) {
    const double expected = (n > 0 ? 1.0 : n < 0 ? -1.0 : 0.0) * theta(std::abs(n));
    EXPECT_EQ(op.block(n, n), expected * Matrix::Identity(2, 2));
  }

  const auto c = loop_e(2, 2) + Complex(0.5) * loop_e(-1, 2);
  const auto diff = op_quantize(SymbolExpr::fiber_constant(c), theta, grid) - multiplication_operator(c, grid);
  EXPECT_EQ(right_tail_norm(diff, 3), 0.0);  // columns |m| < r0 only
  EXPECT_GT(right_tail_norm(diff, 2), 0.0);

  EXPECT_THROW(op_quantize(test_compact(), theta, CircleGrid(10)), std::invalid_argument);
}

TEST(MultiplicationOperator, Examples) {
  const CircleGrid grid(20, 2);
  EXPECT_EQ(entry_diff(multiplication_operator(TrigLoop::identity(2), grid), FourierOperator::identity(grid)), 0.0);
  Matrix m(2, 2);
  m << 1.0, Complex(0, 2), 0.5, Complex(1, 1);
  const auto c = TrigLoop::monomial(1, m) + TrigLoop::monomial(-2, m.transpose());
  const auto d = TrigLoop::monomial(3, m.adjoint()) + TrigLoop::identity(2);
  EXPECT_EQ(entry_diff(multiplication_operator(c, grid).adjoint(), multiplication_operator(c.adjoint(), grid)), 0.0);
  const auto defect =
      multiplication_operator(c, grid) * multiplication_operator(d, grid) - multiplication_operator(c * d, grid);
  // Nonzero only where an intermediate mode leaves the window.
  const int K = 20 - c.degree() - d.degree();
  EXPECT_LT(defect.compress(grid.with_modes(K)).max_abs(), 1e-14);
  EXPECT_GT(defect.max_abs(), 0.1);
  EXPECT_THROW(multiplication_operator(loop_e(21, 2), grid), std::invalid_argument);
}

}  // namespace
}  // namespace psido
