#include <cmath>

#include <gtest/gtest.h>

#include "psido/inverse_ch.hpp"
#include "psido/quantize.hpp"

namespace psido {
namespace {

TrigLoop loop_e(int n, int k = 1) { return TrigLoop::scalar_monomial(n, 1.0, k); }

SymbolExpr shift_symbol() { return SymbolExpr::homogeneous(loop_e(1), loop_e(0)); }

Vector mode_vector(const CircleGrid& grid, int lo, int hi) {
  Vector f = Vector::Zero(grid.dim());
  for (int n = -grid.N(); n <= grid.N(); ++n)
    if (std::abs(n) >= lo && std::abs(n) <= hi) f(grid.index(n)) = std::polar(1.0, 0.3 * n);
  return f.normalized();
}

TEST(BlockOperator, BandedStorage) {
  const CircleGrid grid(8);
  BlockOperator b(3, grid);
  EXPECT_TRUE(b.is_zero());
  b.set(1, 2, FourierOperator::identity(grid));
  b.set(0, 0, FourierOperator(grid));  // dropped
  EXPECT_EQ(b.blocks().size(), 1u);
  EXPECT_TRUE(b.is_banded());
  EXPECT_THROW(b.set(0, 2, FourierOperator::identity(grid)), std::invalid_argument);
  EXPECT_NO_THROW(b.set(0, 2, FourierOperator(grid)));
  EXPECT_NEAR(b.norm(), 1.0, 1e-12);
  EXPECT_EQ(b.adjoint().block(2, 1).max_abs(), 1.0);
}

TEST(I0BlockOperator, Examples) {
  const CircleGrid grid(64);
  const auto p = build_partition(1.0, 8);
  EXPECT_TRUE(i0_block_operator(SymbolExpr::zero(1, SymbolClass::HomogeneousZero), p, 4, grid).is_zero());

  const auto a = shift_symbol();
  const auto op = i0_block_operator(a, p, 8, grid);
  EXPECT_TRUE(op.is_banded());
  for (const auto& [ij, x] : op.blocks()) EXPECT_LE(std::abs(ij.first - ij.second), 1);

  // Block (-L, -L) is T_{2^{-L}}: it dies as L grows.
  double prev = INFINITY;
  for (int L = 2; L <= 7; ++L) {
    const double v = operator_norm(i0_block_operator(a, build_partition(1.0, L), L, grid).block(-L, -L));
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 0.0);
}

TEST(PsiS, Endpoints) {
  const CircleGrid grid(32);
  const CutFunction theta;
  const auto a = shift_symbol();
  const auto psi0 = psi_s(a, 0.0, theta, 6, grid);
  ASSERT_EQ(psi0.blocks().size(), 1u);
  EXPECT_EQ((psi0.block(0, 0) - op_quantize(a, theta, grid)).max_abs(), 0.0);

  const auto psi1 = psi_s(SymbolExpr::unit(1), 1.0, theta, 6, grid);
  const auto p = build_partition(1.0, 6);
  for (int i = -2; i <= 5; ++i) {
    const auto expected = FourierOperator::radial_diagonal(grid, [&](int n) {
      return n == 0 ? 0.0 : std::pow(p.gamma(i, n), 2) * theta(n);
    });
    EXPECT_LT((psi1.block(i, i) - expected).max_abs(), 1e-15) << i;
  }
}

TEST(PsiS, UniformlyBounded) {
  const CircleGrid grid(32);
  const auto a = shift_symbol();
  for (double s : {1.0, 0.5, 0.25, 0.125}) EXPECT_LE(psi_s(a, s, CutFunction(), 8, grid).norm(), 2.0 * a.sup_norm());
}

TEST(Equ1, Examples) {
  const CircleGrid grid(256);
  const CutFunction theta;
  // Plateau of gamma_0^s at s = 1/4 is [1/8, 8].
  EXPECT_LT(equ1_defect(SymbolExpr::unit(1), 0.25, mode_vector(grid, 4, 8), theta, grid), 1e-15);
  EXPECT_LT(equ1_defect(shift_symbol(), 0.25, mode_vector(grid, 6, 6), theta, grid), 1e-15);
  EXPECT_EQ(equ1_defect(SymbolExpr::zero(1, SymbolClass::HomogeneousZero), 0.5, mode_vector(grid, 1, 9), theta, grid),
            0.0);

  Vector f = Vector::Zero(grid.dim());
  for (int n = -256; n <= 256; ++n) f(grid.index(n)) = 1.0 / (1.0 + n * n);
  f.normalize();
  double prev = INFINITY;
  for (double s : {0.5, 1.0 / 3, 0.25, 1.0 / 6, 0.125}) {
    const double v = equ1_defect(shift_symbol(), s, f, theta, grid);
    EXPECT_LT(v, prev) << s;
    prev = v;
  }
}

TEST(Equ2, Examples) {
  const CircleGrid grid(128);
  const CutFunction theta;
  const auto a = shift_symbol();
  const Vector f = mode_vector(grid, 1, 12);
  EXPECT_THROW(equ2_defect(a, 0.5, 0, 0, f, theta, grid), std::invalid_argument);
  EXPECT_THROW(equ2_defect(a, 0.5, 0, 2, f, theta, grid), std::invalid_argument);
  EXPECT_EQ(equ2_defect(SymbolExpr::zero(1, SymbolClass::HomogeneousZero), 0.5, 1, 1, f, theta, grid), 0.0);

  // gamma_1^{1/4} lives on [8, 32]: nothing of modes <= 7 survives.
  EXPECT_TRUE(band_excluded(0.25, 1, 1, 7));
  EXPECT_LT(equ2_defect(a, 0.25, 1, 1, mode_vector(grid, 1, 7), theta, grid), 1e-6);

  double prev = INFINITY;
  for (double s : {0.5, 0.25, 0.125}) {
    const double v = equ2_defect(a, s, 1, 1, f, theta, grid);
    EXPECT_LE(v, prev) << s;
    if (band_excluded(s, 1, 1, 12)) EXPECT_LT(v, 1e-6);
    prev = v;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(BlockIdentities, ThetaAndTranslation) {
  const CircleGrid grid(128);
  const CutFunction theta(4.0);
  const auto a = shift_symbol();
  for (int i = 3; i <= 8; ++i)
    for (int j = i - 1; j <= i + 1; ++j) EXPECT_EQ(theta_block_discrepancy(a, i, j, theta, grid), 0.0);
  EXPECT_GT(theta_block_discrepancy(a, 1, 1, theta, grid), 0.0);
  for (int i = -3; i <= 8; ++i)
    for (int j = i - 1; j <= i + 1; ++j) EXPECT_LT(translation_block_discrepancy(a, i, j, grid), 1e-13);
}

TEST(Endpoint, AggregateNonincreasingInL) {
  const CircleGrid grid(128);
  const auto reports = endpoint_defects(shift_symbol(), {4, 6, 8}, 64, grid);
  ASSERT_EQ(reports.size(), 3u);
  for (std::size_t i = 1; i < reports.size(); ++i) EXPECT_LE(reports[i].aggregate, reports[i - 1].aggregate + 1e-15);
  EXPECT_LT(reports.back().aggregate, 1e-12);
  EXPECT_GT(reports.back().theta_region, 0.0);  // finite rank, below r0
  EXPECT_EQ(endpoint_defect(SymbolExpr::zero(1, SymbolClass::HomogeneousZero), 4, 64, grid).aggregate, 0.0);
}

TEST(PsiS, SelfAdjointDefectShrinksWithN) {
  const auto a = SymbolExpr::homogeneous(Complex(0.5) * (loop_e(1) + loop_e(-1)), loop_e(0));
  double prev = INFINITY;
  for (int N : {32, 64, 128}) {
    const double v = psi_self_adjoint_defect(a, 1.0, CutFunction(), 8, CircleGrid(N));
    EXPECT_LT(v, prev) << N;
    prev = v;
  }
}

}  // namespace
}  // namespace psido
