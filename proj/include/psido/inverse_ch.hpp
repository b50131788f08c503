#pragma once

#include <map>
#include <utility>
#include <vector>

#include "psido/numerics.hpp"
#include "psido/partition.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// Operator sum_{i,j} X_ij (x) e_ij on l^2(Z) (x) L^2(S^1) (x) C^k, indices
/// |i|, |j| <= L, blocks with |i - j| >= 2 absent. Only nonzero blocks are stored.
class BlockOperator {
 public:
  BlockOperator(int L, const CircleGrid& grid);

  int L() const { return L_; }
  const CircleGrid& grid() const { return grid_; }
  const std::map<std::pair<int, int>, FourierOperator>& blocks() const { return blocks_; }

  /// Zero operator when the block is not stored.
  FourierOperator block(int i, int j) const;
  /// Stores X at (i, j); zero blocks are dropped. Throws if |i - j| >= 2 and X != 0.
  void set(int i, int j, FourierOperator x);

  bool is_banded() const;
  bool is_zero() const { return blocks_.empty(); }

  BlockOperator adjoint() const;
  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b);

  /// Dense matrix over the smallest index window holding every stored block.
  Matrix assemble(int* first_index = nullptr) const;
  double norm() const;
  /// Blockwise action on a vector supported in slot i (other slots zero); returns slots lo..hi.
  std::map<int, Vector> apply_to_slot(int i, const Vector& f) const;

 private:
  int L_;
  CircleGrid grid_;
  std::map<std::pair<int, int>, FourierOperator> blocks_;
};

/// Block (i, j) = T_{2^i}(smash(gamma_0 gamma_{j-i}, a)) for |i|, |j| <= L, |i - j| <= 1.
BlockOperator i0_block_operator(const SymbolExpr& a, const DyadicPartition& p, int L, const CircleGrid& grid);

/// Block (i, j) = T_1(smash(gamma_i^s gamma_j^s theta, a)); s = 0 gives Op(a) in block (0, 0).
BlockOperator psi_s(const SymbolExpr& a, double s, const CutFunction& theta, int L, const CircleGrid& grid);

/// ||T_1(smash((gamma_0^s)^2 theta, a)) f - Op(a) f||.
double equ1_defect(const SymbolExpr& a, double s, const Vector& f, const CutFunction& theta, const CircleGrid& grid);

/// ||T_1(smash(gamma_i^s gamma_j^s theta, a)) f||, (i, j) != (0, 0), |i - j| <= 1.
double equ2_defect(const SymbolExpr& a, double s, int i, int j, const Vector& f, const CutFunction& theta,
                   const CircleGrid& grid);

/// True when supp(gamma_i^s gamma_j^s) misses every integer mode 1 <= |m| <= band.
bool band_excluded(double s, int i, int j, int band);

/// Distance between Psi_1(a) and I_0(a) blockwise, D_ij = Psi_1(a)_ij - I_0(a)_ij.
struct EndpointReport {
  int L = 0;
  int K = 0;
  double quotient_defect = 0.0;  // max_{|i|<=L} max(||D_ij (I-P_K)||, ||(I-P_K) D_ij||)
  double truncation_tail = 0.0;  // max over L < |i| <= i_max of ||D_ij||
  double theta_region = 0.0;     // max_{|i|<=L} ||D_ij|| (finite-rank part below r0)
  double aggregate = 0.0;        // quotient_defect + truncation_tail
};

/// i_max is the largest i whose bump meets the mode window |n| <= N.
EndpointReport endpoint_defect(const SymbolExpr& a, int L, int K, const CircleGrid& grid,
                               const CutFunction& theta = CutFunction());

/// Same report for several L at once (the blocks D_ij do not depend on L).
std::vector<EndpointReport> endpoint_defects(const SymbolExpr& a, const std::vector<int>& L_list, int K,
                                             const CircleGrid& grid, const CutFunction& theta = CutFunction());

/// ||T_1(gamma_i gamma_j theta a) - T_1(gamma_i gamma_j a)|| (s = 1).
double theta_block_discrepancy(const SymbolExpr& a, int i, int j, const CutFunction& theta, const CircleGrid& grid);
/// ||T_{2^i}(gamma_0 gamma_{j-i} a) - T_1(gamma_i gamma_j a)|| (s = 1).
double translation_block_discrepancy(const SymbolExpr& a, int i, int j, const CircleGrid& grid);

/// max(||D (I-P_K)||, ||(I-P_K) D||) over the blocks D of Psi_s(a) - Psi_s(a)* with K = N/2.
double psi_self_adjoint_defect(const SymbolExpr& a, double s, const CutFunction& theta, int L,
                               const CircleGrid& grid);

}  // namespace psido
