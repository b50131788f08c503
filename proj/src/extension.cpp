#include "psido/extension.hpp"

#include <cmath>
#include <stdexcept>

#include "psido/quantize.hpp"

namespace psido {

FourierOperator padded_product(const FourierOperator& x_padded, const FourierOperator& y_padded,
                               const CircleGrid& target) {
  return (x_padded * y_padded).compress(target);
}

ExtensionDefectProfile symbol_map_defect(const SymbolExpr& a, const SymbolExpr& b, const CircleGrid& grid,
                                         const std::vector<int>& K_list, const CutFunction& theta,
                                         double tol_compact) {
  if (a.k() != b.k() || a.k() != grid.k()) throw std::invalid_argument("symbol_map_defect: matrix sizes differ");
  const CircleGrid wide = grid.with_modes(grid.N() + a.degree() + b.degree());
  const FourierOperator A = op_quantize(a, theta, wide);
  const FourierOperator B = op_quantize(b, theta, wide);
  const FourierOperator AB = padded_product(A, B, grid);
  const FourierOperator BA = padded_product(B, A, grid);
  const FourierOperator defect = AB - op_quantize(pointwise_mul(a, b), theta, grid);
  const FourierOperator commutator = AB - BA;

  ExtensionDefectProfile out;
  out.tol_compact = tol_compact;
  for (int K : K_list) {
    if (K < 0 || K > grid.N()) throw std::invalid_argument("symbol_map_defect: K outside [0, N]");
    out.K.push_back(K);
    out.symbol_map.push_back(right_tail_norm(defect, K));
    out.commutator.push_back(right_tail_norm(commutator, K));
  }
  out.K_half = grid.N() / 2;
  out.symbol_map_at_half = right_tail_norm(defect, out.K_half);
  out.commutator_at_half = right_tail_norm(commutator, out.K_half);
  out.pass = out.symbol_map_at_half < tol_compact && out.commutator_at_half < tol_compact;
  return out;
}

double lifting_check(const SymbolExpr& c, const CircleGrid& grid, const CutFunction& theta) {
  if (c.symbol_class() != SymbolClass::HomogeneousZero || !c.is_fiber_constant()) {
    throw std::invalid_argument("lifting_check: symbol must be fiber-constant");
  }
  const TrigLoop loop = c.plus_loop();
  const int K = static_cast<int>(std::ceil(theta.r0())) + loop.degree();
  if (K > grid.N()) throw std::invalid_argument("lifting_check: grid too small for r0 + deg c");
  const FourierOperator diff = op_quantize(c, theta, grid) - multiplication_operator(loop, grid);
  return right_tail_norm(diff, K);
}

}  // namespace psido
