#pragma once

#include <vector>

#include "psido/numerics.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// Tail norms of the symbol-map and commutator defects of Op over a K-grid.
struct ExtensionDefectProfile {
  std::vector<int> K;
  std::vector<double> symbol_map;  // ||(Op(a)Op(b) - Op(ab))(I - P_K)||
  std::vector<double> commutator;  // ||[Op(a), Op(b)](I - P_K)||
  int K_half = 0;
  double symbol_map_at_half = 0.0;
  double commutator_at_half = 0.0;
  double tol_compact = 1e-3;
  bool pass = false;  // both values at K = N/2 below tol_compact
};

/// Products are formed on a grid padded by deg a + deg b and compressed back,
/// so the only defects measured are those of Op itself, not of the mode cutoff.
ExtensionDefectProfile symbol_map_defect(const SymbolExpr& a, const SymbolExpr& b, const CircleGrid& grid,
                                         const std::vector<int>& K_list, const CutFunction& theta = CutFunction(),
                                         double tol_compact = 1e-3);

/// ||(Op(c) - pi(c))(I - P_K)|| at K = ceil(r0) + deg c. Requires a
/// fiber-constant symbol.
double lifting_check(const SymbolExpr& c, const CircleGrid& grid, const CutFunction& theta = CutFunction());

/// P_N X Y P_N computed through the padded grid N + pad.
FourierOperator padded_product(const FourierOperator& x_padded, const FourierOperator& y_padded,
                               const CircleGrid& target);

}  // namespace psido
