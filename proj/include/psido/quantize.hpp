#pragma once

#include <functional>
#include <vector>

#include "psido/numerics.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// Arc chart of S^1 centred at `center` with local coordinate y = x - center,
/// |y| < half_width. The partition function phi and the plateau function psi
/// are radial in y:
///   phi(y) = 1 - S((|y| - phi_flat) / phi_ramp),
///   psi(y) = 1 - S((|y| - psi_flat) / psi_ramp).
struct Chart {
  double center = 0.0;
  double half_width = kPi;
  double phi_flat = kPi;
  double phi_ramp = 1.0;
  double psi_flat = kPi;
  double psi_ramp = 1.0;
  bool whole_circle = false;  // degenerate chart: phi = psi = 1 on [-pi, pi)

  double phi(double y) const;
  double psi(double y) const;
};

/// Atlas {U_k} of arcs with partition of unity {phi_k} and plateaus psi_k
/// (psi_k phi_k = phi_k, supp psi_k inside U_k).
class Atlas {
 public:
  explicit Atlas(std::vector<Chart> charts);

  /// Two arcs of length 3*pi/2 centred at 0 and pi.
  static Atlas two_arcs();
  /// Single chart covering the circle with phi = psi = 1.
  static Atlas trivial();

  const std::vector<Chart>& charts() const { return charts_; }

  /// Sampled invariants; throws std::invalid_argument describing the first violation.
  void validate(int samples = 4096) const;

 private:
  std::vector<Chart> charts_;
};

/// T_t(a): mode m is multiplied by a(x, m/t) and re-expanded, so block (n, m)
/// is the Fourier coefficient at n - m of x -> a(x, m/t).
FourierOperator t_quantize(const SymbolExpr& a, double t, const CircleGrid& grid);

/// Same entry formula for an arbitrary evaluable symbol; x-coefficients are
/// taken from J samples by FFT. `k` of the symbol must match the grid.
using SymbolFunction = std::function<Matrix(double x, double xi)>;
FourierOperator t_quantize_sampled(const SymbolFunction& a, double t, const CircleGrid& grid);

/// f -> sum_k T_{psi_k a, t}(phi_k f), each chart term computed with the
/// Fourier transform in the chart coordinate. The line transform is realized on
/// a periodic box of length 2*pi*pad (pad >= 2) around the chart.
FourierOperator t_quantize_charts(const SymbolExpr& a, double t, const Atlas& atlas, const CircleGrid& grid,
                                  int pad = 2);

/// Op(a) for a homogeneous symbol: mode m is multiplied by a_{sign m}(x) theta(|m|).
FourierOperator op_quantize(const SymbolExpr& a, const CutFunction& theta, const CircleGrid& grid);

/// pi(c): multiplication by a trigonometric loop; block (n, m) = c_{n-m}.
FourierOperator multiplication_operator(const TrigLoop& c, const CircleGrid& grid);

}  // namespace psido
