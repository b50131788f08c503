#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "psido/numerics.hpp"
#include "psido/quantize.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// Raised when an index cannot be read off reliably at the current resolution.
class InconclusiveIndex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Winding of a sampled invertible loop (samples of det, in order around S^1).
int winding_number(std::span<const Complex> det_samples);
/// Winding of det(loop); samples are refined until every phase step is < pi/2.
int winding_number(const TrigLoop& loop);

/// Global sign of the boundary map: index = kIndexSign * (w_- - w_+).
/// Fixed by Op(e^{ix}, 1), whose truncation has one interior kernel vector
/// (mode 0) and two interior cokernel vectors (modes 0 and 1).
inline constexpr int kIndexSign = 1;

struct FredholmOptions {
  double eps_rank = 1e-6;
  double gap_ratio = 1e3;
  /// A near-null singular vector counts when its mass on |n| <= N/2 is >= 1 - this.
  double localization = 0.1;
};

/// dim ker - dim coker of Op(sigma), counting near-null singular vectors localized
/// away from the truncation boundary. Throws InconclusiveIndex without a clear gap.
int fredholm_index_svd(const SymbolExpr& sigma, const CircleGrid& grid, const FredholmOptions& opt = {},
                       const CutFunction& theta = CutFunction());

int analytic_index(const SymbolExpr& sigma);

/// Clutching data: along each half-line of the fiber the angle
///   phi(r) = (pi/2) (1 - S((r - r_a) / (r_b - r_a)))
/// rotates between p_0 = diag(I_k, 0) (at r = 0 and r >= r_b) and the graph
/// projection of the polar part u of sigma(x, sign xi).
struct BottShape {
  double r_a = 0.25;
  double r_b = 0.75;
};

struct BottProjection {
  int k = 1;
  BottShape shape;
  SymbolFunction p_sigma;  // 2k x 2k
  SymbolFunction p_zero;
};

BottProjection bott_projection(const SymbolExpr& sigma, const BottShape& shape = {});

/// sum h(lambda) over the spectrum of Re T_t(p_sigma) minus the same for p_0,
/// h(lambda) = S((lambda - 1/4) / (1/2)); oriented so it matches fredholm_index_svd.
double higson_trace_index(const SymbolExpr& sigma, double t, const CircleGrid& grid, const BottShape& shape = {});

/// Raw trace tr(T_t(p_sigma) - T_t(p_0)); identically zero since tr p_sigma = k.
double higson_raw_trace(const SymbolExpr& sigma, double t, const CircleGrid& grid, const BottShape& shape = {});

/// Orientation of the spectral count relative to the Fredholm index.
inline constexpr int kHigsonOrientation = -1;

struct IndexParams {
  int N = 256;
  int J = 0;
  double eps_rank = 1e-6;
  double r0 = 4.0;
  std::vector<double> t_list{64.0, 128.0, 256.0};
  BottShape shape;
  double round_window = 0.25;
};

struct IndexReport {
  std::string id;
  int k = 1;
  int winding_plus = 0;
  int winding_minus = 0;
  int analytic = 0;
  std::optional<int> fredholm;
  std::string inconclusive;  // empty when the Fredholm count is conclusive
  std::vector<double> t;
  std::vector<double> higson;
  std::optional<int> higson_rounded;  // from the largest admissible t
  bool fredholm_matches_analytic = false;
  bool higson_matches_fredholm = false;
  bool all_agree = false;
  int N = 0;
  double eps_rank = 0.0;

  bool conclusive() const { return fredholm.has_value() && higson_rounded.has_value(); }
};

/// Winding data, SVD index, analytic index and Higson sweep over the t values
/// with r_b t + 2 deg sigma <= N.
IndexReport index_report(const std::string& id, const SymbolExpr& sigma, const IndexParams& params);

}  // namespace psido
