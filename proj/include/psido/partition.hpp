#pragma once

namespace psido {

/// Smooth step S(u) = e(u) / (e(u) + e(1 - u)), e(u) = exp(-1/u) for u > 0.
/// S = 0 on u <= 0, S = 1 on u >= 1, S(u) + S(1 - u) = 1.
double smooth_step(double u);

/// Dyadic family {gamma_i^s} on (0, inf) with sum_i (gamma_i^s)^2 = 1.
///
/// Squared bumps telescope on the u = log2(x) axis:
///   (gamma_i^s)^2(2^u) = S(u - c_{i-1}) - S(u - c_i),
/// with cuts c_{-1} = -1/s, c_0 = 1/s - 1, c_i = 1/s + i - 1 (i >= 1) and
/// c_{-i} = -1/s - (i - 1) (i >= 1). For s = 1 this is c_i = i, so
/// supp gamma_0 = [1/2, 2] and gamma_i(x) = gamma_0(x / 2^i). For s < 1,
/// gamma_0^s has plateau [2^{1-1/s}, 2^{1/s-1}] and support [2^{-1/s}, 2^{1/s}].
class DyadicPartition {
 public:
  /// 1/s is snapped to the nearest half-integer.
  DyadicPartition(double s, int L);

  double s() const { return s_; }
  /// Snapped value of 1/s.
  double inverse_s() const { return inv_s_; }
  int L() const { return L_; }

  double cut(int i) const;
  double gamma_squared(int i, double x) const;
  /// Throws std::out_of_range when |i| > L.
  double gamma(int i, double x) const;

  /// Interval [lo, hi] of x on which sum_{|i|<=L} gamma_i^2 = 1 holds.
  double covered_lo() const;
  double covered_hi() const;

 private:
  double s_;
  double inv_s_;
  int L_;
};

DyadicPartition build_partition(double s, int L);
double eval_gamma(const DyadicPartition& p, int i, double x);

/// Range-free evaluation of gamma_i^s given the snapped 1/s.
double dyadic_gamma(double inverse_s, int i, double x);
double dyadic_cut(double inverse_s, int i);
double snap_inverse_s(double s);

}  // namespace psido
