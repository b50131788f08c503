#include "psido/partition.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace psido {

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double snap_inverse_s(double s) {
  if (!(s > 0.0) || s > 1.0) {
    throw std::invalid_argument("dyadic partition: s must lie in (0, 1], got " + std::to_string(s));
  }
  return std::max(1.0, std::round(2.0 / s) / 2.0);
}

double dyadic_cut(double inverse_s, int i) {
  if (i == 0) return inverse_s - 1.0;
  if (i > 0) return inverse_s + (i - 1);
  return -inverse_s + (i + 1);
}

namespace {

double gamma_squared_raw(double inverse_s, int i, double x) {
  if (!(x > 0.0)) return 0.0;
  const double u = std::log2(x);
  const double v = smooth_step(u - dyadic_cut(inverse_s, i - 1)) - smooth_step(u - dyadic_cut(inverse_s, i));
  return v > 0.0 ? v : 0.0;
}

}  // namespace

double dyadic_gamma(double inverse_s, int i, double x) { return std::sqrt(gamma_squared_raw(inverse_s, i, x)); }

DyadicPartition::DyadicPartition(double s, int L) : s_(s), inv_s_(snap_inverse_s(s)), L_(L) {
  if (L_ < 2) throw std::invalid_argument("dyadic partition: L must be >= 2");
}

double DyadicPartition::cut(int i) const { return dyadic_cut(inv_s_, i); }

double DyadicPartition::gamma_squared(int i, double x) const {
  if (i < -L_ || i > L_) {
    throw std::out_of_range("dyadic partition: index " + std::to_string(i) + " outside [-L, L]");
  }
  return gamma_squared_raw(inv_s_, i, x);
}

double DyadicPartition::gamma(int i, double x) const { return std::sqrt(gamma_squared(i, x)); }

double DyadicPartition::covered_lo() const { return std::exp2(cut(-L_ - 1) + 1.0); }
double DyadicPartition::covered_hi() const { return std::exp2(cut(L_)); }

DyadicPartition build_partition(double s, int L) { return DyadicPartition(s, L); }

double eval_gamma(const DyadicPartition& p, int i, double x) { return p.gamma(i, x); }

}  // namespace psido
