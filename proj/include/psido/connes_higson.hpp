#pragma once

#include "psido/numerics.hpp"
#include "psido/symbols.hpp"

namespace psido {

/// kappa: (0, 1] -> [0, inf), a decreasing homeomorphism with kappa(1) = 0.
class Reparametrization {
 public:
  enum class Kind { Reciprocal, Log };

  /// kappa(v) = 1/v - 1, inverse r -> 1/(1 + r).
  static Reparametrization reciprocal() { return Reparametrization(Kind::Reciprocal); }
  /// kappa(v) = -ln v, inverse r -> e^{-r}.
  static Reparametrization log() { return Reparametrization(Kind::Log); }

  Kind kind() const { return kind_; }
  double operator()(double v) const;
  double inverse(double r) const;

 private:
  explicit Reparametrization(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// u_t = diag m((|n| + offset) / t) (x) I_k with m(0) = 1, m decreasing to 0.
/// The profile m is the inverse of a reparametrization, so pairing a unit with
/// its own kappa makes (f o kappa)(u_t) = diag f((|n| + offset) / t).
class ApproximateUnit {
 public:
  /// m(r) = 1/(1 + r), no offset.
  static ApproximateUnit rational() { return ApproximateUnit(Reparametrization::reciprocal(), 0.0); }
  /// m(r) = e^{-r}, mode offset 1.
  static ApproximateUnit exponential() { return ApproximateUnit(Reparametrization::log(), 1.0); }

  ApproximateUnit(Reparametrization profile, double offset);

  double m(double r) const { return profile_.inverse(r); }
  double offset() const { return offset_; }
  /// The reparametrization matched to this profile.
  const Reparametrization& matched_kappa() const { return profile_; }

  /// Diagonal entry on mode n at parameter t.
  double entry(int n, double t) const;
  FourierOperator at(double t, const CircleGrid& grid) const;

 private:
  Reparametrization profile_;
  double offset_;
};

/// ||[u_t, Op(a)]||.
double quasicentrality_defect(const ApproximateUnit& u, double t, const SymbolExpr& a, const CircleGrid& grid,
                              const CutFunction& theta = CutFunction());

/// Op(d) diag f(kappa(u_t)); f(0) must vanish.
FourierOperator ch_apply(const Profile& f, const SymbolExpr& d, double t, const Reparametrization& kappa,
                         const ApproximateUnit& u, const CircleGrid& grid, const CutFunction& theta = CutFunction());

/// pi(c) diag g(kappa(u_t)) for fiber-constant c; g need only vanish at infinity.
FourierOperator ch_extended_apply(const Profile& g, const SymbolExpr& c, double t, const Reparametrization& kappa,
                                  const ApproximateUnit& u, const CircleGrid& grid);

}  // namespace psido
