#pragma once

#include <map>
#include <string>
#include <vector>

#include "psido/numerics.hpp"

namespace psido {

/// k x k matrix-valued trigonometric polynomial sum_{|n|<=d} C_n e^{inx}.
class TrigLoop {
 public:
  TrigLoop() : TrigLoop(1) {}
  explicit TrigLoop(int k);

  static TrigLoop constant(const Matrix& value);
  static TrigLoop identity(int k);
  /// e^{inx} * value.
  static TrigLoop monomial(int n, const Matrix& value);
  static TrigLoop scalar_monomial(int n, Complex value, int k = 1);
  static TrigLoop from_coefficients(int k, const std::map<int, Matrix>& coefficients);

  int k() const { return k_; }
  /// Largest |n| with a nonzero coefficient (0 for constants and for the zero loop).
  int degree() const { return degree_; }
  Matrix coefficient(int n) const;
  Matrix operator()(double x) const;
  bool is_zero() const;

  TrigLoop adjoint() const;
  TrigLoop& operator+=(const TrigLoop& other);
  TrigLoop& operator*=(Complex alpha);
  friend TrigLoop operator+(TrigLoop a, const TrigLoop& b) { return a += b; }
  friend TrigLoop operator-(TrigLoop a, const TrigLoop& b) { return a += Complex(-1.0) * b; }
  friend TrigLoop operator*(Complex alpha, TrigLoop a) { return a *= alpha; }
  friend TrigLoop operator*(const TrigLoop& a, const TrigLoop& b);

  /// max_x ||C(x)|| over `samples` equispaced points (spectral norm).
  double sup_norm(int samples = 512) const;
  /// Coefficientwise comparison.
  bool approx_equal(const TrigLoop& other, double tol = 1e-14) const;

 private:
  void trim();

  int k_;
  int degree_ = 0;
  std::vector<Matrix> coeffs_;  // index n + degree_
};

enum class ProfileKind {
  PositiveSide,  // 1 for xi > 0, 0 for xi < 0, 1/2 at 0
  NegativeSide,
  Bump,          // 1 - S(2|xi|/R - 1): 1 on |xi| <= R/2, 0 on |xi| >= R
  Step,          // S((|xi| - lo)/(hi - lo))
  Rational,      // 1/(1 + xi^2)
  RationalZero,  // xi^2/(1 + xi^2)
  Gamma,         // gamma_i^s(|xi|) from the dyadic partition
};

std::string to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(const std::string& name);

/// One factor of a radial profile, evaluated at xi / scale.
struct ProfileFactor {
  ProfileKind kind = ProfileKind::Rational;
  double p0 = 0.0;  // Bump: R; Step: lo; Gamma: snapped 1/s
  double p1 = 0.0;  // Step: hi
  int index = 0;    // Gamma: i
  double scale = 1.0;

  double operator()(double xi) const;
  bool is_side() const { return kind == ProfileKind::PositiveSide || kind == ProfileKind::NegativeSide; }
};

/// Real profile rho(xi) = coeff * prod of factors.
class Profile {
 public:
  Profile() = default;
  explicit Profile(double coeff) : coeff_(coeff) {}

  static Profile one() { return Profile(1.0); }
  static Profile positive_side();
  static Profile negative_side();
  static Profile bump(double radius);
  static Profile step(double lo, double hi);
  static Profile rational();
  static Profile rational_zero();
  static Profile gamma(double s, int i);

  double operator()(double xi) const;

  double coeff() const { return coeff_; }
  const std::vector<ProfileFactor>& factors() const { return factors_; }

  Profile dilate(double s) const;
  friend Profile operator*(const Profile& a, const Profile& b);
  friend Profile operator*(double alpha, Profile a) {
    a.coeff_ *= alpha;
    return a;
  }

  bool has_side_factor() const;
  /// Every factor is a side indicator: the profile is order-zero homogeneous.
  bool is_homogeneous() const;
  /// Sup of |xi| on the support (infinity if not compactly supported).
  double support_radius() const;
  bool vanishes_at_infinity() const;

 private:
  Profile& push(ProfileFactor f) {
    factors_.push_back(f);
    return *this;
  }

  double coeff_ = 1.0;
  std::vector<ProfileFactor> factors_;
};

enum class SymbolClass { CompactSupport, HomogeneousZero, Vanishing00, FullC0 };

std::string to_string(SymbolClass c);
SymbolClass symbol_class_from_string(const std::string& name);

struct SymbolTerm {
  TrigLoop loop;
  Profile profile;
};

/// Symbol a(x, xi) = sum_terms C(x) rho(xi) on T*S^1 with M_k values.
class SymbolExpr {
 public:
  SymbolExpr(int k, SymbolClass cls, std::vector<SymbolTerm> terms);

  static SymbolExpr zero(int k, SymbolClass cls);
  /// Order-zero homogeneous symbol with loops a_+ (xi > 0) and a_- (xi < 0).
  static SymbolExpr homogeneous(const TrigLoop& plus, const TrigLoop& minus);
  /// Homogeneous symbol constant along the fibers.
  static SymbolExpr fiber_constant(const TrigLoop& c);
  static SymbolExpr unit(int k);
  /// c(x) rho(xi); the class tag is validated against the profile.
  static SymbolExpr separable(const TrigLoop& c, const Profile& rho, SymbolClass cls);

  int k() const { return k_; }
  SymbolClass symbol_class() const { return cls_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  int degree() const;

  Matrix operator()(double x, double xi) const;

  /// Loops on the two cosphere circles; requires HomogeneousZero.
  TrigLoop plus_loop() const;
  TrigLoop minus_loop() const;
  bool is_fiber_constant() const;

  /// Sampled sup norm of ||a(x, xi)||; for homogeneous symbols max(||a_+||, ||a_-||).
  double sup_norm() const;

  SymbolExpr& operator+=(const SymbolExpr& other);
  SymbolExpr& operator*=(Complex alpha);
  friend SymbolExpr operator+(SymbolExpr a, const SymbolExpr& b) { return a += b; }
  friend SymbolExpr operator-(SymbolExpr a, const SymbolExpr& b) { return a += Complex(-1.0) * b; }
  friend SymbolExpr operator*(Complex alpha, SymbolExpr a) { return a *= alpha; }

 private:
  int k_;
  SymbolClass cls_;
  std::vector<SymbolTerm> terms_;
};

/// a_s(x, xi) = a(x, xi / s).
SymbolExpr dilate(const SymbolExpr& a, double s);
/// g(x, xi) = f(|xi|) a_{sign xi}(x); requires f(0) = 0, f -> 0 at infinity.
SymbolExpr smash(const Profile& f, const SymbolExpr& a);
SymbolExpr pointwise_mul(const SymbolExpr& a, const SymbolExpr& b);
SymbolExpr adjoint(const SymbolExpr& a);

SymbolClass product_class(SymbolClass a, SymbolClass b);
SymbolClass sum_class(SymbolClass a, SymbolClass b);

/// Cutting function theta on [0, inf): theta(0) = 0, theta = 1 on [r0, inf).
class CutFunction {
 public:
  explicit CutFunction(double r0 = 4.0);
  double r0() const { return r0_; }
  double operator()(double r) const { return profile_(r); }
  const Profile& profile() const { return profile_; }

 private:
  double r0_;
  Profile profile_;
};

}  // namespace psido
