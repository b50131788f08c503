#include "psido/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psido/partition.hpp"

namespace psido {

// ---------------------------------------------------------------- TrigLoop

TrigLoop::TrigLoop(int k) : k_(k), coeffs_{Matrix::Zero(k, k)} {
  if (k < 1) throw std::invalid_argument("TrigLoop: k must be >= 1");
}

TrigLoop TrigLoop::constant(const Matrix& value) { return monomial(0, value); }

TrigLoop TrigLoop::identity(int k) { return constant(Matrix::Identity(k, k)); }

TrigLoop TrigLoop::monomial(int n, const Matrix& value) {
  if (value.rows() != value.cols()) throw std::invalid_argument("TrigLoop: coefficient must be square");
  return from_coefficients(static_cast<int>(value.rows()), {{n, value}});
}

TrigLoop TrigLoop::scalar_monomial(int n, Complex value, int k) {
  return monomial(n, value * Matrix::Identity(k, k));
}

TrigLoop TrigLoop::from_coefficients(int k, const std::map<int, Matrix>& coefficients) {
  TrigLoop out(k);
  int d = 0;
  for (const auto& [n, c] : coefficients) {
    if (c.rows() != k || c.cols() != k) throw std::invalid_argument("TrigLoop: coefficient has wrong size");
    d = std::max(d, std::abs(n));
  }
  out.degree_ = d;
  out.coeffs_.assign(2 * d + 1, Matrix::Zero(k, k));
  for (const auto& [n, c] : coefficients) out.coeffs_[n + d] += c;
  out.trim();
  return out;
}

Matrix TrigLoop::coefficient(int n) const {
  if (std::abs(n) > degree_) return Matrix::Zero(k_, k_);
  return coeffs_[n + degree_];
}

Matrix TrigLoop::operator()(double x) const {
  Matrix out = Matrix::Zero(k_, k_);
  for (int n = -degree_; n <= degree_; ++n) {
    const Matrix& c = coeffs_[n + degree_];
    if (!c.isZero(0.0)) out += std::polar(1.0, n * x) * c;
  }
  return out;
}

bool TrigLoop::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Matrix& c) { return c.isZero(0.0); });
}

void TrigLoop::trim() {
  int d = degree_;
  while (d > 0 && coeffs_.front().isZero(0.0) && coeffs_.back().isZero(0.0)) {
    coeffs_.erase(coeffs_.begin());
    coeffs_.pop_back();
    --d;
  }
  degree_ = d;
}

TrigLoop TrigLoop::adjoint() const {
  TrigLoop out(k_);
  out.degree_ = degree_;
  out.coeffs_.assign(2 * degree_ + 1, Matrix::Zero(k_, k_));
  for (int n = -degree_; n <= degree_; ++n) out.coeffs_[n + degree_] = coeffs_[-n + degree_].adjoint();
  return out;
}

TrigLoop& TrigLoop::operator+=(const TrigLoop& other) {
  if (other.k_ != k_) throw std::invalid_argument("TrigLoop: size mismatch");
  const int d = std::max(degree_, other.degree_);
  std::vector<Matrix> sum(2 * d + 1, Matrix::Zero(k_, k_));
  for (int n = -degree_; n <= degree_; ++n) sum[n + d] += coeffs_[n + degree_];
  for (int n = -other.degree_; n <= other.degree_; ++n) sum[n + d] += other.coeffs_[n + other.degree_];
  coeffs_ = std::move(sum);
  degree_ = d;
  trim();
  return *this;
}

TrigLoop& TrigLoop::operator*=(Complex alpha) {
  for (auto& c : coeffs_) c *= alpha;
  trim();
  return *this;
}

TrigLoop operator*(const TrigLoop& a, const TrigLoop& b) {
  if (a.k_ != b.k_) throw std::invalid_argument("TrigLoop: size mismatch");
  TrigLoop out(a.k_);
  const int d = a.degree_ + b.degree_;
  out.degree_ = d;
  out.coeffs_.assign(2 * d + 1, Matrix::Zero(a.k_, a.k_));
  for (int p = -a.degree_; p <= a.degree_; ++p) {
    const Matrix& cp = a.coeffs_[p + a.degree_];
    if (cp.isZero(0.0)) continue;
    for (int q = -b.degree_; q <= b.degree_; ++q) {
      out.coeffs_[p + q + d] += cp * b.coeffs_[q + b.degree_];
    }
  }
  out.trim();
  return out;
}

double TrigLoop::sup_norm(int samples) const {
  double best = 0.0;
  for (int j = 0; j < samples; ++j) {
    const Matrix v = (*this)(kTwoPi * j / samples);
    best = std::max(best, k_ == 1 ? std::abs(v(0, 0)) : operator_norm(v));
  }
  return best;
}

bool TrigLoop::approx_equal(const TrigLoop& other, double tol) const {
  if (other.k_ != k_) return false;
  const int d = std::max(degree_, other.degree_);
  for (int n = -d; n <= d; ++n) {
    if ((coefficient(n) - other.coefficient(n)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

// ----------------------------------------------------------------- Profile

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::PositiveSide: return "positive_side";
    case ProfileKind::NegativeSide: return "negative_side";
    case ProfileKind::Bump: return "bump";
    case ProfileKind::Step: return "step";
    case ProfileKind::Rational: return "rational";
    case ProfileKind::RationalZero: return "rational_zero";
    case ProfileKind::Gamma: return "gamma";
  }
  return "unknown";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  for (auto kind : {ProfileKind::PositiveSide, ProfileKind::NegativeSide, ProfileKind::Bump, ProfileKind::Step,
                    ProfileKind::Rational, ProfileKind::RationalZero, ProfileKind::Gamma}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown profile kind '" + name + "'");
}

double ProfileFactor::operator()(double xi) const {
  const double v = xi / scale;
  switch (kind) {
    case ProfileKind::PositiveSide: return v > 0.0 ? 1.0 : (v < 0.0 ? 0.0 : 0.5);
    case ProfileKind::NegativeSide: return v < 0.0 ? 1.0 : (v > 0.0 ? 0.0 : 0.5);
    case ProfileKind::Bump: return 1.0 - smooth_step(2.0 * std::abs(v) / p0 - 1.0);
    case ProfileKind::Step: return smooth_step((std::abs(v) - p0) / (p1 - p0));
    case ProfileKind::Rational: return 1.0 / (1.0 + v * v);
    case ProfileKind::RationalZero: return v * v / (1.0 + v * v);
    case ProfileKind::Gamma: return dyadic_gamma(p0, index, std::abs(v));
  }
  return 0.0;
}

Profile Profile::positive_side() { return Profile().push({ProfileKind::PositiveSide}); }
Profile Profile::negative_side() { return Profile().push({ProfileKind::NegativeSide}); }

Profile Profile::bump(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump profile: radius must be positive");
  return Profile().push({ProfileKind::Bump, radius});
}

Profile Profile::step(double lo, double hi) {
  if (!(hi > lo) || lo < 0.0) throw std::invalid_argument("step profile: need 0 <= lo < hi");
  return Profile().push({ProfileKind::Step, lo, hi});
}

Profile Profile::rational() { return Profile().push({ProfileKind::Rational}); }
Profile Profile::rational_zero() { return Profile().push({ProfileKind::RationalZero}); }

Profile Profile::gamma(double s, int i) {
  return Profile().push({ProfileKind::Gamma, snap_inverse_s(s), 0.0, i});
}

double Profile::operator()(double xi) const {
  double v = coeff_;
  for (const auto& f : factors_) {
    if (v == 0.0) break;
    v *= f(xi);
  }
  return v;
}

Profile Profile::dilate(double s) const {
  if (!(s > 0.0)) throw std::invalid_argument("dilate: s must be positive");
  Profile out = *this;
  for (auto& f : out.factors_) {
    if (!f.is_side()) f.scale *= s;
  }
  return out;
}

Profile operator*(const Profile& a, const Profile& b) {
  Profile out = a;
  out.coeff_ *= b.coeff_;
  out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
  return out;
}

bool Profile::has_side_factor() const {
  return std::any_of(factors_.begin(), factors_.end(), [](const ProfileFactor& f) { return f.is_side(); });
}

bool Profile::is_homogeneous() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const ProfileFactor& f) { return f.is_side(); });
}

double Profile::support_radius() const {
  if (coeff_ == 0.0) return 0.0;
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : factors_) {
    if (f.kind == ProfileKind::Bump) r = std::min(r, f.p0 * f.scale);
    if (f.kind == ProfileKind::Gamma) r = std::min(r, std::exp2(dyadic_cut(f.p0, f.index) + 1.0) * f.scale);
  }
  return r;
}

bool Profile::vanishes_at_infinity() const {
  if (coeff_ == 0.0) return true;
  return std::any_of(factors_.begin(), factors_.end(), [](const ProfileFactor& f) {
    return f.kind == ProfileKind::Bump || f.kind == ProfileKind::Gamma || f.kind == ProfileKind::Rational;
  });
}

// ------------------------------------------------------------- SymbolExpr

std::string to_string(SymbolClass c) {
  switch (c) {
    case SymbolClass::CompactSupport: return "compact_support";
    case SymbolClass::HomogeneousZero: return "homogeneous";
    case SymbolClass::Vanishing00: return "vanishing00";
    case SymbolClass::FullC0: return "full_c0";
  }
  return "unknown";
}

SymbolClass symbol_class_from_string(const std::string& name) {
  for (auto c : {SymbolClass::CompactSupport, SymbolClass::HomogeneousZero, SymbolClass::Vanishing00,
                 SymbolClass::FullC0}) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown symbol class '" + name + "'");
}

namespace {

void validate_term(const SymbolTerm& term, SymbolClass cls) {
  const Profile& p = term.profile;
  if (p.coeff() == 0.0 || term.loop.is_zero()) return;
  switch (cls) {
    case SymbolClass::HomogeneousZero:
      if (!p.is_homogeneous()) throw std::invalid_argument("homogeneous symbol: profile is not order-zero homogeneous");
      break;
    case SymbolClass::CompactSupport:
      if (!std::isfinite(p.support_radius())) {
        throw std::invalid_argument("compactly supported symbol: profile has unbounded support");
      }
      break;
    case SymbolClass::Vanishing00:
      if (p(0.0) != 0.0) throw std::invalid_argument("C_00 symbol: profile does not vanish at the zero section");
      if (!p.vanishes_at_infinity()) throw std::invalid_argument("C_00 symbol: profile does not vanish at infinity");
      break;
    case SymbolClass::FullC0:
      if (!p.vanishes_at_infinity()) throw std::invalid_argument("C_0 symbol: profile does not vanish at infinity");
      break;
  }
}

int rank_of(SymbolClass c) {
  switch (c) {
    case SymbolClass::HomogeneousZero: return 0;
    case SymbolClass::FullC0: return 1;
    case SymbolClass::Vanishing00: return 2;
    case SymbolClass::CompactSupport: return 3;
  }
  return 0;
}

}  // namespace

SymbolClass product_class(SymbolClass a, SymbolClass b) { return rank_of(a) >= rank_of(b) ? a : b; }

SymbolClass sum_class(SymbolClass a, SymbolClass b) {
  if (a == b) return a;
  if (a == SymbolClass::HomogeneousZero || b == SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("sum of a homogeneous symbol and a C_0 symbol lies in neither class");
  }
  return SymbolClass::FullC0;
}

SymbolExpr::SymbolExpr(int k, SymbolClass cls, std::vector<SymbolTerm> terms)
    : k_(k), cls_(cls), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.loop.k() != k_) throw std::invalid_argument("SymbolExpr: term has wrong matrix size");
    validate_term(t, cls_);
  }
}

SymbolExpr SymbolExpr::zero(int k, SymbolClass cls) { return SymbolExpr(k, cls, {}); }

SymbolExpr SymbolExpr::homogeneous(const TrigLoop& plus, const TrigLoop& minus) {
  if (plus.k() != minus.k()) throw std::invalid_argument("homogeneous symbol: loop sizes differ");
  if (plus.approx_equal(minus, 0.0)) return fiber_constant(plus);
  return SymbolExpr(plus.k(), SymbolClass::HomogeneousZero,
                    {{plus, Profile::positive_side()}, {minus, Profile::negative_side()}});
}

SymbolExpr SymbolExpr::fiber_constant(const TrigLoop& c) {
  return SymbolExpr(c.k(), SymbolClass::HomogeneousZero, {{c, Profile::one()}});
}

SymbolExpr SymbolExpr::unit(int k) { return fiber_constant(TrigLoop::identity(k)); }

SymbolExpr SymbolExpr::separable(const TrigLoop& c, const Profile& rho, SymbolClass cls) {
  return SymbolExpr(c.k(), cls, {{c, rho}});
}

int SymbolExpr::degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.loop.degree());
  return d;
}

Matrix SymbolExpr::operator()(double x, double xi) const {
  Matrix out = Matrix::Zero(k_, k_);
  for (const auto& t : terms_) {
    const double w = t.profile(xi);
    if (w != 0.0) out += w * t.loop(x);
  }
  return out;
}

TrigLoop SymbolExpr::plus_loop() const {
  if (cls_ != SymbolClass::HomogeneousZero) throw std::invalid_argument("plus_loop: symbol is not homogeneous");
  TrigLoop out(k_);
  for (const auto& t : terms_) out += Complex(t.profile(1.0)) * t.loop;
  return out;
}

TrigLoop SymbolExpr::minus_loop() const {
  if (cls_ != SymbolClass::HomogeneousZero) throw std::invalid_argument("minus_loop: symbol is not homogeneous");
  TrigLoop out(k_);
  for (const auto& t : terms_) out += Complex(t.profile(-1.0)) * t.loop;
  return out;
}

bool SymbolExpr::is_fiber_constant() const {
  return cls_ == SymbolClass::HomogeneousZero && plus_loop().approx_equal(minus_loop());
}

double SymbolExpr::sup_norm() const {
  if (cls_ == SymbolClass::HomogeneousZero) return std::max(plus_loop().sup_norm(), minus_loop().sup_norm());
  // Fiber samples: dense near the origin, logarithmic out to 1e4, both signs.
  std::vector<double> xis{0.0};
  for (int j = 0; j <= 400; ++j) {
    const double v = std::pow(10.0, -3.0 + 7.0 * j / 400.0);
    xis.push_back(v);
    xis.push_back(-v);
  }
  for (int j = 1; j <= 200; ++j) {
    xis.push_back(4.0 * j / 200.0);
    xis.push_back(-4.0 * j / 200.0);
  }
  double best = 0.0;
  for (int i = 0; i < 128; ++i) {
    const double x = kTwoPi * i / 128;
    for (double xi : xis) {
      const Matrix v = (*this)(x, xi);
      best = std::max(best, k_ == 1 ? std::abs(v(0, 0)) : operator_norm(v));
    }
  }
  return best;
}

SymbolExpr& SymbolExpr::operator+=(const SymbolExpr& other) {
  if (other.k_ != k_) throw std::invalid_argument("SymbolExpr: size mismatch");
  cls_ = sum_class(cls_, other.cls_);
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

SymbolExpr& SymbolExpr::operator*=(Complex alpha) {
  for (auto& t : terms_) t.loop *= alpha;
  return *this;
}

SymbolExpr dilate(const SymbolExpr& a, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("dilate: s must be positive");
  std::vector<SymbolTerm> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({t.loop, t.profile.dilate(s)});
  return SymbolExpr(a.k(), a.symbol_class(), std::move(terms));
}

SymbolExpr smash(const Profile& f, const SymbolExpr& a) {
  if (a.symbol_class() != SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("smash: second argument must be a homogeneous symbol");
  }
  if (f.has_side_factor()) throw std::invalid_argument("smash: radial profile must not depend on sign(xi)");
  if (f(0.0) != 0.0) throw std::invalid_argument("smash: radial profile must vanish at 0");
  if (!f.vanishes_at_infinity()) throw std::invalid_argument("smash: radial profile must vanish at infinity");
  std::vector<SymbolTerm> terms;
  for (const auto& t : a.terms()) terms.push_back({t.loop, f * t.profile});
  return SymbolExpr(a.k(), SymbolClass::Vanishing00, std::move(terms));
}

SymbolExpr pointwise_mul(const SymbolExpr& a, const SymbolExpr& b) {
  if (a.k() != b.k()) throw std::invalid_argument("pointwise_mul: matrix sizes differ");
  std::vector<SymbolTerm> terms;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) terms.push_back({ta.loop * tb.loop, ta.profile * tb.profile});
  }
  return SymbolExpr(a.k(), product_class(a.symbol_class(), b.symbol_class()), std::move(terms));
}

SymbolExpr adjoint(const SymbolExpr& a) {
  std::vector<SymbolTerm> terms;
  for (const auto& t : a.terms()) terms.push_back({t.loop.adjoint(), t.profile});
  return SymbolExpr(a.k(), a.symbol_class(), std::move(terms));
}

CutFunction::CutFunction(double r0) : r0_(r0), profile_(Profile::step(0.0, r0)) {
  if (!(r0 > 0.0)) throw std::invalid_argument("CutFunction: r0 must be positive");
}

}  // namespace psido
