#include "psido/connes_higson.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "psido/quantize.hpp"

namespace psido {

double Reparametrization::operator()(double v) const {
  if (!(v > 0.0) || v > 1.0) throw std::domain_error("kappa: argument outside (0, 1]");
  switch (kind_) {
    case Kind::Reciprocal: return 1.0 / v - 1.0;
    case Kind::Log: return -std::log(v);
  }
  return 0.0;
}

double Reparametrization::inverse(double r) const {
  if (!(r >= 0.0)) throw std::domain_error("kappa inverse: argument must be >= 0");
  switch (kind_) {
    case Kind::Reciprocal: return 1.0 / (1.0 + r);
    case Kind::Log: return std::exp(-r);
  }
  return 0.0;
}

ApproximateUnit::ApproximateUnit(Reparametrization profile, double offset) : profile_(profile), offset_(offset) {
  if (!(offset >= 0.0)) throw std::invalid_argument("ApproximateUnit: offset must be >= 0");
}

double ApproximateUnit::entry(int n, double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("ApproximateUnit: t must be positive");
  return m((std::abs(n) + offset_) / t);
}

FourierOperator ApproximateUnit::at(double t, const CircleGrid& grid) const {
  return FourierOperator::radial_diagonal(grid, [&](int n) { return entry(n, t); });
}

namespace {

// Mode weights h(kappa(u_t)); entries where u_t underflows to 0 take h(inf) = 0.
std::vector<double> functional_calculus(const Profile& h, double t, const Reparametrization& kappa,
                                        const ApproximateUnit& u, const CircleGrid& grid) {
  std::vector<double> w;
  w.reserve(grid.modes());
  for (int n = -grid.N(); n <= grid.N(); ++n) {
    const double v = u.entry(n, t);
    w.push_back(v > 0.0 ? h(kappa(v)) : 0.0);
  }
  return w;
}

// X diag(w), w indexed by mode.
FourierOperator scale_columns(FourierOperator x, const std::vector<double>& w) {
  const CircleGrid& g = x.grid();
  for (int n = -g.N(); n <= g.N(); ++n)
    for (int b = 0; b < g.k(); ++b) x.matrix().col(g.index(n, b)) *= w[n + g.N()];
  return x;
}

}  // namespace

double quasicentrality_defect(const ApproximateUnit& u, double t, const SymbolExpr& a, const CircleGrid& grid,
                              const CutFunction& theta) {
  const FourierOperator A = op_quantize(a, theta, grid);
  std::vector<double> w;
  for (int n = -grid.N(); n <= grid.N(); ++n) w.push_back(u.entry(n, t));
  // [U, A] = U A - A U with U diagonal.
  FourierOperator UA = scale_columns(A.adjoint(), w).adjoint();
  return operator_norm(UA - scale_columns(A, w));
}

FourierOperator ch_apply(const Profile& f, const SymbolExpr& d, double t, const Reparametrization& kappa,
                         const ApproximateUnit& u, const CircleGrid& grid, const CutFunction& theta) {
  if (f(0.0) != 0.0) throw std::invalid_argument("ch_apply: f(0) must vanish");
  return scale_columns(op_quantize(d, theta, grid), functional_calculus(f, t, kappa, u, grid));
}

FourierOperator ch_extended_apply(const Profile& g, const SymbolExpr& c, double t, const Reparametrization& kappa,
                                  const ApproximateUnit& u, const CircleGrid& grid) {
  if (c.symbol_class() != SymbolClass::HomogeneousZero || !c.is_fiber_constant()) {
    throw std::invalid_argument("ch_extended_apply: symbol must be fiber-constant");
  }
  return scale_columns(multiplication_operator(c.plus_loop(), grid), functional_calculus(g, t, kappa, u, grid));
}

}  // namespace psido
