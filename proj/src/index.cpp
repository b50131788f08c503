#include "psido/index.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "psido/partition.hpp"

namespace psido {

// ------------------------------------------------------------------ winding

int winding_number(std::span<const Complex> det_samples) {
  const std::size_t n = det_samples.size();
  if (n < 3) throw std::invalid_argument("winding_number: need at least 3 samples");
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Complex a = det_samples[j];
    const Complex b = det_samples[(j + 1) % n];
    if (a == Complex{} || b == Complex{}) throw std::invalid_argument("winding_number: loop is not invertible");
    const double step = std::arg(b / a);
    if (std::abs(step) >= kPi * (1.0 - 1e-12)) throw std::invalid_argument("winding_number: loop is undersampled");
    total += step;
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

namespace {

Complex det_of(const Matrix& m) { return m.rows() == 1 ? m(0, 0) : m.determinant(); }

}  // namespace

int winding_number(const TrigLoop& loop) {
  for (int samples = std::max(256, 64 * (loop.degree() + 1)); samples <= (1 << 16); samples *= 2) {
    std::vector<Complex> det(samples);
    double scale = 0.0;
    for (int j = 0; j < samples; ++j) {
      det[j] = det_of(loop(kTwoPi * j / samples));
      scale = std::max(scale, std::abs(det[j]));
    }
    bool fine = true;
    for (int j = 0; j < samples; ++j) {
      if (!(std::abs(det[j]) > 1e-10 * scale)) throw std::invalid_argument("winding_number: loop is not invertible");
      if (std::abs(std::arg(det[(j + 1) % samples] / det[j])) >= kPi / 2) fine = false;
    }
    if (fine) return winding_number(det);
  }
  throw std::invalid_argument("winding_number: loop is undersampled at 2^16 points");
}

// ------------------------------------------------------------ Fredholm index

namespace {

// Number of directions of span(Q) carrying mass >= 1 - tol on the rows in
// `interior`; throws when some direction is split between interior and boundary.
int localized_count(const Matrix& Q, const std::vector<int>& interior, double tol, const char* side) {
  if (Q.cols() == 0) return 0;
  Matrix restricted(interior.size(), Q.cols());
  for (std::size_t r = 0; r < interior.size(); ++r) restricted.row(r) = Q.row(interior[r]);
  const Eigen::VectorXd s = singular_values(restricted);
  int count = 0;
  for (int i = 0; i < s.size(); ++i) {
    const double mass = s(i) * s(i);
    if (mass >= 1.0 - tol) {
      ++count;
    } else if (mass > tol) {
      throw InconclusiveIndex(std::string("near-null ") + side + " vector is not localized (interior mass " +
                              std::to_string(mass) + ")");
    }
  }
  // Directions beyond the row count of `restricted` carry no interior mass.
  return count;
}

}  // namespace

int fredholm_index_svd(const SymbolExpr& sigma, const CircleGrid& grid, const FredholmOptions& opt,
                       const CutFunction& theta) {
  if (sigma.symbol_class() != SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("fredholm_index_svd: symbol must be homogeneous");
  }
  if (!(opt.eps_rank > 0.0)) throw std::invalid_argument("fredholm_index_svd: eps_rank must be positive");
  winding_number(sigma.plus_loop());  // invertibility checks
  winding_number(sigma.minus_loop());

  const int N = grid.N();
  const int needed = static_cast<int>(std::ceil(theta.r0())) + 2 * sigma.degree();
  if (N / 2 < needed) {
    throw InconclusiveIndex("N = " + std::to_string(N) + " too small: need N/2 >= r0 + 2 deg sigma = " +
                            std::to_string(needed));
  }

  const Matrix A = op_quantize(sigma, theta, grid).matrix();
  const Svd dec = svd(A, true);
  const Eigen::VectorXd& s = dec.values;
  const int n = static_cast<int>(s.size());
  int c = 0;
  while (c < n && s(n - 1 - c) < opt.eps_rank) ++c;
  if (c > 0 && c < n) {
    const double smallest_kept = s(n - 1 - c);
    const double largest_null = s(n - c);
    if (largest_null > 0.0 && smallest_kept / largest_null < opt.gap_ratio) {
      throw InconclusiveIndex("no spectral gap at eps_rank: ratio " + std::to_string(smallest_kept / largest_null));
    }
  }
  if (c == 0 && s(n - 1) < opt.gap_ratio * opt.eps_rank) {
    throw InconclusiveIndex("smallest singular value " + std::to_string(s(n - 1)) + " sits at the rank threshold");
  }

  std::vector<int> interior;
  for (int m = -N / 2; m <= N / 2; ++m)
    for (int b = 0; b < grid.k(); ++b) interior.push_back(grid.index(m, b));

  const int ker = localized_count(dec.V.rightCols(c), interior, opt.localization, "right");
  const int coker = localized_count(dec.U.rightCols(c), interior, opt.localization, "left");
  return ker - coker;
}

int analytic_index(const SymbolExpr& sigma) {
  if (sigma.symbol_class() != SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("analytic_index: symbol must be homogeneous");
  }
  return kIndexSign * (winding_number(sigma.minus_loop()) - winding_number(sigma.plus_loop()));
}

// ----------------------------------------------------------- Bott projection

namespace {

Matrix polar_part(const Matrix& a) {
  if (a.rows() == 1) {
    const double r = std::abs(a(0, 0));
    if (!(r > 0.0)) throw std::invalid_argument("bott_projection: symbol is not invertible");
    return Matrix::Constant(1, 1, a(0, 0) / r);
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (!(svd.singularValues().minCoeff() > 0.0)) throw std::invalid_argument("bott_projection: symbol is not invertible");
  return svd.matrixU() * svd.matrixV().adjoint();
}

double clutch_angle(double r, const BottShape& shape) {
  return 0.5 * kPi * (1.0 - smooth_step((r - shape.r_a) / (shape.r_b - shape.r_a)));
}

Matrix clutched(const Matrix& u, double phi) {
  const int k = static_cast<int>(u.rows());
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const Matrix I = Matrix::Identity(k, k);
  const Matrix v1 = c * c * I + s * s * u;
  const Matrix v2 = c * s * (u.adjoint() - I);
  Matrix p(2 * k, 2 * k);
  p.topLeftCorner(k, k) = v1 * v1.adjoint();
  p.topRightCorner(k, k) = v1 * v2.adjoint();
  p.bottomLeftCorner(k, k) = v2 * v1.adjoint();
  p.bottomRightCorner(k, k) = v2 * v2.adjoint();
  return p;
}

}  // namespace

BottProjection bott_projection(const SymbolExpr& sigma, const BottShape& shape) {
  if (sigma.symbol_class() != SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("bott_projection: symbol must be homogeneous");
  }
  if (!(shape.r_a >= 0.0) || !(shape.r_b > shape.r_a)) throw std::invalid_argument("bott_projection: need 0 <= r_a < r_b");
  winding_number(sigma.plus_loop());
  winding_number(sigma.minus_loop());
  const int k = sigma.k();
  const TrigLoop plus = sigma.plus_loop();
  const TrigLoop minus = sigma.minus_loop();
  Matrix p0 = Matrix::Zero(2 * k, 2 * k);
  p0.topLeftCorner(k, k) = Matrix::Identity(k, k);

  BottProjection out;
  out.k = k;
  out.shape = shape;
  out.p_zero = [p0](double, double) { return p0; };
  out.p_sigma = [plus, minus, shape, p0](double x, double xi) -> Matrix {
    const double phi = clutch_angle(std::abs(xi), shape);
    if (xi == 0.0 || phi == 0.0) return p0;
    return clutched(polar_part(xi > 0.0 ? plus(x) : minus(x)), phi);
  };
  return out;
}

// -------------------------------------------------------------- Higson index

namespace {

double spectral_count(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (int i = 0; i < eig.eigenvalues().size(); ++i) total += smooth_step((eig.eigenvalues()(i) - 0.25) / 0.5);
  return total;
}

double count_of(const SymbolFunction& p, double t, const CircleGrid& grid) {
  const Matrix T = t_quantize_sampled(p, t, grid).matrix();
  const Matrix H = 0.5 * (T + T.adjoint());
  if (H.isDiagonal(0.0)) {
    double total = 0.0;
    for (int i = 0; i < H.rows(); ++i) total += smooth_step((H(i, i).real() - 0.25) / 0.5);
    return total;
  }
  return spectral_count(H);
}

CircleGrid doubled(const CircleGrid& grid) { return CircleGrid(grid.N(), 2 * grid.k(), grid.J()); }

}  // namespace

double higson_trace_index(const SymbolExpr& sigma, double t, const CircleGrid& grid, const BottShape& shape) {
  if (!(t > 0.0)) throw std::invalid_argument("higson_trace_index: t must be positive");
  if (sigma.k() != grid.k()) throw std::invalid_argument("higson_trace_index: grid k does not match symbol");
  const BottProjection b = bott_projection(sigma, shape);
  const CircleGrid g2 = doubled(grid);
  return kHigsonOrientation * (count_of(b.p_sigma, t, g2) - count_of(b.p_zero, t, g2));
}

double higson_raw_trace(const SymbolExpr& sigma, double t, const CircleGrid& grid, const BottShape& shape) {
  const BottProjection b = bott_projection(sigma, shape);
  const CircleGrid g2 = doubled(grid);
  return (t_quantize_sampled(b.p_sigma, t, g2).matrix() - t_quantize_sampled(b.p_zero, t, g2).matrix())
      .trace()
      .real();
}

// ------------------------------------------------------------------ report

IndexReport index_report(const std::string& id, const SymbolExpr& sigma, const IndexParams& params) {
  IndexReport r;
  r.id = id;
  r.k = sigma.k();
  r.N = params.N;
  r.eps_rank = params.eps_rank;
  r.winding_plus = winding_number(sigma.plus_loop());
  r.winding_minus = winding_number(sigma.minus_loop());
  r.analytic = analytic_index(sigma);

  const CircleGrid grid(params.N, sigma.k(), params.J);
  const CutFunction theta(params.r0);
  FredholmOptions opt;
  opt.eps_rank = params.eps_rank;
  try {
    r.fredholm = fredholm_index_svd(sigma, grid, opt, theta);
  } catch (const InconclusiveIndex& e) {
    r.inconclusive = e.what();
  }

  for (double t : params.t_list) {
    if (params.shape.r_b * t + 2 * sigma.degree() > params.N) continue;
    r.t.push_back(t);
    r.higson.push_back(higson_trace_index(sigma, t, grid, params.shape));
  }
  if (r.higson.empty()) {
    if (r.inconclusive.empty()) r.inconclusive = "no t in the sweep satisfies r_b t + 2 deg sigma <= N";
  } else {
    const double last = r.higson.back();
    const double nearest = std::round(last);
    if (std::abs(last - nearest) <= params.round_window) {
      r.higson_rounded = static_cast<int>(nearest);
    } else if (r.inconclusive.empty()) {
      r.inconclusive = "Higson count " + std::to_string(last) + " not within " +
                       std::to_string(params.round_window) + " of an integer";
    }
  }
  r.fredholm_matches_analytic = r.fredholm && *r.fredholm == r.analytic;
  r.higson_matches_fredholm = r.fredholm && r.higson_rounded && *r.higson_rounded == *r.fredholm;
  r.all_agree = r.fredholm_matches_analytic && r.higson_matches_fredholm;
  return r;
}

}  // namespace psido
