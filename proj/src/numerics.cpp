#include "psido/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psido/fft.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace psido {

CircleGrid::CircleGrid(int N, int k, int J) : N_(N), k_(k), J_(J == 0 ? 4 * N + 4 : J) {
  if (N_ < 1) throw std::invalid_argument("CircleGrid: N must be >= 1");
  if (k_ < 1) throw std::invalid_argument("CircleGrid: k must be >= 1");
  if (J_ < 4 * N_ + 4) {
    throw std::invalid_argument("CircleGrid: J = " + std::to_string(J_) + " violates J >= 4N + 4 = " +
                                std::to_string(4 * N_ + 4));
  }
  if (J_ % 2 != 0) throw std::invalid_argument("CircleGrid: J must be even");
}

CircleGrid CircleGrid::with_modes(int N) const { return CircleGrid(N, k_, std::max(J_, 4 * N + 4)); }

FourierOperator::FourierOperator(const CircleGrid& grid)
    : grid_(grid), mat_(Matrix::Zero(grid.dim(), grid.dim())) {}

FourierOperator::FourierOperator(const CircleGrid& grid, Matrix entries) : grid_(grid), mat_(std::move(entries)) {
  if (mat_.rows() != grid_.dim() || mat_.cols() != grid_.dim()) {
    throw std::invalid_argument("FourierOperator: matrix dimension does not match grid");
  }
  if (!is_finite()) throw std::invalid_argument("FourierOperator: non-finite entries");
}

FourierOperator FourierOperator::identity(const CircleGrid& grid) {
  return FourierOperator(grid, Matrix::Identity(grid.dim(), grid.dim()));
}

Matrix FourierOperator::block(int n, int m) const {
  const int k = grid_.k();
  return mat_.block(grid_.index(n), grid_.index(m), k, k);
}

void FourierOperator::add_to_block(int n, int m, const Matrix& value) {
  const int k = grid_.k();
  mat_.block(grid_.index(n), grid_.index(m), k, k) += value;
}

FourierOperator FourierOperator::adjoint() const { return FourierOperator(grid_, mat_.adjoint()); }

FourierOperator FourierOperator::compress(const CircleGrid& target) const {
  if (target.k() != grid_.k() || target.N() > grid_.N()) {
    throw std::invalid_argument("FourierOperator::compress: target window is not contained in source");
  }
  const int offset = (grid_.N() - target.N()) * grid_.k();
  return FourierOperator(target, mat_.block(offset, offset, target.dim(), target.dim()));
}

FourierOperator FourierOperator::embed(const CircleGrid& target) const {
  if (target.k() != grid_.k() || target.N() < grid_.N()) {
    throw std::invalid_argument("FourierOperator::embed: target window does not contain source");
  }
  FourierOperator out(target);
  const int offset = (target.N() - grid_.N()) * grid_.k();
  out.mat_.block(offset, offset, grid_.dim(), grid_.dim()) = mat_;
  return out;
}

double FourierOperator::max_abs() const { return mat_.size() == 0 ? 0.0 : mat_.cwiseAbs().maxCoeff(); }

bool FourierOperator::is_finite() const { return mat_.allFinite(); }

FourierOperator& FourierOperator::operator+=(const FourierOperator& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("FourierOperator: grid mismatch");
  mat_ += other.mat_;
  return *this;
}

FourierOperator& FourierOperator::operator-=(const FourierOperator& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("FourierOperator: grid mismatch");
  mat_ -= other.mat_;
  return *this;
}

FourierOperator& FourierOperator::operator*=(Complex alpha) {
  mat_ *= alpha;
  return *this;
}

FourierOperator operator*(const FourierOperator& a, const FourierOperator& b) {
  if (!(a.grid_ == b.grid_)) throw std::invalid_argument("FourierOperator: grid mismatch");
  return FourierOperator(a.grid_, a.mat_ * b.mat_);
}

Vector operator*(const FourierOperator& a, const Vector& v) {
  if (v.size() != a.grid_.dim()) throw std::invalid_argument("FourierOperator: vector length mismatch");
  return a.mat_ * v;
}

std::vector<Complex> dft_spectrum(std::span<const Complex> samples) {
  std::vector<Complex> out(samples.size());
  fft::forward(samples, out);
  const double scale = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= scale;
  return out;
}

std::vector<Complex> fourier_coefficients(const CircleGrid& grid, std::span<const Complex> samples) {
  if (static_cast<int>(samples.size()) != grid.J()) {
    throw std::invalid_argument("fourier_coefficients: expected " + std::to_string(grid.J()) + " samples, got " +
                                std::to_string(samples.size()));
  }
  const auto spectrum = dft_spectrum(samples);
  const int J = grid.J();
  std::vector<Complex> coeffs(grid.modes());
  for (int n = -grid.N(); n <= grid.N(); ++n) coeffs[n + grid.N()] = spectrum[(n + J) % J];
  return coeffs;
}

std::vector<Complex> inverse_fourier(const CircleGrid& grid, std::span<const Complex> coefficients) {
  if (static_cast<int>(coefficients.size()) != grid.modes()) {
    throw std::invalid_argument("inverse_fourier: expected 2N+1 coefficients");
  }
  const int J = grid.J();
  std::vector<Complex> spectrum(J, Complex{});
  for (int n = -grid.N(); n <= grid.N(); ++n) spectrum[(n + J) % J] = coefficients[n + grid.N()];
  std::vector<Complex> samples(J);
  fft::backward(spectrum, samples);
  return samples;
}

// LAPACK divide-and-conquer (zgesdd). Eigen 3.4.0's BDCSVD trips an internal
// assertion (perturbCol0) on some of the banded matrices produced here.
Svd svd(const Matrix& m, bool vectors) {
  Svd out;
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  out.values.resize(std::min(rows, cols));
  if (m.size() == 0) return out;
  Matrix a = m;  // overwritten
  Matrix vt;
  if (vectors) {
    out.U.resize(rows, rows);
    vt.resize(cols, cols);
  }
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, vectors ? 'A' : 'N', rows, cols, a.data(), rows, out.values.data(),
                     vectors ? out.U.data() : nullptr, std::max<lapack_int>(1, rows), vectors ? vt.data() : nullptr,
                     std::max<lapack_int>(1, cols));
  if (info != 0) throw std::runtime_error("svd: zgesdd failed with info = " + std::to_string(info));
  if (vectors) out.V = vt.adjoint();
  return out;
}

Eigen::VectorXd singular_values(const Matrix& m) { return svd(m, false).values; }

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.isZero(0.0)) return 0.0;
  return singular_values(m)(0);
}

double operator_norm(const FourierOperator& x) { return operator_norm(x.matrix()); }

namespace {

// Columns (or rows) belonging to modes |n| > K form two contiguous ranges.
Matrix tail_columns(const Matrix& m, const CircleGrid& g, int K) {
  const int k = g.k();
  const int width = (g.N() - K) * k;
  Matrix out(m.rows(), 2 * width);
  out.leftCols(width) = m.leftCols(width);
  out.rightCols(width) = m.rightCols(width);
  return out;
}

void check_cutoff(const CircleGrid& g, int K) {
  if (K > g.N()) throw std::invalid_argument("tail norm: K exceeds the mode cutoff N");
  if (K < 0) throw std::invalid_argument("tail norm: K must be nonnegative");
}

}  // namespace

double right_tail_norm(const FourierOperator& x, int K) {
  check_cutoff(x.grid(), K);
  if (K == x.grid().N()) return 0.0;
  return operator_norm(tail_columns(x.matrix(), x.grid(), K));
}

double compact_tail_norm(const FourierOperator& x, int K) {
  check_cutoff(x.grid(), K);
  if (K == x.grid().N()) return 0.0;
  const double right = operator_norm(tail_columns(x.matrix(), x.grid(), K));
  const Matrix adj = x.matrix().adjoint();
  const double left = operator_norm(tail_columns(adj, x.grid(), K));
  return std::max(right, left);
}

int svd_kernel_dim(const FourierOperator& x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("svd_kernel_dim: eps must be positive");
  const Eigen::VectorXd s = singular_values(x.matrix());
  return static_cast<int>((s.array() < eps).count());
}

double loglog_slope(std::span<const double> params, std::span<const double> values) {
  if (params.size() != values.size() || params.size() < 2) {
    throw std::invalid_argument("loglog_slope: need at least two matching points");
  }
  const double n = static_cast<double>(params.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > 0.0) || !(values[i] > 0.0)) {
      throw std::invalid_argument("loglog_slope: values must be positive");
    }
    const double lx = std::log(params[i]);
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace psido
