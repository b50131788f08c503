#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace psido {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Discretization of L^2(S^1) (x) C^k: J equispaced samples x_j = 2*pi*j/J,
/// Fourier modes |n| <= N, and k x k matrix coefficients.
///
/// J >= 4N + 4 keeps products of degree-2N trigonometric polynomials
/// alias-free, so entry formulas built from sampled symbols stay exact.
class CircleGrid {
 public:
  /// J = 0 selects the smallest admissible sample count 4N + 4.
  explicit CircleGrid(int N, int k = 1, int J = 0);

  int N() const { return N_; }
  int k() const { return k_; }
  int J() const { return J_; }
  int modes() const { return 2 * N_ + 1; }
  int dim() const { return modes() * k_; }

  /// Row/column of (mode n, block component b).
  int index(int n, int b = 0) const { return (n + N_) * k_ + b; }
  double sample(int j) const { return kTwoPi * j / J_; }

  /// Same sampling with a different mode cutoff (used for padded products).
  CircleGrid with_modes(int N) const;

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

 private:
  int N_;
  int k_;
  int J_;
};

/// Dense operator on the truncated space span{e^{inx}} (x) C^k; finite model
/// for elements of M(K (x) M_k) and, through tail norms, of K (x) M_k.
class FourierOperator {
 public:
  explicit FourierOperator(const CircleGrid& grid);
  FourierOperator(const CircleGrid& grid, Matrix entries);

  static FourierOperator identity(const CircleGrid& grid);
  /// Diagonal operator with entry w(|n|) on every block component of mode n.
  template <class F>
  static FourierOperator radial_diagonal(const CircleGrid& grid, F&& w) {
    FourierOperator out(grid);
    for (int n = -grid.N(); n <= grid.N(); ++n) {
      const double v = w(std::abs(n));
      for (int b = 0; b < grid.k(); ++b) out.mat_(grid.index(n, b), grid.index(n, b)) = v;
    }
    return out;
  }

  const CircleGrid& grid() const { return grid_; }
  const Matrix& matrix() const { return mat_; }
  Matrix& matrix() { return mat_; }

  /// k x k block at (mode n, mode m).
  Matrix block(int n, int m) const;
  void add_to_block(int n, int m, const Matrix& value);

  FourierOperator adjoint() const;
  /// Compression P X P onto a smaller mode window |n| <= grid.N().
  FourierOperator compress(const CircleGrid& target) const;
  /// Embedding into a larger mode window (zero outside the original one).
  FourierOperator embed(const CircleGrid& target) const;

  double max_abs() const;
  bool is_finite() const;

  FourierOperator& operator+=(const FourierOperator& other);
  FourierOperator& operator-=(const FourierOperator& other);
  FourierOperator& operator*=(Complex alpha);

  friend FourierOperator operator+(FourierOperator a, const FourierOperator& b) { return a += b; }
  friend FourierOperator operator-(FourierOperator a, const FourierOperator& b) { return a -= b; }
  friend FourierOperator operator*(Complex alpha, FourierOperator a) { return a *= alpha; }
  friend FourierOperator operator*(const FourierOperator& a, const FourierOperator& b);
  /// Action on a vector of length grid.dim().
  friend Vector operator*(const FourierOperator& a, const Vector& v);

 private:
  CircleGrid grid_;
  Matrix mat_;
};

/// Coefficients c_n, |n| <= N, of the trigonometric interpolant of J samples
/// (c_n = J^{-1} sum_j f(x_j) e^{-i n x_j}); index n + N.
std::vector<Complex> fourier_coefficients(const CircleGrid& grid, std::span<const Complex> samples);
/// J samples of sum_{|n|<=N} c_n e^{inx}.
std::vector<Complex> inverse_fourier(const CircleGrid& grid, std::span<const Complex> coefficients);

/// Full DFT spectrum (all J frequencies, FFT ordering, normalized by 1/J).
std::vector<Complex> dft_spectrum(std::span<const Complex> samples);

/// Singular values in descending order; with `vectors`, m = U diag(values) V^*
/// with square unitary U and V.
struct Svd {
  Eigen::VectorXd values;
  Matrix U;
  Matrix V;
};
Svd svd(const Matrix& m, bool vectors = false);

Eigen::VectorXd singular_values(const Matrix& m);
double operator_norm(const Matrix& m);
double operator_norm(const FourierOperator& x);

/// max(||X (I - P_K)||, ||(I - P_K) X||), P_K the projection onto |n| <= K.
double compact_tail_norm(const FourierOperator& x, int K);
/// ||X (I - P_K)|| only (columns |m| > K).
double right_tail_norm(const FourierOperator& x, int K);

/// Number of singular values strictly below eps.
int svd_kernel_dim(const FourierOperator& x, double eps);

/// Least-squares slope of log(values) against log(params).
double loglog_slope(std::span<const double> params, std::span<const double> values);

}  // namespace psido
