#include "psido/quantize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "psido/fft.hpp"
#include "psido/partition.hpp"

namespace psido {

namespace {

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("quantization parameter t must be positive");
}

void check_k(int k, const CircleGrid& grid) {
  if (k != grid.k()) throw std::invalid_argument("symbol matrix size does not match grid k");
}

// Adds weight * (loop coefficients) to column m: block (m + q, m) += w C_q.
void add_loop_column(FourierOperator& out, const TrigLoop& loop, int m, Complex weight) {
  const int N = out.grid().N();
  const int d = loop.degree();
  for (int q = -d; q <= d; ++q) {
    const int n = m + q;
    if (n < -N || n > N) continue;
    const Matrix c = loop.coefficient(q);
    if (c.isZero(0.0)) continue;
    out.add_to_block(n, m, weight * c);
  }
}

}  // namespace

// ------------------------------------------------------------------ Atlas

double Chart::phi(double y) const {
  if (whole_circle) return 1.0;
  if (std::abs(y) >= half_width) return 0.0;
  return 1.0 - smooth_step((std::abs(y) - phi_flat) / phi_ramp);
}

double Chart::psi(double y) const {
  if (whole_circle) return 1.0;
  if (std::abs(y) >= half_width) return 0.0;
  return 1.0 - smooth_step((std::abs(y) - psi_flat) / psi_ramp);
}

Atlas::Atlas(std::vector<Chart> charts) : charts_(std::move(charts)) {
  if (charts_.empty()) throw std::invalid_argument("Atlas: no charts");
}

Atlas Atlas::two_arcs() {
  // Overlaps are the arcs pi/4 < |x| < 3pi/4. phi ramps over the middle third of
  // an overlap, psi over the next sixth, so psi phi = phi and supp psi sits
  // strictly inside the arc. The same radial shape serves both charts since
  // S(u) + S(1 - u) = 1.
  Chart c;
  c.half_width = 3.0 * kPi / 4.0;
  c.phi_flat = 5.0 * kPi / 12.0;
  c.phi_ramp = kPi / 6.0;
  c.psi_flat = 7.0 * kPi / 12.0;
  c.psi_ramp = kPi / 12.0;
  Chart c1 = c;
  c1.center = 0.0;
  Chart c2 = c;
  c2.center = kPi;
  return Atlas({c1, c2});
}

Atlas Atlas::trivial() {
  Chart c;
  c.whole_circle = true;
  return Atlas({c});
}

namespace {

double wrap_to_pi(double y) {
  double r = std::remainder(y, kTwoPi);
  if (r >= kPi) r -= kTwoPi;
  return r;
}

}  // namespace

void Atlas::validate(int samples) const {
  for (const auto& c : charts_) {
    if (c.whole_circle) {
      if (charts_.size() != 1) throw std::invalid_argument("Atlas: a whole-circle chart must be the only chart");
      continue;
    }
    if (!(c.half_width > 0.0) || c.half_width >= kPi) {
      throw std::invalid_argument("Atlas: each chart must be an arc of length < 2*pi");
    }
    if (!(c.phi_ramp > 0.0) || !(c.psi_ramp > 0.0)) throw std::invalid_argument("Atlas: ramps must be positive");
    if (c.phi_flat + c.phi_ramp > c.psi_flat + 1e-15) {
      throw std::invalid_argument("Atlas: psi must equal 1 on the support of phi");
    }
    if (c.psi_flat + c.psi_ramp >= c.half_width) {
      throw std::invalid_argument("Atlas: supp psi must lie inside the chart");
    }
  }
  for (int j = 0; j < samples; ++j) {
    const double x = kTwoPi * j / samples;
    double total = 0.0;
    for (const auto& c : charts_) {
      const double y = wrap_to_pi(x - c.center);
      const double phi = c.phi(y);
      const double psi = c.psi(y);
      if (phi < 0.0) throw std::invalid_argument("Atlas: phi must be nonnegative");
      if (std::abs(psi * phi - phi) > 1e-13) throw std::invalid_argument("Atlas: psi phi != phi");
      total += phi;
    }
    if (std::abs(total - 1.0) > 1e-13) {
      throw std::invalid_argument("Atlas: partition functions do not sum to 1 at x = " + std::to_string(x));
    }
  }
}

// ------------------------------------------------------------ quantizers

FourierOperator t_quantize(const SymbolExpr& a, double t, const CircleGrid& grid) {
  check_t(t);
  check_k(a.k(), grid);
  FourierOperator out(grid);
  const int N = grid.N();
  for (const auto& term : a.terms()) {
    for (int m = -N; m <= N; ++m) {
      const double w = term.profile(m / t);
      if (w != 0.0) add_loop_column(out, term.loop, m, w);
    }
  }
  return out;
}

FourierOperator t_quantize_sampled(const SymbolFunction& a, double t, const CircleGrid& grid) {
  check_t(t);
  const int N = grid.N();
  const int J = grid.J();
  const int k = grid.k();
  FourierOperator out(grid);
  std::vector<std::vector<Complex>> samples(k * k, std::vector<Complex>(J));
  for (int m = -N; m <= N; ++m) {
    const double xi = m / t;
    for (int j = 0; j < J; ++j) {
      const Matrix v = a(grid.sample(j), xi);
      if (v.rows() != k || v.cols() != k) throw std::invalid_argument("t_quantize_sampled: symbol size mismatch");
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) samples[r * k + c][j] = v(r, c);
    }
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const auto spectrum = dft_spectrum(samples[r * k + c]);
        for (int n = -N; n <= N; ++n) {
          out.matrix()(grid.index(n, r), grid.index(m, c)) = spectrum[((n - m) % J + J) % J];
        }
      }
    }
  }
  return out;
}

FourierOperator t_quantize_charts(const SymbolExpr& a, double t, const Atlas& atlas, const CircleGrid& grid,
                                  int pad) {
  check_t(t);
  check_k(a.k(), grid);
  if (pad < 2) throw std::invalid_argument("t_quantize_charts: pad must be >= 2");
  atlas.validate();
  const int N = grid.N();
  const int J = grid.J();
  const int M = pad * J;
  const double h = kTwoPi / J;
  if (N + a.degree() >= J / 2) throw std::invalid_argument("t_quantize_charts: symbol degree aliases on the grid");

  FourierOperator out(grid);
  std::vector<Complex> box(M), spec(M), work(M), circle(J);

  // Frequencies of the box transform: bin q carries xi = q_signed / pad.
  std::vector<std::vector<double>> weights;
  for (const auto& term : a.terms()) {
    std::vector<double> w(M);
    for (int q = 0; q < M; ++q) {
      const int qs = q < M / 2 ? q : q - M;
      w[q] = term.profile((static_cast<double>(qs) / pad) / t);
    }
    weights.push_back(std::move(w));
  }

  for (const auto& chart : atlas.charts()) {
    const double shift = chart.center / h;
    const int center_idx = static_cast<int>(std::lround(shift));
    if (std::abs(shift - center_idx) > 1e-9) {
      throw std::invalid_argument("t_quantize_charts: chart centre must be a grid point");
    }

    // phi on the box, y_j = (j - M/2) h; zero outside the chart.
    for (int j = 0; j < M; ++j) {
      const int l = j - M / 2;
      const bool inside = chart.whole_circle ? (l >= -J / 2 && l < J / 2) : std::abs(l * h) < chart.half_width;
      box[j] = inside ? chart.phi(l * h) : 0.0;
    }
    fft::forward(box, spec);

    // Circle sample i sits at box index j(i); psi weight there.
    std::vector<int> box_index(J);
    std::vector<double> psi(J);
    for (int i = 0; i < J; ++i) {
      int l = (i - center_idx) % J;
      if (l < -J / 2) l += J;
      if (l >= J / 2) l -= J;
      box_index[i] = l + M / 2;
      const bool inside = chart.whole_circle || std::abs(l * h) < chart.half_width;
      psi[i] = inside ? chart.psi(l * h) : 0.0;
    }

    for (int m = -N; m <= N; ++m) {
      const Complex phase = std::polar(1.0, m * chart.center) * (((m * pad) % 2 == 0) ? 1.0 : -1.0);
      const int s = ((m * pad) % M + M) % M;
      for (std::size_t ti = 0; ti < a.terms().size(); ++ti) {
        const auto& term = a.terms()[ti];
        const auto& w = weights[ti];
        bool any = false;
        for (int q = 0; q < M; ++q) {
          const double wq = w[q];
          work[q] = wq == 0.0 ? Complex{} : wq * spec[(q - s + M) % M];
          any = any || wq != 0.0;
        }
        if (!any) continue;
        fft::backward(work, box);
        for (int i = 0; i < J; ++i) circle[i] = psi[i] == 0.0 ? Complex{} : psi[i] * box[box_index[i]] * phase / double(M);
        const auto coeffs = dft_spectrum(circle);
        const int d = term.loop.degree();
        for (int q = -d; q <= d; ++q) {
          const Matrix c = term.loop.coefficient(q);
          if (c.isZero(0.0)) continue;
          for (int n = -N; n <= N; ++n) {
            out.add_to_block(n, m, coeffs[((n - q) % J + J) % J] * c);
          }
        }
      }
    }
  }
  return out;
}

FourierOperator op_quantize(const SymbolExpr& a, const CutFunction& theta, const CircleGrid& grid) {
  if (a.symbol_class() != SymbolClass::HomogeneousZero) {
    throw std::invalid_argument("op_quantize: symbol must be order-zero homogeneous, got " +
                                to_string(a.symbol_class()));
  }
  check_k(a.k(), grid);
  const TrigLoop plus = a.plus_loop();
  const TrigLoop minus = a.minus_loop();
  FourierOperator out(grid);
  for (int m = -grid.N(); m <= grid.N(); ++m) {
    const double w = theta(std::abs(m));
    if (w == 0.0) continue;
    if (m > 0) {
      add_loop_column(out, plus, m, w);
    } else if (m < 0) {
      add_loop_column(out, minus, m, w);
    } else {
      add_loop_column(out, Complex(0.5) * (plus + minus), m, w);
    }
  }
  return out;
}

FourierOperator multiplication_operator(const TrigLoop& c, const CircleGrid& grid) {
  check_k(c.k(), grid);
  if (c.degree() > grid.N()) {
    throw std::invalid_argument("multiplication_operator: loop degree " + std::to_string(c.degree()) +
                                " exceeds N = " + std::to_string(grid.N()));
  }
  FourierOperator out(grid);
  for (int m = -grid.N(); m <= grid.N(); ++m) add_loop_column(out, c, m, 1.0);
  return out;
}

}  // namespace psido
