#include "psido/inverse_ch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "psido/quantize.hpp"

namespace psido {

BlockOperator::BlockOperator(int L, const CircleGrid& grid) : L_(L), grid_(grid) {
  if (L < 0) throw std::invalid_argument("BlockOperator: L must be >= 0");
}

FourierOperator BlockOperator::block(int i, int j) const {
  auto it = blocks_.find({i, j});
  return it == blocks_.end() ? FourierOperator(grid_) : it->second;
}

void BlockOperator::set(int i, int j, FourierOperator x) {
  if (!(x.grid() == grid_)) throw std::invalid_argument("BlockOperator: block grid mismatch");
  if (std::abs(i) > L_ || std::abs(j) > L_) throw std::out_of_range("BlockOperator: index outside [-L, L]");
  if (x.max_abs() == 0.0) {
    blocks_.erase({i, j});
    return;
  }
  if (std::abs(i - j) >= 2) {
    throw std::invalid_argument("BlockOperator: nonzero block (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") off the band");
  }
  blocks_.insert_or_assign({i, j}, std::move(x));
}

bool BlockOperator::is_banded() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& kv) { return std::abs(kv.first.first - kv.first.second) <= 1; });
}

BlockOperator BlockOperator::adjoint() const {
  BlockOperator out(L_, grid_);
  for (const auto& [ij, x] : blocks_) out.blocks_.insert_or_assign({ij.second, ij.first}, x.adjoint());
  return out;
}

BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
  if (a.L_ != b.L_ || !(a.grid_ == b.grid_)) throw std::invalid_argument("BlockOperator: shape mismatch");
  BlockOperator out = a;
  for (const auto& [ij, x] : b.blocks_) out.set(ij.first, ij.second, out.block(ij.first, ij.second) - x);
  return out;
}

Matrix BlockOperator::assemble(int* first_index) const {
  if (blocks_.empty()) {
    if (first_index) *first_index = 0;
    return Matrix::Zero(0, 0);
  }
  int lo = L_, hi = -L_;
  for (const auto& [ij, x] : blocks_) {
    lo = std::min({lo, ij.first, ij.second});
    hi = std::max({hi, ij.first, ij.second});
  }
  const int d = grid_.dim();
  Matrix out = Matrix::Zero((hi - lo + 1) * d, (hi - lo + 1) * d);
  for (const auto& [ij, x] : blocks_) out.block((ij.first - lo) * d, (ij.second - lo) * d, d, d) = x.matrix();
  if (first_index) *first_index = lo;
  return out;
}

double BlockOperator::norm() const { return blocks_.empty() ? 0.0 : operator_norm(assemble()); }

std::map<int, Vector> BlockOperator::apply_to_slot(int i, const Vector& f) const {
  if (f.size() != grid_.dim()) throw std::invalid_argument("apply_to_slot: vector length mismatch");
  std::map<int, Vector> out;
  for (const auto& [ij, x] : blocks_) {
    if (ij.second != i) continue;
    out[ij.first] = x * f;
  }
  return out;
}

namespace {

FourierOperator weighted_t1(const SymbolExpr& a, const Profile& w, const CircleGrid& grid) {
  return t_quantize(smash(w, a), 1.0, grid);
}

int window_i_max(const CircleGrid& grid) { return static_cast<int>(std::floor(std::log2(grid.N()))) + 1; }

}  // namespace

BlockOperator i0_block_operator(const SymbolExpr& a, const DyadicPartition& p, int L, const CircleGrid& grid) {
  if (L < 2) throw std::invalid_argument("i0_block_operator: L must be >= 2");
  if (p.s() != 1.0) throw std::invalid_argument("i0_block_operator: partition must have s = 1");
  BlockOperator out(L, grid);
  for (int i = -L; i <= L; ++i) {
    for (int j = std::max(-L, i - 1); j <= std::min(L, i + 1); ++j) {
      const Profile w = Profile::gamma(1.0, 0) * Profile::gamma(1.0, j - i);
      out.set(i, j, t_quantize(smash(w, a), std::exp2(i), grid));
    }
  }
  return out;
}

BlockOperator psi_s(const SymbolExpr& a, double s, const CutFunction& theta, int L, const CircleGrid& grid) {
  BlockOperator out(L, grid);
  if (s == 0.0) {
    out.set(0, 0, op_quantize(a, theta, grid));
    return out;
  }
  for (int i = -L; i <= L; ++i) {
    for (int j = std::max(-L, i - 1); j <= std::min(L, i + 1); ++j) {
      const Profile w = Profile::gamma(s, i) * Profile::gamma(s, j) * theta.profile();
      out.set(i, j, weighted_t1(a, w, grid));
    }
  }
  return out;
}

double equ1_defect(const SymbolExpr& a, double s, const Vector& f, const CutFunction& theta,
                   const CircleGrid& grid) {
  if (f.size() != grid.dim()) throw std::invalid_argument("equ1_defect: test vector length mismatch");
  const Profile w = Profile::gamma(s, 0) * Profile::gamma(s, 0) * theta.profile();
  return (weighted_t1(a, w, grid) * f - op_quantize(a, theta, grid) * f).norm();
}

double equ2_defect(const SymbolExpr& a, double s, int i, int j, const Vector& f, const CutFunction& theta,
                   const CircleGrid& grid) {
  if (i == 0 && j == 0) throw std::invalid_argument("equ2_defect: (i, j) = (0, 0) is the equ1 block");
  if (std::abs(i - j) > 1) throw std::invalid_argument("equ2_defect: need |i - j| <= 1");
  if (f.size() != grid.dim()) throw std::invalid_argument("equ2_defect: test vector length mismatch");
  const Profile w = Profile::gamma(s, i) * Profile::gamma(s, j) * theta.profile();
  return (weighted_t1(a, w, grid) * f).norm();
}

bool band_excluded(double s, int i, int j, int band) {
  const double inv = snap_inverse_s(s);
  // supp gamma_i = [2^{c_{i-1}}, 2^{c_i + 1}]
  const double lo = std::exp2(std::max(dyadic_cut(inv, i - 1), dyadic_cut(inv, j - 1)));
  const double hi = std::exp2(std::min(dyadic_cut(inv, i), dyadic_cut(inv, j)) + 1.0);
  return lo >= band || hi <= 1.0 || lo >= hi;
}

double theta_block_discrepancy(const SymbolExpr& a, int i, int j, const CutFunction& theta, const CircleGrid& grid) {
  const Profile w = Profile::gamma(1.0, i) * Profile::gamma(1.0, j);
  return operator_norm(weighted_t1(a, w * theta.profile(), grid) - weighted_t1(a, w, grid));
}

double translation_block_discrepancy(const SymbolExpr& a, int i, int j, const CircleGrid& grid) {
  const Profile w0 = Profile::gamma(1.0, 0) * Profile::gamma(1.0, j - i);
  const Profile w = Profile::gamma(1.0, i) * Profile::gamma(1.0, j);
  const FourierOperator d = t_quantize(smash(w0, a), std::exp2(i), grid) - weighted_t1(a, w, grid);
  return d.max_abs() == 0.0 ? 0.0 : operator_norm(d);
}

std::vector<EndpointReport> endpoint_defects(const SymbolExpr& a, const std::vector<int>& L_list, int K,
                                             const CircleGrid& grid, const CutFunction& theta) {
  if (K < 0 || K > grid.N()) throw std::invalid_argument("endpoint_defect: K outside [0, N]");
  int L_max = 0;
  for (int L : L_list) {
    if (L < 2) throw std::invalid_argument("endpoint_defect: L must be >= 2");
    L_max = std::max(L_max, L);
  }
  // D_ij does not depend on L; evaluate every block once.
  struct BlockDefect {
    int i, j;
    double full, quotient;
  };
  std::vector<BlockDefect> defects;
  const int i_max = std::max(L_max + 1, window_i_max(grid));
  for (int i = -i_max; i <= i_max; ++i) {
    for (int j = i - 1; j <= i + 1; ++j) {
      const Profile w = Profile::gamma(1.0, i) * Profile::gamma(1.0, j);
      const Profile w0 = Profile::gamma(1.0, 0) * Profile::gamma(1.0, j - i);
      const FourierOperator d =
          weighted_t1(a, w * theta.profile(), grid) - t_quantize(smash(w0, a), std::exp2(i), grid);
      if (d.max_abs() == 0.0) continue;
      defects.push_back({i, j, operator_norm(d), compact_tail_norm(d, K)});
    }
  }
  std::vector<EndpointReport> out;
  for (int L : L_list) {
    EndpointReport r;
    r.L = L;
    r.K = K;
    for (const auto& b : defects) {
      if (std::abs(b.i) <= L && std::abs(b.j) <= L) {
        r.theta_region = std::max(r.theta_region, b.full);
        r.quotient_defect = std::max(r.quotient_defect, b.quotient);
      } else {
        r.truncation_tail = std::max(r.truncation_tail, b.full);
      }
    }
    r.aggregate = r.quotient_defect + r.truncation_tail;
    out.push_back(r);
  }
  return out;
}

EndpointReport endpoint_defect(const SymbolExpr& a, int L, int K, const CircleGrid& grid, const CutFunction& theta) {
  return endpoint_defects(a, {L}, K, grid, theta).front();
}

double psi_self_adjoint_defect(const SymbolExpr& a, double s, const CutFunction& theta, int L,
                               const CircleGrid& grid) {
  const BlockOperator P = psi_s(a, s, theta, L, grid);
  const BlockOperator D = P - P.adjoint();
  double out = 0.0;
  for (const auto& [ij, x] : D.blocks()) out = std::max(out, compact_tail_norm(x, grid.N() / 2));
  return out;
}

}  // namespace psido
