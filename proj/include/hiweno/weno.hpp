#pragma once

// One-dimensional ENO/WENO building blocks.
//
// WENO windows hold 2k-1 sliding values centered on cell i. Candidate
// stencil s = 0..k-1 covers window cells s..s+k-1 (left to right), so s = 0
// is the most left-biased one. weno_plus returns the value at x_{i+1/2};
// weno_minus (the mirrored operator) returns the value at x_{i-1/2}.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hiweno {

struct WenoParams {
  double eps = 1e-10;
  double p = 2.0;
};

enum class EdgeSide { Plus, Minus };

template <int K>
struct WenoTables;

template <>
struct WenoTables<2> {
  static constexpr double c[2][2] = {{-1.0 / 2, 3.0 / 2}, {1.0 / 2, 1.0 / 2}};
  static constexpr double d[2] = {1.0 / 3, 2.0 / 3};
};

template <>
struct WenoTables<3> {
  static constexpr double c[3][3] = {{1.0 / 3, -7.0 / 6, 11.0 / 6},
                                     {-1.0 / 6, 5.0 / 6, 1.0 / 3},
                                     {1.0 / 3, 5.0 / 6, -1.0 / 6}};
  static constexpr double d[3] = {1.0 / 10, 6.0 / 10, 3.0 / 10};
};

template <>
struct WenoTables<4> {
  static constexpr double c[4][4] = {{-1.0 / 4, 13.0 / 12, -23.0 / 12, 25.0 / 12},
                                     {1.0 / 12, -5.0 / 12, 13.0 / 12, 1.0 / 4},
                                     {-1.0 / 12, 7.0 / 12, 7.0 / 12, -1.0 / 12},
                                     {1.0 / 4, 13.0 / 12, -5.0 / 12, 1.0 / 12}};
  static constexpr double d[4] = {1.0 / 35, 12.0 / 35, 18.0 / 35, 4.0 / 35};
};

// Smoothness-indicator quadratic forms beta_s = d^T B_s d over the k-1 first
// differences d of stencil s, generated from sum_l dx^(2l-1) int_cell (p^(l))^2.
// Working on differences makes beta vanish exactly for constant data.
template <int K>
struct BetaForms {
  std::array<std::array<std::array<double, K - 1>, K - 1>, K> b{};
};

template <int K>
BetaForms<K> make_beta_forms();

template <int K>
inline const BetaForms<K> kBetaForms = make_beta_forms<K>();

// Edge value at x_{i+1/2} from f[m*stride], m = -(K-1)..K-1.
template <int K>
inline double weno_plus(const double* f, std::ptrdiff_t stride, const WenoParams& prm) {
  constexpr int W = 2 * K - 1;
  double q[W];
  for (int m = 0; m < W; ++m) q[m] = f[(m - (K - 1)) * stride];
  const auto& B = kBetaForms<K>.b;
  double num = 0.0, den = 0.0;
  for (int s = 0; s < K; ++s) {
    double w = 0.0;
    for (int m = 0; m < K; ++m) w += WenoTables<K>::c[s][m] * q[s + m];
    double d[K - 1];
    for (int m = 0; m < K - 1; ++m) d[m] = q[s + m + 1] - q[s + m];
    double beta = 0.0;
    for (int a = 0; a < K - 1; ++a) {
      double row = 0.0;
      for (int b = 0; b < K - 1; ++b) row += B[s][a][b] * d[b];
      beta += row * d[a];
    }
    double e = prm.eps + beta;
    double alpha = WenoTables<K>::d[s] / (prm.p == 2.0 ? e * e : std::pow(e, prm.p));
    num += alpha * w;
    den += alpha;
  }
  return num / den;
}

// Edge value at x_{i-1/2}: the mirrored operator.
template <int K>
inline double weno_minus(const double* f, std::ptrdiff_t stride, const WenoParams& prm) {
  return weno_plus<K>(f, -stride, prm);
}

// Runtime-k wrappers over an explicit window of 2k-1 values.
double weno_reconstruct(std::span<const double> window, EdgeSide side, int k,
                        const WenoParams& prm = {});
std::vector<double> smoothness_indicators(std::span<const double> window, int k);
std::vector<double> nonlinear_weights(std::span<const double> window, int k,
                                      const WenoParams& prm = {});
std::vector<double> candidate_values(std::span<const double> window, int k);
std::vector<double> optimal_weights(int k);

// Checks the tabulated coefficients against polynomial exactness; throws
// std::logic_error on mismatch. Cheap; run once at startup.
void validate_weno_tables();

// --- ENO interpolation -----------------------------------------------------

// Selects a (2k-1)-point stencil inside `window` containing the bracketing
// pair (bracket, bracket+1), growing one node at a time toward the side with
// the smaller |undivided difference|. Ties go to the side with fewer nodes
// relative to the target, then left. Returns the window index of the first node.
int eno_select_stencil(std::span<const double> window, int k, int bracket);

// Lagrange interpolation on the ENO stencil, evaluated at window coordinate
// bracket + 1/2 (the midpoint of the bracketing pair).
double eno_interpolate(std::span<const double> window, int k, int bracket);

namespace detail {
int eno_select(const double* q, int w, int order, int bracket);
const std::vector<double>& eno_midpoint_weights(int k);  // [start offset][m]
}  // namespace detail

// Midpoint value between a[0] and a[stride] from the 4k-4 point window
// a[m*stride], m = -(2k-3)..2k-2.
template <int K>
inline double eno_midpoint(const double* a, std::ptrdiff_t stride) {
  constexpr int L = 2 * K - 3, W = 4 * K - 4, M = 2 * K - 1;
  double q[W];
  for (int m = 0; m < W; ++m) q[m] = a[(m - L) * stride];
  int start = detail::eno_select(q, W, M, L);
  const double* wt = detail::eno_midpoint_weights(K).data() + (start) * M;
  double v = 0.0;
  for (int m = 0; m < M; ++m) v += wt[m] * q[start + m];
  return v;
}

// Central Lagrange midpoint weights for an even number of points.
std::vector<double> central_midpoint_weights(int npoints);

}  // namespace hiweno
