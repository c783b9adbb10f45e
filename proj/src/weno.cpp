#include "hiweno/weno.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hiweno {

namespace {

using Real = long double;

// Coefficients (in powers of x) of the degree-(k-1) polynomials P_m whose
// unit-cell averages over [j, j+1] are delta_{jm}.
std::vector<std::vector<Real>> average_basis(int k) {
  std::vector<std::vector<Real>> a(k, std::vector<Real>(k));
  for (int j = 0; j < k; ++j)
    for (int q = 0; q < k; ++q)
      a[j][q] = (std::pow(Real(j + 1), q + 1) - std::pow(Real(j), q + 1)) / (q + 1);
  // Invert a by Gauss-Jordan with partial pivoting.
  std::vector<std::vector<Real>> inv(k, std::vector<Real>(k, 0));
  for (int i = 0; i < k; ++i) inv[i][i] = 1;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(inv[col], inv[piv]);
    Real d = a[col][col];
    for (int c = 0; c < k; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      Real f = a[r][col];
      for (int c = 0; c < k; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  // Column m of inv holds the monomial coefficients of P_m.
  std::vector<std::vector<Real>> basis(k, std::vector<Real>(k));
  for (int m = 0; m < k; ++m)
    for (int q = 0; q < k; ++q) basis[m][q] = inv[q][m];
  return basis;
}

std::vector<Real> derivative(std::vector<Real> p, int times) {
  for (int t = 0; t < times; ++t) {
    for (std::size_t q = 0; q + 1 < p.size(); ++q) p[q] = p[q + 1] * Real(q + 1);
    if (!p.empty()) p.back() = 0;
  }
  return p;
}

Real integrate_product(const std::vector<Real>& a, const std::vector<Real>& b, Real lo, Real hi) {
  Real s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      int e = static_cast<int>(i + j) + 1;
      s += a[i] * b[j] * (std::pow(hi, e) - std::pow(lo, e)) / e;
    }
  return s;
}

template <int K>
const double* c_row(int s) {
  return WenoTables<K>::c[s];
}

template <int K>
double reconstruct_window(std::span<const double> w, EdgeSide side, const WenoParams& prm) {
  const double* center = w.data() + (K - 1);
  return side == EdgeSide::Plus ? weno_plus<K>(center, 1, prm) : weno_minus<K>(center, 1, prm);
}

void check_window(std::span<const double> window, int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("WENO k must be 2, 3 or 4");
  if (static_cast<int>(window.size()) != 2 * k - 1)
    throw std::invalid_argument("WENO window must hold 2k-1 values");
}

}  // namespace

template <int K>
BetaForms<K> make_beta_forms() {
  BetaForms<K> out;
  auto basis = average_basis(K);
  for (int s = 0; s < K; ++s) {
    // The reconstructed cell i is stencil cell K-1-s.
    Real lo = K - 1 - s, hi = lo + 1;
    Real full[K][K];
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b) {
        full[a][b] = 0;
        for (int l = 1; l < K; ++l)
          full[a][b] += integrate_product(derivative(basis[a], l), derivative(basis[b], l), lo, hi);
      }
    // q_m = q_0 + sum_{r<m} d_r, and the form annihilates constants.
    for (int r = 0; r < K - 1; ++r)
      for (int t = 0; t < K - 1; ++t) {
        Real sum = 0;
        for (int m = r + 1; m < K; ++m)
          for (int n = t + 1; n < K; ++n) sum += full[m][n];
        out.b[s][r][t] = static_cast<double>(sum);
      }
  }
  return out;
}

template BetaForms<2> make_beta_forms<2>();
template BetaForms<3> make_beta_forms<3>();
template BetaForms<4> make_beta_forms<4>();

double weno_reconstruct(std::span<const double> window, EdgeSide side, int k, const WenoParams& prm) {
  check_window(window, k);
  switch (k) {
    case 2: return reconstruct_window<2>(window, side, prm);
    case 3: return reconstruct_window<3>(window, side, prm);
    default: return reconstruct_window<4>(window, side, prm);
  }
}

namespace {
template <int K>
std::vector<double> betas(std::span<const double> q) {
  std::vector<double> out(K);
  const auto& B = kBetaForms<K>.b;
  for (int s = 0; s < K; ++s)
    for (int a = 0; a < K - 1; ++a)
      for (int b = 0; b < K - 1; ++b)
        out[s] += B[s][a][b] * (q[s + a + 1] - q[s + a]) * (q[s + b + 1] - q[s + b]);
  return out;
}

template <int K>
std::vector<double> candidates(std::span<const double> q) {
  std::vector<double> out(K);
  for (int s = 0; s < K; ++s)
    for (int m = 0; m < K; ++m) out[s] += c_row<K>(s)[m] * q[s + m];
  return out;
}
}  // namespace

std::vector<double> smoothness_indicators(std::span<const double> window, int k) {
  check_window(window, k);
  switch (k) {
    case 2: return betas<2>(window);
    case 3: return betas<3>(window);
    default: return betas<4>(window);
  }
}

std::vector<double> candidate_values(std::span<const double> window, int k) {
  check_window(window, k);
  switch (k) {
    case 2: return candidates<2>(window);
    case 3: return candidates<3>(window);
    default: return candidates<4>(window);
  }
}

std::vector<double> optimal_weights(int k) {
  switch (k) {
    case 2: return {WenoTables<2>::d, WenoTables<2>::d + 2};
    case 3: return {WenoTables<3>::d, WenoTables<3>::d + 3};
    case 4: return {WenoTables<4>::d, WenoTables<4>::d + 4};
    default: throw std::invalid_argument("WENO k must be 2, 3 or 4");
  }
}

std::vector<double> nonlinear_weights(std::span<const double> window, int k, const WenoParams& prm) {
  auto beta = smoothness_indicators(window, k);
  auto d = optimal_weights(k);
  std::vector<double> w(k);
  double sum = 0.0;
  for (int s = 0; s < k; ++s) {
    w[s] = d[s] / std::pow(prm.eps + beta[s], prm.p);
    sum += w[s];
  }
  for (double& x : w) x /= sum;
  return w;
}

void validate_weno_tables() {
  for (int k = 2; k <= 4; ++k) {
    auto d = optimal_weights(k);
    double dsum = 0.0;
    for (double x : d) {
      if (!(x > 0)) throw std::logic_error("non-positive optimal weight");
      dsum += x;
    }
    if (std::fabs(dsum - 1.0) > 1e-14) throw std::logic_error("optimal weights do not sum to 1");
    // Cell averages of x^q over [m, m+1] for window cells m = 0..2k-2, the edge at x = k.
    for (int q = 0; q <= 2 * k - 2; ++q) {
      std::vector<double> avg(2 * k - 1);
      for (int m = 0; m < 2 * k - 1; ++m)
        avg[m] = (std::pow(m + 1.0, q + 1) - std::pow(double(m), q + 1)) / (q + 1);
      double exact = std::pow(double(k), q);
      auto cand = candidate_values(avg, k);
      double lin = 0.0;
      for (int s = 0; s < k; ++s) {
        lin += d[s] * cand[s];
        if (q <= k - 1 && std::fabs(cand[s] - exact) > 1e-11 * std::max(1.0, std::fabs(exact)))
          throw std::logic_error("candidate stencil " + std::to_string(s) + " of k=" +
                                 std::to_string(k) + " is not exact for degree " + std::to_string(q));
      }
      if (std::fabs(lin - exact) > 1e-10 * std::max(1.0, std::fabs(exact)))
        throw std::logic_error("optimal combination of k=" + std::to_string(k) +
                               " is not exact for degree " + std::to_string(q));
    }
  }
}

// --- ENO --------------------------------------------------------------------

namespace detail {

int eno_select(const double* q, int w, int order, int bracket) {
  // dd[m][s]: m-th undivided difference over nodes s..s+m.
  double dd[16][16];
  for (int s = 0; s < w; ++s) dd[0][s] = q[s];
  for (int m = 1; m < order; ++m)
    for (int s = 0; s + m < w; ++s) dd[m][s] = dd[m - 1][s + 1] - dd[m - 1][s];
  int l = bracket, r = bracket + 1;
  for (int m = 2; m < order; ++m) {
    bool can_left = l > 0, can_right = r + 1 < w;
    bool go_left;
    if (!can_right) {
      go_left = true;
    } else if (!can_left) {
      go_left = false;
    } else {
      double dl = std::fabs(dd[m][l - 1]), dr = std::fabs(dd[m][l]);
      if (dl != dr) {
        go_left = dl < dr;
      } else {
        int nleft = bracket - l + 1, nright = r - bracket;
        go_left = nleft <= nright;
      }
    }
    if (go_left) --l;
    else ++r;
  }
  return l;
}

namespace {
std::vector<double> build_midpoint_weights(int k) {
  const int L = 2 * k - 3, M = 2 * k - 1;
  std::vector<double> out((L + 1) * M);
  for (int start = 0; start <= L; ++start) {
    for (int m = 0; m < M; ++m) {
      Real xm = start + m, t = L + Real(0.5), w = 1;
      for (int n = 0; n < M; ++n)
        if (n != m) w *= (t - (start + n)) / (xm - (start + n));
      out[start * M + m] = static_cast<double>(w);
    }
  }
  return out;
}
}  // namespace

const std::vector<double>& eno_midpoint_weights(int k) {
  static const std::vector<double> w2 = build_midpoint_weights(2);
  static const std::vector<double> w3 = build_midpoint_weights(3);
  static const std::vector<double> w4 = build_midpoint_weights(4);
  switch (k) {
    case 2: return w2;
    case 3: return w3;
    case 4: return w4;
    default: throw std::invalid_argument("ENO k must be 2, 3 or 4");
  }
}

}  // namespace detail

int eno_select_stencil(std::span<const double> window, int k, int bracket) {
  int w = static_cast<int>(window.size());
  if (k < 2 || k > 4) throw std::invalid_argument("ENO k must be 2, 3 or 4");
  if (w < 2 * k - 1 || w > 16) throw std::invalid_argument("ENO window has the wrong size");
  if (bracket < 0 || bracket + 1 >= w) throw std::invalid_argument("bracket outside window");
  return detail::eno_select(window.data(), w, 2 * k - 1, bracket);
}

double eno_interpolate(std::span<const double> window, int k, int bracket) {
  int start = eno_select_stencil(window, k, bracket);
  const int M = 2 * k - 1;
  Real t = bracket + Real(0.5), v = 0;
  for (int m = 0; m < M; ++m) {
    Real w = 1;
    for (int n = 0; n < M; ++n)
      if (n != m) w *= (t - (start + n)) / Real(m - n);
    v += w * window[start + m];
  }
  return static_cast<double>(v);
}

std::vector<double> central_midpoint_weights(int npoints) {
  if (npoints < 2 || npoints % 2) throw std::invalid_argument("central stencil needs an even size");
  std::vector<double> w(npoints);
  Real t = (npoints - 1) / Real(2);
  for (int m = 0; m < npoints; ++m) {
    Real p = 1;
    for (int n = 0; n < npoints; ++n)
      if (n != m) p *= (t - n) / Real(m - n);
    w[m] = static_cast<double>(p);
  }
  return w;
}

}  // namespace hiweno
