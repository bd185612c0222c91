#pragma once

// Independent reference computations for the tests. Everything here is
// written from the definitions in __float128 and shares no code with the
// library beyond the Matrix type used to pass data in.

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "saff/rng.hpp"

namespace oracle {

using Q = __float128;
using QMat = std::vector<std::vector<Q>>;

inline QMat to_q(const Eigen::MatrixXd& a) {
  QMat m(static_cast<std::size_t>(a.rows()), std::vector<Q>(static_cast<std::size_t>(a.cols())));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  }
  return m;
}

inline QMat mul(const QMat& a, const QMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  QMat c(n, std::vector<Q>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

inline QMat transpose(const QMat& a) {
  QMat t(a[0].size(), std::vector<Q>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, decreasing.
inline std::vector<Q> sym_eigenvalues(QMat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Q off = 0, diag = 0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a[i][i] * a[i][i];
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off <= Q(1e-66) * diag || off == 0) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        const Q theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const Q t = (theta >= 0 ? 1 : -1) / (fabsq(theta) + sqrtq(theta * theta + 1));
        const Q c = 1 / sqrtq(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Q akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Q apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<Q> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), [](Q x, Q y) { return x > y; });
  return ev;
}

/// Singular values by one-sided Jacobi on the columns of A, decreasing.
inline std::vector<Q> singular_values(QMat a) {
  const std::size_t n = a[0].size(), rows = a.size();
  for (int sweep = 0; sweep < 200; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Q alpha = 0, beta = 0, gamma = 0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += a[k][p] * a[k][p];
          beta += a[k][q] * a[k][q];
          gamma += a[k][p] * a[k][q];
        }
        if (gamma == 0 || fabsq(gamma) <= Q(1e-33) * sqrtq(alpha * beta)) continue;
        rotated = true;
        const Q zeta = (beta - alpha) / (2 * gamma);
        const Q t = (zeta >= 0 ? 1 : -1) / (fabsq(zeta) + sqrtq(1 + zeta * zeta));
        const Q c = 1 / sqrtq(1 + t * t), s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const Q x = a[k][p], y = a[k][q];
          a[k][p] = c * x - s * y;
          a[k][q] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<Q> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    Q acc = 0;
    for (std::size_t k = 0; k < rows; ++k) acc += a[k][j] * a[k][j];
    sv[j] = sqrtq(acc);
  }
  std::sort(sv.begin(), sv.end(), [](Q x, Q y) { return x > y; });
  return sv;
}

inline std::vector<double> singular_values(const Eigen::MatrixXd& a) {
  std::vector<double> out;
  for (Q x : singular_values(to_q(a))) out.push_back(static_cast<double>(x));
  return out;
}

inline Q determinant(QMat a) {
  const std::size_t n = a.size();
  Q det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (fabsq(a[r][c]) > fabsq(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

inline void subsets(int d, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < d; ++i) {
    cur.push_back(i);
    subsets(d, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// k-th compound matrix from k x k minors, lexicographic subsets.
inline QMat compound(const QMat& a, int k) {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  subsets(static_cast<int>(a.size()), k, 0, cur, sets);
  QMat c(sets.size(), std::vector<Q>(sets.size()));
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (std::size_t s = 0; s < sets.size(); ++s) {
      QMat minor(static_cast<std::size_t>(k), std::vector<Q>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) minor[i][j] = a[sets[r][i]][sets[s][j]];
      }
      c[r][s] = determinant(minor);
    }
  }
  return c;
}

/// log phi^s from singular values: alpha_1 ... alpha_floor(s) alpha_ceil(s)^{s-floor(s)}, or |det|^{s/d} for s >= d.
inline double log_svf(const std::vector<Q>& sv, double s) {
  const int d = static_cast<int>(sv.size());
  if (s >= d) {
    Q l = 0;
    for (Q x : sv) l += logq(x);
    return static_cast<double>(l * s / d);
  }
  const int f = static_cast<int>(std::floor(s));
  Q l = 0;
  for (int i = 0; i < f; ++i) l += logq(sv[static_cast<std::size_t>(i)]);
  if (s > f) l += (s - f) * logq(sv[static_cast<std::size_t>(f)]);
  return static_cast<double>(l);
}

inline double log_svf(const Eigen::MatrixXd& a, double s) { return log_svf(singular_values(to_q(a)), s); }

/// A_w = A_{w_n} ... A_{w_1}.
inline QMat word_product(const std::vector<Eigen::MatrixXd>& gens, const std::vector<int>& w) {
  QMat p = to_q(Eigen::MatrixXd::Identity(gens[0].rows(), gens[0].cols()));
  for (int s : w) p = mul(to_q(gens[static_cast<std::size_t>(s)]), p);
  return p;
}

/// (1/n) log sum_{|w|=n} phi^s(A_w) by explicit products.
inline double brute_pressure(const std::vector<Eigen::MatrixXd>& gens, double s, int n) {
  const int N = static_cast<int>(gens.size());
  std::vector<int> w(static_cast<std::size_t>(n), 0);
  std::vector<double> logs;
  while (true) {
    logs.push_back(log_svf(singular_values(word_product(gens, w)), s));
    int pos = n - 1;
    while (pos >= 0 && w[static_cast<std::size_t>(pos)] == N - 1) w[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++w[static_cast<std::size_t>(pos)];
  }
  const double m = *std::max_element(logs.begin(), logs.end());
  Q acc = 0;
  for (double x : logs) acc += expq(Q(x - m));
  return (m + static_cast<double>(logq(acc))) / n;
}

inline Eigen::MatrixXd rotation(double t) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

inline Eigen::MatrixXd random_matrix(saff::SplitMix64& rng, int d, double scale = 1.0) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = scale * rng.normal();
  }
  return a;
}

/// Random orthogonal matrix from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(saff::SplitMix64& rng, int d) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, d));
  return qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
}

}  // namespace oracle
