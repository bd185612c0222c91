#include "saff/structure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

#include "saff/error.hpp"

namespace saff {

namespace {

constexpr std::size_t kMaxStrongCandidates = 4096;
// Exterior dimension up to which the invariant-subspace search covers every dimension.
constexpr std::int64_t kCompleteSearchDim = 6;

double spectral_norm(const Matrix& a) { return a.size() == 0 ? 0.0 : top_singular_value(a); }

// Orthonormal basis of {x : m x = 0} using singular values <= tol.
Matrix null_space(const Matrix& m, double tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > tol) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Real eigenvalues of a, grouped by relative gap, as cluster means in decreasing order.
std::vector<double> real_eigen_clusters(const Matrix& a) {
  if (a.rows() == 1) return {a(0, 0)};
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) return {};
  const auto& ev = es.eigenvalues();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
  if (scale == 0.0) return {0.0};
  std::vector<double> real;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) <= kEigenClusterGap * scale) real.push_back(ev(i).real());
  }
  std::sort(real.begin(), real.end(), std::greater<>());
  std::vector<double> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= real.size(); ++i) {
    if (i == real.size() || real[i - 1] - real[i] > kEigenClusterGap * scale) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += real[j];
      out.push_back(sum / static_cast<double>(i - start));
      start = i;
    }
  }
  return out;
}

double projector_distance(const Matrix& p, const Matrix& q) {
  if (p.cols() != q.cols()) return std::numeric_limits<double>::infinity();
  return spectral_norm(p * p.transpose() - q * q.transpose());
}

void add_unique(std::vector<Subspace>& list, Subspace s, double tol) {
  for (const Subspace& t : list) {
    if (projector_distance(t.basis, s.basis) <= tol) return;
  }
  list.push_back(std::move(s));
}

std::vector<Matrix> exterior_all(const std::vector<Matrix>& gens, int k) {
  std::vector<Matrix> out;
  out.reserve(gens.size());
  for (const Matrix& g : gens) out.push_back(exterior_power(g, k));
  return out;
}

// Matrix of v -> v ^ omega from R^d to the (k+1)-th exterior power.
Matrix wedge_matrix(const Vector& omega, int d, int k) {
  const auto sub_k = index_subsets(d, k);
  const auto sub_k1 = index_subsets(d, k + 1);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(sub_k1.size()), d);
  for (std::size_t s = 0; s < sub_k.size(); ++s) {
    const double w = omega(static_cast<Eigen::Index>(s));
    if (w == 0.0) continue;
    for (int i = 0; i < d; ++i) {
      const auto& set = sub_k[s];
      if (std::find(set.begin(), set.end(), i) != set.end()) continue;
      // e_i ^ e_S = (-1)^{#{j in S : j < i}} e_{S + i}
      int before = 0;
      for (int j : set) {
        if (j < i) ++before;
      }
      std::vector<int> merged = set;
      merged.insert(std::lower_bound(merged.begin(), merged.end(), i), i);
      const auto row = std::find(sub_k1.begin(), sub_k1.end(), merged) - sub_k1.begin();
      out(row, i) += (before % 2 ? -1.0 : 1.0) * w;
    }
  }
  return out;
}

// Subspace V with omega proportional to the wedge of a basis of V, if omega is decomposable.
std::optional<Subspace> decompose(const Vector& omega, int d, int k) {
  if (d == 4 && k == 2) {
    // Pluecker relation omega ^ omega = 0; basis order 12,13,14,23,24,34.
    const double pl = omega(0) * omega(5) - omega(1) * omega(4) + omega(2) * omega(3);
    if (std::abs(pl) > kInvariantTol * omega.squaredNorm()) return std::nullopt;
  }
  const Matrix w = wedge_matrix(omega.normalized(), d, k);
  const Matrix kernel = null_space(w, 1e-6);
  if (kernel.cols() != k) return std::nullopt;
  return Subspace{kernel};
}

TriangularizationResult triangularize(const std::vector<Matrix>& gens) {
  const auto m = gens.front().rows();
  TriangularizationResult out;
  if (m == 1) {
    out.verdict = Verdict::yes;
    out.basis = Matrix::Identity(1, 1);
    return out;
  }
  const auto vecs = common_eigenvectors(gens);
  if (vecs.empty()) {
    out.verdict = Verdict::no;
    return out;
  }
  Eigen::HouseholderQR<Matrix> qr(Matrix(vecs.front()));
  const Matrix q = qr.householderQ() * Matrix::Identity(m, m);
  std::vector<Matrix> rest;
  rest.reserve(gens.size());
  for (const Matrix& g : gens) rest.push_back((q.transpose() * g * q).bottomRightCorner(m - 1, m - 1));
  const TriangularizationResult inner = triangularize(rest);
  if (inner.verdict != Verdict::yes) {
    out.verdict = inner.verdict;
    return out;
  }
  Matrix lift = Matrix::Identity(m, m);
  lift.bottomRightCorner(m - 1, m - 1) = inner.basis;
  out.verdict = Verdict::yes;
  out.basis = q * lift;
  return out;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "YES";
    case Verdict::no:
      return "NO";
    case Verdict::unknown:
      return "UNKNOWN";
    case Verdict::yes_heuristic:
      return "YES_HEURISTIC";
    case Verdict::no_up_to:
      return "NO_UP_TO";
  }
  return "UNKNOWN";
}

Subspace orthonormal_span(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return Subspace{svd.matrixU().leftCols(rank)};
}

double invariance_residual(const std::vector<Matrix>& gens, const Matrix& basis) {
  double worst = 0.0;
  for (const Matrix& a : gens) {
    const Matrix image = a * basis;
    const Matrix off = image - basis * (basis.transpose() * image);
    worst = std::max(worst, spectral_norm(off) / spectral_norm(a));
  }
  return worst;
}

double invariance_residual(const MatrixTuple& tuple, const Subspace& v) {
  return invariance_residual(tuple.matrices(), v.basis);
}

CommonEigenspaces common_eigenspaces(const std::vector<Matrix>& gens) {
  CommonEigenspaces out;
  if (gens.empty()) return out;
  const auto d = gens.front().rows();
  std::function<void(const Matrix&, std::size_t)> refine = [&](const Matrix& q, std::size_t idx) {
    if (idx == gens.size()) {
      if (q.cols() > 1) out.continuum = true;
      out.spaces.push_back(Subspace{q});
      return;
    }
    const Matrix& a = gens[idx];
    const double tol = kInvariantTol * spectral_norm(a);
    for (double lambda : real_eigen_clusters(a)) {
      const Matrix shifted = a * q - lambda * q;
      const Matrix kernel = null_space(shifted, tol);
      if (kernel.cols() > 0) refine(q * kernel, idx + 1);
    }
  };
  refine(Matrix::Identity(d, d), 0);
  return out;
}

std::vector<Vector> common_eigenvectors(const std::vector<Matrix>& gens) {
  std::vector<Vector> out;
  for (const Subspace& s : common_eigenspaces(gens).spaces) {
    for (Eigen::Index j = 0; j < s.basis.cols(); ++j) out.emplace_back(s.basis.col(j));
  }
  return out;
}

std::vector<Vector> common_eigenvectors(const MatrixTuple& tuple) { return common_eigenvectors(tuple.matrices()); }

SubspaceSearch invariant_subspaces(const std::vector<Matrix>& gens, int k) {
  const int d = static_cast<int>(gens.front().rows());
  if (k < 1 || k > d - 1) {
    throw InputError("invariant_subspaces: dimension k=" + std::to_string(k) + " outside 1.." + std::to_string(d - 1));
  }
  SubspaceSearch out;
  const CommonEigenspaces ce = k == 1 ? common_eigenspaces(gens) : common_eigenspaces(exterior_all(gens, k));
  out.complete = !ce.continuum;
  for (const Subspace& s : ce.spaces) {
    for (Eigen::Index j = 0; j < s.basis.cols(); ++j) {
      std::optional<Subspace> v = k == 1 ? Subspace{s.basis.col(j)} : decompose(s.basis.col(j), d, k);
      if (!v) continue;
      if (invariance_residual(gens, v->basis) <= kInvariantTol) add_unique(out.found, std::move(*v), 1e-8);
    }
  }
  return out;
}

std::vector<Subspace> invariant_subspaces(const MatrixTuple& tuple, int k) {
  return invariant_subspaces(tuple.matrices(), k).found;
}

IrreducibilityResult irreducibility_report(const MatrixTuple& tuple, int k) {
  const int d = tuple.dim();
  if (k < 1 || k > d) throw InputError("irreducibility: degree k=" + std::to_string(k) + " outside 1.." + std::to_string(d));
  IrreducibilityResult out;
  out.k = k;
  const std::int64_t dim = binomial(d, k);
  if (dim == 1) {
    out.verdict = Verdict::yes;
    return out;
  }
  const std::vector<Matrix> ext = exterior_all(tuple.matrices(), k);
  bool complete = true;
  for (int j = 1; j < dim; ++j) {
    if (dim > kCompleteSearchDim && j != 1 && j != dim - 1) {
      complete = false;
      continue;
    }
    const SubspaceSearch search = invariant_subspaces(ext, j);
    if (!search.found.empty()) {
      out.verdict = Verdict::no;
      out.witness = search.found.front();
      out.residual = invariance_residual(ext, out.witness->basis);
      return out;
    }
    complete = complete && search.complete;
  }
  out.verdict = complete ? Verdict::yes : Verdict::unknown;
  return out;
}

StrongIrreducibilityResult strong_irreducibility_heuristic(const MatrixTuple& tuple, int k, int max_parts,
                                                           int max_len) {
  const int d = tuple.dim();
  if (k < 1 || k > d) throw InputError("strong irreducibility: degree k outside 1..d");
  if (max_parts < 1 || max_len < 1) throw InputError("strong irreducibility: search bounds must be >= 1");
  StrongIrreducibilityResult out;
  out.k = k;
  out.max_parts = max_parts;
  out.max_len = max_len;
  const auto dim = static_cast<Eigen::Index>(binomial(d, k));
  if (dim == 1) {
    out.verdict = Verdict::yes;
    return out;
  }
  const IrreducibilityResult irr = irreducibility_report(tuple, k);
  const std::vector<Matrix> ext = exterior_all(tuple.matrices(), k);
  if (irr.verdict == Verdict::no) {
    out.verdict = Verdict::no;
    out.witness = {*irr.witness};
    out.residual = irr.residual;
    return out;
  }

  std::vector<Subspace> candidates;
  for (Eigen::Index i = 0; i < dim; ++i) candidates.push_back(Subspace{Matrix::Identity(dim, dim).col(i)});
  for_each_word_shortlex(tuple.size(), max_len, [&](const Word& w) {
    Matrix p = Matrix::Identity(dim, dim);
    for (std::size_t i = 0; i < w.size(); ++i) {
      p = ext[static_cast<std::size_t>(w[i])] * p;
      p /= p.cwiseAbs().maxCoeff();
    }
    for (double lambda : real_eigen_clusters(p)) {
      const Matrix kernel = null_space(p - lambda * Matrix::Identity(dim, dim), kInvariantTol * spectral_norm(p));
      for (Eigen::Index j = 0; j < kernel.cols(); ++j) add_unique(candidates, Subspace{kernel.col(j)}, 1e-8);
      if (kernel.cols() > 1 && kernel.cols() < dim) add_unique(candidates, Subspace{kernel}, 1e-8);
    }
    Eigen::EigenSolver<Matrix> es(p, true);
    if (es.info() == Eigen::Success) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const std::complex<double> lambda = es.eigenvalues()(j);
        if (lambda.imag() <= kEigenClusterGap * std::abs(lambda)) continue;
        Matrix plane(dim, 2);
        plane.col(0) = es.eigenvectors().col(j).real();
        plane.col(1) = es.eigenvectors().col(j).imag();
        Subspace s = orthonormal_span(plane, 1e-8);
        if (s.dim() == 2 && dim > 2) add_unique(candidates, std::move(s), 1e-8);
      }
    }
    return candidates.size() < kMaxStrongCandidates;
  });

  for (const Subspace& start : candidates) {
    ++out.candidates_tried;
    std::vector<Subspace> family{start};
    bool closed = true;
    for (std::size_t idx = 0; idx < family.size() && closed; ++idx) {
      for (const Matrix& g : ext) {
        Subspace image = orthonormal_span(g * family[idx].basis, 1e-12);
        const std::size_t before = family.size();
        add_unique(family, std::move(image), 1e-8);
        if (family.size() != before && static_cast<int>(family.size()) > max_parts) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    // Every image of every part must be one of the parts.
    double residual = 0.0;
    for (const Subspace& part : family) {
      for (const Matrix& g : ext) {
        const Subspace image = orthonormal_span(g * part.basis, 1e-12);
        double best = std::numeric_limits<double>::infinity();
        for (const Subspace& other : family) best = std::min(best, projector_distance(image.basis, other.basis));
        residual = std::max(residual, best);
      }
    }
    if (residual <= kInvariantTol) {
      out.verdict = Verdict::no;
      out.witness = std::move(family);
      out.residual = residual;
      return out;
    }
  }
  out.verdict = irr.verdict == Verdict::yes ? Verdict::yes_heuristic : Verdict::unknown;
  return out;
}

TriangularizationResult triangularizability(const MatrixTuple& tuple) {
  TriangularizationResult out = triangularize(tuple.matrices());
  if (out.verdict != Verdict::yes) return out;
  for (const Matrix& a : tuple.matrices()) {
    const Matrix t = out.basis.transpose() * a * out.basis;
    for (Eigen::Index r = 1; r < t.rows(); ++r) {
      for (Eigen::Index c = 0; c < r; ++c) out.residual = std::max(out.residual, std::abs(t(r, c)));
    }
  }
  if (out.residual > kInvariantTol) out.verdict = Verdict::unknown;
  return out;
}

MatrixTuple block_reduce(const MatrixTuple& tuple, const Subspace& v) {
  const int d = tuple.dim();
  if (v.basis.rows() != d) throw InputError("block_reduce: subspace lives in the wrong dimension");
  const Subspace q = orthonormal_span(v.basis);
  const auto m = q.basis.cols();
  if (m < 1 || m >= d) throw InputError("block_reduce: subspace must be proper and non-zero");
  const double residual = invariance_residual(tuple, q);
  if (residual > kInvariantTol) {
    throw PreconditionError("block_reduce: subspace is not invariant (residual " + std::to_string(residual) + ")");
  }
  Eigen::HouseholderQR<Matrix> qr(q.basis);
  const Matrix u = qr.householderQ() * Matrix::Identity(d, d);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(tuple.size()));
  for (const Matrix& a : tuple.matrices()) {
    Matrix b = u.transpose() * a * u;
    b.topRightCorner(m, d - m).setZero();
    b.bottomLeftCorner(d - m, m).setZero();
    out.push_back(std::move(b));
  }
  return MatrixTuple(std::move(out));
}

ProximalityResult proximality(const MatrixTuple& tuple, int k, int max_len, double rel_tol) {
  const int d = tuple.dim();
  if (k < 1 || k > d - 1) throw InputError("proximality: k must lie in 1..d-1");
  if (max_len < 1) throw InputError("proximality: max length must be >= 1");
  ProximalityResult out;
  out.k = k;
  out.max_len = max_len;
  for_each_word_shortlex(tuple.size(), max_len, [&](const Word& w) {
    const std::vector<double> mod = eigen_moduli(word_product(tuple, w).matrix);
    const double ratio = mod[static_cast<std::size_t>(k - 1)] / mod[static_cast<std::size_t>(k)];
    if (ratio > 1.0 + rel_tol) {
      out.verdict = Verdict::yes;
      out.witness = w;
      out.ratio = ratio;
      return false;
    }
    return true;
  });
  return out;
}

StructureReport structure_report(const MatrixTuple& tuple, const StructureOptions& opts) {
  StructureReport out;
  out.dim = tuple.dim();
  for (int k = 1; k < tuple.dim(); ++k) {
    out.irreducible.push_back(irreducibility_report(tuple, k));
    out.strongly_irreducible.push_back(strong_irreducibility_heuristic(tuple, k, opts.max_parts, opts.strong_len));
    out.proximal.push_back(proximality(tuple, k, opts.proximal_len, opts.rel_tol));
  }
  out.triangularizable = triangularizability(tuple);
  return out;
}

}  // namespace saff
