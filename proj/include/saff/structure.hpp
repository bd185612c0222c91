#pragma once

#include <optional>
#include <string>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/word.hpp"

namespace saff {

enum class Verdict { yes, no, unknown, yes_heuristic, no_up_to };
std::string to_string(Verdict v);

/// Column span of an orthonormal d x m basis.
struct Subspace {
  Matrix basis;
  [[nodiscard]] int dim() const { return static_cast<int>(basis.cols()); }
};

/// Orthonormal basis for the column span of `m` (columns with singular value
/// below rel_tol * sigma_1 are dropped).
Subspace orthonormal_span(const Matrix& m, double rel_tol = 1e-10);

/// max_i ||(I - P P^T) A_i P|| / ||A_i|| for an orthonormal basis P.
double invariance_residual(const std::vector<Matrix>& gens, const Matrix& basis);
double invariance_residual(const MatrixTuple& tuple, const Subspace& v);

/// Acceptance threshold for invariance residuals and eigen-space detection.
inline constexpr double kInvariantTol = 1e-8;
/// Relative gap below which real eigenvalues are grouped as one.
inline constexpr double kEigenClusterGap = 1e-7;

struct CommonEigenspaces {
  /// Orthonormal bases of the joint eigenspaces (each generator acts as a scalar).
  std::vector<Subspace> spaces;
  /// True if some joint eigenspace has dimension > 1 (a continuum of common lines).
  bool continuum = false;
};

/// Joint real eigenspaces by recursive intersection, in deterministic order.
CommonEigenspaces common_eigenspaces(const std::vector<Matrix>& gens);

/// Unit vectors v with A_i v parallel to v for every i: the basis vectors of the joint eigenspaces.
std::vector<Vector> common_eigenvectors(const std::vector<Matrix>& gens);
std::vector<Vector> common_eigenvectors(const MatrixTuple& tuple);

struct SubspaceSearch {
  std::vector<Subspace> found;
  /// False when a continuum of candidates was only sampled.
  bool complete = true;
};

/// k-dimensional common invariant subspaces, found as decomposable common
/// eigenvectors of the k-th exterior powers. Every returned subspace passes
/// the invariance check.
SubspaceSearch invariant_subspaces(const std::vector<Matrix>& gens, int k);
std::vector<Subspace> invariant_subspaces(const MatrixTuple& tuple, int k);

struct IrreducibilityResult {
  int k = 0;
  Verdict verdict = Verdict::unknown;
  /// Invariant subspace of the k-th exterior power (coordinates in the lexicographic basis).
  std::optional<Subspace> witness;
  double residual = 0.0;
};

IrreducibilityResult irreducibility_report(const MatrixTuple& tuple, int k);

struct StrongIrreducibilityResult {
  int k = 0;
  Verdict verdict = Verdict::unknown;
  /// Parts of a finite union permuted by the k-th exterior powers.
  std::vector<Subspace> witness;
  double residual = 0.0;
  int max_parts = 0;
  int max_len = 0;
  std::size_t candidates_tried = 0;
};

/// Bounded search for a finite union of subspaces permuted by the k-th
/// exterior powers. NO carries a verified family, YES_HEURISTIC only means
/// none was found within the bounds.
StrongIrreducibilityResult strong_irreducibility_heuristic(const MatrixTuple& tuple, int k, int max_parts = 6,
                                                           int max_len = 4);

struct TriangularizationResult {
  Verdict verdict = Verdict::unknown;
  /// Orthogonal X with X^T A_i X upper triangular (YES only).
  Matrix basis;
  /// Largest |subdiagonal entry| of X^{-1} A_i X.
  double residual = 0.0;
};

TriangularizationResult triangularizability(const MatrixTuple& tuple);

/// Block-diagonal tuple diag(B_i, D_i) in an orthonormal basis adapted to V.
MatrixTuple block_reduce(const MatrixTuple& tuple, const Subspace& v);

struct ProximalityResult {
  int k = 0;
  Verdict verdict = Verdict::no_up_to;
  Word witness;
  /// lambda_k / lambda_{k+1} of the witness product.
  double ratio = 0.0;
  int max_len = 0;
};

/// First word (shortlex) whose product has lambda_k / lambda_{k+1} > 1 + rel_tol.
ProximalityResult proximality(const MatrixTuple& tuple, int k, int max_len = 6, double rel_tol = 1e-6);

struct StructureOptions {
  int max_parts = 6;
  int strong_len = 4;
  int proximal_len = 6;
  double rel_tol = 1e-6;
};

struct StructureReport {
  int dim = 0;
  std::vector<IrreducibilityResult> irreducible;             // k = 1..d-1
  std::vector<StrongIrreducibilityResult> strongly_irreducible;  // k = 1..d-1
  std::vector<ProximalityResult> proximal;                   // k = 1..d-1
  TriangularizationResult triangularizable;
};

StructureReport structure_report(const MatrixTuple& tuple, const StructureOptions& opts = {});

}  // namespace saff
