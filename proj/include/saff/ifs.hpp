#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "saff/linalg.hpp"
#include "saff/lyapunov.hpp"

namespace saff {

/// Affine maps T_i x = A_i x + v_i.
class AffineIFS {
 public:
  /// With `strict`, every ||A_i|| (spectral norm) must be < 1 (PreconditionError otherwise).
  AffineIFS(MatrixTuple tuple, std::vector<Vector> translations, bool strict = true);

  [[nodiscard]] const MatrixTuple& tuple() const { return tuple_; }
  [[nodiscard]] const std::vector<Vector>& translations() const { return translations_; }
  [[nodiscard]] int dim() const { return tuple_.dim(); }
  [[nodiscard]] int size() const { return tuple_.size(); }
  [[nodiscard]] bool strict() const { return strict_; }

  [[nodiscard]] Vector apply(int i, const Vector& x) const;
  /// The unique fixed point of T_i.
  [[nodiscard]] Vector fixed_point(int i) const;

 private:
  MatrixTuple tuple_;
  std::vector<Vector> translations_;
  bool strict_;
};

/// Chaos-game samples of the self-affine measure pi_* mu. Starts at the fixed
/// point of the most likely map, discards `burn` iterates, then records
/// `points` iterates. Deterministic for a given seed.
std::vector<Vector> sample_self_affine(const AffineIFS& ifs, const BernoulliMeasure& mu, std::size_t points,
                                       std::size_t burn, std::uint64_t seed);

/// Header "x1,...,xd", one row per point, 17 significant digits, '\n' line ends.
void write_point_csv(std::ostream& os, const std::vector<Vector>& points, int dim);

}  // namespace saff
