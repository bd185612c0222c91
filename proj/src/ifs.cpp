#include "saff/ifs.hpp"

#include <cstdio>
#include <string>

#include "saff/error.hpp"
#include "saff/rng.hpp"

namespace saff {

AffineIFS::AffineIFS(MatrixTuple tuple, std::vector<Vector> translations, bool strict)
    : tuple_(std::move(tuple)), translations_(std::move(translations)), strict_(strict) {
  if (static_cast<int>(translations_.size()) != tuple_.size()) {
    throw InputError("translations: expected " + std::to_string(tuple_.size()) + " vectors, got " +
                     std::to_string(translations_.size()));
  }
  for (std::size_t i = 0; i < translations_.size(); ++i) {
    if (translations_[i].size() != tuple_.dim() || !translations_[i].allFinite()) {
      throw InputError("translations: vector " + std::to_string(i + 1) + " must have " + std::to_string(tuple_.dim()) +
                       " finite entries");
    }
  }
  if (strict_) {
    for (int i = 0; i < tuple_.size(); ++i) {
      if (!(top_singular_value(tuple_[i]) < 1.0)) {
        throw PreconditionError("matrices: map " + std::to_string(i + 1) + " is not a strict contraction (||A|| >= 1)");
      }
    }
  }
}

Vector AffineIFS::apply(int i, const Vector& x) const {
  return tuple_[i] * x + translations_[static_cast<std::size_t>(i)];
}

Vector AffineIFS::fixed_point(int i) const {
  const Matrix lhs = Matrix::Identity(dim(), dim()) - tuple_[i];
  return lhs.partialPivLu().solve(translations_[static_cast<std::size_t>(i)]);
}

std::vector<Vector> sample_self_affine(const AffineIFS& ifs, const BernoulliMeasure& mu, std::size_t points,
                                       std::size_t burn, std::uint64_t seed) {
  if (!ifs.strict()) throw PreconditionError("sample_self_affine: requires strict contractions");
  if (mu.size() != ifs.size()) {
    throw InputError("weights: " + std::to_string(mu.size()) + " probabilities for " + std::to_string(ifs.size()) +
                     " maps");
  }
  int start = 0;
  for (int i = 1; i < mu.size(); ++i) {
    if (mu.p()[static_cast<std::size_t>(i)] > mu.p()[static_cast<std::size_t>(start)]) start = i;
  }
  SplitMix64 rng = SplitMix64::stream(seed, 0);
  Vector x = ifs.fixed_point(start);
  for (std::size_t t = 0; t < burn; ++t) x = ifs.apply(rng.categorical(mu.cdf()), x);
  std::vector<Vector> out;
  out.reserve(points);
  for (std::size_t t = 0; t < points; ++t) {
    x = ifs.apply(rng.categorical(mu.cdf()), x);
    out.push_back(x);
  }
  return out;
}

void write_point_csv(std::ostream& os, const std::vector<Vector>& points, int dim) {
  for (int j = 0; j < dim; ++j) os << (j ? ",x" : "x") << j + 1;
  os << '\n';
  char buf[32];
  for (const Vector& p : points) {
    for (int j = 0; j < dim; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", p(j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace saff
