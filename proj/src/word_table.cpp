#include "saff/word_table.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "saff/error.hpp"
#include "saff/kernels.hpp"

namespace saff {

namespace {

constexpr std::size_t kChunk = 8192;
constexpr std::uint64_t kMinBlocks = 64;

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

std::uint64_t word_count(int alphabet, int length) {
  std::uint64_t n = 1;
  for (int i = 0; i < length; ++i) {
    if (n > UINT64_MAX / static_cast<std::uint64_t>(alphabet)) return UINT64_MAX;
    n *= static_cast<std::uint64_t>(alphabet);
  }
  return n;
}

void require_budget(int alphabet, int depth, std::uint64_t budget) {
  const std::uint64_t n = word_count(alphabet, depth);
  if (n > budget) {
    throw BudgetError("word budget exceeded: depth " + std::to_string(depth) + " needs N^n = " +
                      (n == UINT64_MAX ? std::string("overflow") : std::to_string(n)) + " words, budget is " +
                      std::to_string(budget));
  }
}

WordTable::WordTable(const MatrixTuple& tuple, int depth, const EnumerationOptions& opts)
    : depth_(depth), alphabet_(tuple.size()), dim_(tuple.dim()), threads_(std::max(1, opts.threads)) {
  if (depth < 1) throw InputError("depth must be >= 1");
  require_budget(alphabet_, depth, opts.budget);

  columns_.resize(static_cast<std::size_t>(depth) + 1);
  for (int m = 1; m <= depth; ++m) {
    auto& level = columns_[static_cast<std::size_t>(m)];
    level.assign(static_cast<std::size_t>(dim_), std::vector<double>(count(m)));
  }

  const ExteriorTuple ext(tuple);
  const auto store = [this](const ProductAccumulator& acc, int m, std::size_t index) {
    auto& level = columns_[static_cast<std::size_t>(m)];
    for (int k = 1; k <= dim_; ++k) level[static_cast<std::size_t>(k - 1)][index] = acc.log_exterior_norm(k);
  };

  // Depth-first walk below `acc` (a word of length m with lexicographic index `index`).
  const auto walk = [&](ProductAccumulator root, int m, std::size_t index, int stop) {
    std::vector<ProductAccumulator> stack(static_cast<std::size_t>(stop - m) + 1, root);
    std::vector<std::size_t> idx(stack.size(), index);
    std::vector<int> next(stack.size(), 0);
    std::size_t top = 0;
    while (true) {
      if (m + static_cast<int>(top) == stop || next[top] == alphabet_) {
        if (top == 0) return;
        --top;
        continue;
      }
      const int sym = next[top]++;
      stack[top + 1] = stack[top];
      stack[top + 1].push(sym);
      idx[top + 1] = idx[top] * static_cast<std::size_t>(alphabet_) + static_cast<std::size_t>(sym);
      next[top + 1] = 0;
      ++top;
      store(stack[top], m + static_cast<int>(top), idx[top]);
    }
  };

  int prefix = 1;
  while (prefix < depth && word_count(alphabet_, prefix) < kMinBlocks) ++prefix;

  // Levels shorter than the prefix blocks are cheap and done serially.
  ProductAccumulator empty(ext);
  walk(empty, 0, 0, prefix - 1);

  const auto blocks = static_cast<std::size_t>(word_count(alphabet_, prefix));
  detail::parallel_for(blocks, threads_, [&](std::size_t b) {
    ProductAccumulator acc(ext);
    const Word w = Word::from_index(b, prefix, alphabet_);
    for (std::size_t i = 0; i < w.size(); ++i) acc.push(w[i]);
    store(acc, prefix, b);
    walk(acc, prefix, b, depth);
  });
}

std::size_t WordTable::count(int m) const { return static_cast<std::size_t>(word_count(alphabet_, m)); }

std::span<const double> WordTable::column(int m, int k) const {
  if (m < 1 || m > depth_ || k < 1 || k > dim_) throw InputError("word table: level or degree out of range");
  return columns_[static_cast<std::size_t>(m)][static_cast<std::size_t>(k - 1)];
}

void WordTable::potential(const CompiledPotential& pot, int m, std::vector<double>& out) const {
  if (pot.dim() != dim_) throw InputError("potential dimension does not match the tuple");
  const std::size_t n = count(m);
  if (pot.forms().size() == 1) {
    form_values(pot.forms().front(), m, out);
    return;
  }
  out.assign(n, -std::numeric_limits<double>::infinity());
  std::vector<double> values;
  for (const LinearForm& f : pot.forms()) {
    form_values(f, m, values);
    detail::parallel_for(chunk_count(n), threads_, [&](std::size_t c) {
      const std::size_t lo = c * kChunk;
      const std::size_t len = std::min(kChunk, n - lo);
      kernels::max_into(std::span<const double>(values.data() + lo, len), std::span<double>(out.data() + lo, len));
    });
  }
}

void WordTable::form_values(const LinearForm& f, int m, std::vector<double>& out) const {
  if (static_cast<int>(f.coeff.size()) != dim_ + 1) throw InputError("potential dimension does not match the tuple");
  const std::size_t n = count(m);
  out.resize(n);
  std::vector<double> symbol_sum;
  if (!f.symbol_log_weight.empty()) {
    if (static_cast<int>(f.symbol_log_weight.size()) != alphabet_) {
      throw InputError("potential weight count does not match the number of maps");
    }
    const auto base = static_cast<std::size_t>(alphabet_);
    symbol_sum.assign(f.symbol_log_weight.begin(), f.symbol_log_weight.end());
    for (int level = 2; level <= m; ++level) {
      std::vector<double> deeper(count(level));
      for (std::size_t i = 0; i < deeper.size(); ++i) deeper[i] = symbol_sum[i / base] + f.symbol_log_weight[i % base];
      symbol_sum.swap(deeper);
    }
  }
  detail::parallel_for(chunk_count(n), threads_, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t len = std::min(kChunk, n - lo);
    std::span<double> dst(out.data() + lo, len);
    if (symbol_sum.empty()) {
      std::fill(dst.begin(), dst.end(), 0.0);
    } else {
      std::copy_n(symbol_sum.begin() + static_cast<std::ptrdiff_t>(lo), len, dst.begin());
    }
    for (int k = 1; k <= dim_; ++k) {
      const double ck = f.coeff[static_cast<std::size_t>(k)];
      if (ck != 0.0) kernels::axpy(ck, column(m, k).subspan(lo, len), dst);
    }
  });
}

double log_sum_exp(std::span<const double> x, int threads) {
  const std::size_t chunks = chunk_count(x.size());
  std::vector<double> part(chunks);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    part[c] = kernels::reduce_max(x.subspan(c * kChunk, std::min(kChunk, x.size() - c * kChunk)));
  });
  const double peak = kernels::reduce_max(part);
  if (!std::isfinite(peak)) return peak;
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    part[c] = kernels::sum_exp(x.subspan(c * kChunk, std::min(kChunk, x.size() - c * kChunk)), peak);
  });
  double total = 0.0;
  for (double p : part) total += p;
  return peak + std::log(total);
}

Expectation gibbs_expectation(std::span<const double> x, std::span<const double> y, int threads) {
  if (x.size() != y.size()) throw InputError("gibbs_expectation: size mismatch");
  const std::size_t chunks = chunk_count(x.size());
  std::vector<double> peaks(chunks);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    peaks[c] = kernels::reduce_max(x.subspan(c * kChunk, std::min(kChunk, x.size() - c * kChunk)));
  });
  const double peak = kernels::reduce_max(peaks);
  if (!std::isfinite(peak)) throw DegenerateError("gibbs_expectation: no finite weight");
  std::vector<kernels::WeightedSum> part(chunks);
  detail::parallel_for(chunks, threads, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t len = std::min(kChunk, x.size() - lo);
    part[c] = kernels::sum_exp_weighted(x.subspan(lo, len), peak, y.subspan(lo, len));
  });
  double w = 0.0;
  double wy = 0.0;
  for (const auto& p : part) {
    w += p.weight;
    wy += p.weighted;
  }
  return {peak + std::log(w), wy / w};
}

}  // namespace saff
