#pragma once

#include <span>
#include <string_view>

// Data-parallel inner loops used by the word-table reductions.
//
// Each kernel has a scalar reference implementation and an AVX2 variant; the
// variant is chosen once at startup from the CPU features and can be forced
// with set_isa() (tests compare the two). Within one ISA every kernel is
// deterministic: lanes are combined in a fixed order.

namespace saff::kernels {

enum class Isa { scalar, avx2 };

[[nodiscard]] bool isa_supported(Isa isa);
[[nodiscard]] Isa active_isa();
/// Throws std::invalid_argument if the ISA is not supported on this CPU.
void set_isa(Isa isa);
[[nodiscard]] std::string_view isa_name(Isa isa);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// y = max(y, x) elementwise
void max_into(std::span<const double> x, std::span<double> y);
/// max_i x_i; -inf for an empty span
[[nodiscard]] double reduce_max(std::span<const double> x);
/// sum_i exp(x_i - shift)
[[nodiscard]] double sum_exp(std::span<const double> x, double shift);

struct WeightedSum {
  double weight = 0.0;    // sum_i exp(x_i - shift)
  double weighted = 0.0;  // sum_i exp(x_i - shift) * y_i
};
[[nodiscard]] WeightedSum sum_exp_weighted(std::span<const double> x, double shift, std::span<const double> y);

/// Function table for one ISA; exposed for the equivalence tests.
struct KernelTable {
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*max_into)(const double*, double*, std::size_t);
  double (*reduce_max)(const double*, std::size_t);
  double (*sum_exp)(const double*, double, std::size_t);
  WeightedSum (*sum_exp_weighted)(const double*, double, const double*, std::size_t);
};

[[nodiscard]] const KernelTable& table(Isa isa);

namespace detail {
extern const KernelTable scalar_table;
/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();
}  // namespace detail

}  // namespace saff::kernels
