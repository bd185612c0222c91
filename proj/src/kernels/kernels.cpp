#include "saff/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace saff::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() { return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const KernelTable& active() { return table(current().load(std::memory_order_relaxed)); }

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument("kernels: ISA not supported on this CPU");
  current().store(isa);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& table(Isa isa) {
  if (isa == Isa::avx2) {
    if (const KernelTable* t = detail::avx2_table()) return *t;
  }
  return detail::scalar_table;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void max_into(std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("max_into: size mismatch");
  active().max_into(x.data(), y.data(), x.size());
}

double reduce_max(std::span<const double> x) { return active().reduce_max(x.data(), x.size()); }

double sum_exp(std::span<const double> x, double shift) { return active().sum_exp(x.data(), shift, x.size()); }

WeightedSum sum_exp_weighted(std::span<const double> x, double shift, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("sum_exp_weighted: size mismatch");
  return active().sum_exp_weighted(x.data(), shift, y.data(), x.size());
}

}  // namespace saff::kernels
