#include "capcodes/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capcodes::bounds {

namespace {

constexpr double kSlack = 1e-12;

void check_inputs(int n, std::int64_t delta_n) {
  if (n < 1 || n > 62) {
    throw std::invalid_argument("capacity bracket: n out of range");
  }
  if (delta_n < 1 || delta_n > (std::int64_t{1} << n)) {
    throw std::invalid_argument("capacity bracket: delta_n is not a code size");
  }
}

CapacityBracket assemble(int n, std::int64_t delta_n, double raw_lower) {
  CapacityBracket b;
  b.n = n;
  b.delta_n = delta_n;
  b.raw_lower = raw_lower;
  b.raw_upper = std::log2(static_cast<double>(delta_n)) / n;
  b.lower = std::clamp(raw_lower - kSlack, 0.0, 1.0);
  b.upper = std::clamp(b.raw_upper + kSlack, 0.0, 1.0);
  return b;
}

}  // namespace

CapacityBracket capacity_bracket(int n, std::int64_t delta_n,
                                 const PatternSet& d) {
  check_inputs(n, delta_n);
  const ZeroRunParams z = d.zero_runs();
  const int boundary = z.r1 + z.r2;
  if (n < boundary) {
    throw std::invalid_argument("capacity_bracket: need n >= r1 + r2");
  }
  const double raw_lower =
      (std::log2(static_cast<double>(delta_n)) - boundary) /
      (n + z.r + 1 - boundary);
  return assemble(n, delta_n, raw_lower);
}

CapacityBracket zero_free_bracket(int n, std::int64_t delta_n,
                                  const PatternSet& d) {
  check_inputs(n, delta_n);
  if (d.zero_runs().r != 0) {
    throw std::invalid_argument(
        "zero_free_bracket: some pattern contains a zero; use capacity_bracket");
  }
  const double raw_lower =
      std::log2(static_cast<double>(delta_n)) / (n + 1);
  return assemble(n, delta_n, raw_lower);
}

CapacityBracket interior_zeros_bracket(int n, std::int64_t delta_n,
                                       const PatternSet& d) {
  check_inputs(n, delta_n);
  const ZeroRunParams z = d.zero_runs();
  if (z.r1 != 0 || z.r2 != 0) {
    throw std::invalid_argument(
        "interior_zeros_bracket: a pattern starts or ends with zero; use "
        "capacity_bracket");
  }
  const double raw_lower =
      std::log2(static_cast<double>(delta_n)) / (n + z.r + 1);
  return assemble(n, delta_n, raw_lower);
}

std::int64_t zero_capacity_code_bound(const PatternSet& d) {
  const ZeroRunParams z = d.zero_runs();
  const int boundary = z.r1 + z.r2;
  if (boundary > 62) {
    throw std::invalid_argument("zero_capacity_code_bound: parameters too large");
  }
  return std::int64_t{1} << boundary;
}

double positive_floor(const PatternSet& d) {
  return 1.0 / (2 * d.total_length() + d.m());
}

int n_for_accuracy(const PatternSet& d, double eps) {
  if (!(eps > 0)) {
    throw std::invalid_argument("n_for_accuracy: eps must be positive");
  }
  const ZeroRunParams z = d.zero_runs();
  const int numerator = std::max(z.r1 + z.r2, z.r + 1);
  if (numerator / eps > 1e9) {
    throw std::invalid_argument("n_for_accuracy: eps too small");
  }
  int n = std::max(1, static_cast<int>(std::ceil(numerator / eps)));
  while (static_cast<double>(numerator) / n > eps) ++n;
  while (n > 1 && static_cast<double>(numerator) / (n - 1) <= eps) --n;
  return n;
}

}  // namespace capcodes::bounds
