#pragma once

#include <cstdint>

#include "capcodes/patterns.hpp"

namespace capcodes::bounds {

// Two-sided estimate of the capacity derived from one exact code size
// delta_n.  lower and upper are clamped into [0,1] after widening by a
// 1e-12 rounding slack; the unclamped values are kept alongside.
struct CapacityBracket {
  int n = 0;
  std::int64_t delta_n = 0;
  double lower = 0.0;
  double upper = 1.0;
  double raw_lower = 0.0;
  double raw_upper = 1.0;
};

// General sandwich: for n >= r1+r2,
//   (log2(delta_n) - (r1+r2)) / (n + r + 1 - (r1+r2)) <= cap <= log2(delta_n)/n.
// Throws when n < r1+r2 or delta_n is not a plausible code size.
CapacityBracket capacity_bracket(int n, std::int64_t delta_n,
                                 const PatternSet& d);

// Specialization for sets whose patterns contain no zero at all: the lower
// denominator simplifies to n+1.  Throws when some pattern has a zero.
CapacityBracket zero_free_bracket(int n, std::int64_t delta_n,
                                  const PatternSet& d);

// Specialization for sets whose patterns neither start nor end with zero:
// the lower denominator simplifies to n+r+1.  Throws when r1 or r2 is
// nonzero.
CapacityBracket interior_zeros_bracket(int n, std::int64_t delta_n,
                                       const PatternSet& d);

// 2^(r1+r2): when the capacity is zero, every delta_n is at most this
// constant.
std::int64_t zero_capacity_code_bound(const PatternSet& d);

// 1/(2M+m): when the capacity is positive, it is at least this value.
double positive_floor(const PatternSet& d);

// Smallest n such that max(r1+r2, r+1)/n <= eps, making the bracket width
// from capacity_bracket at that n at most eps.
int n_for_accuracy(const PatternSet& d, double eps);

}  // namespace capcodes::bounds
