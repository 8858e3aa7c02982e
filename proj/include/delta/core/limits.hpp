#pragma once

#include <cstddef>

namespace delta {

struct Limits {
  std::size_t max_order = 12;
  std::size_t max_degree = 20;
  std::size_t max_terms = 1'000'000;
};

// Defaults, with DELTA_REDUCE_MAX_TERMS taken from the environment on first use.
Limits default_limits();
void set_default_limits(const Limits& l);

// Limits in force on this thread.
const Limits& limits();

// Tightens or relaxes the limits for the lifetime of the guard.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
  bool had_override_;
};

}  // namespace delta
