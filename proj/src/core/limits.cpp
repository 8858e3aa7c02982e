#include "delta/core/limits.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

namespace delta {
namespace {

std::mutex g_mutex;
bool g_initialized = false;
Limits g_defaults;

thread_local bool t_override = false;
thread_local Limits t_limits;

void init_locked() {
  if (g_initialized) return;
  g_initialized = true;
  if (const char* env = std::getenv("DELTA_REDUCE_MAX_TERMS")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) g_defaults.max_terms = static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
}

}  // namespace

Limits default_limits() {
  std::lock_guard lock(g_mutex);
  init_locked();
  return g_defaults;
}

void set_default_limits(const Limits& l) {
  std::lock_guard lock(g_mutex);
  g_initialized = true;
  g_defaults = l;
}

const Limits& limits() {
  if (t_override) return t_limits;
  thread_local Limits snapshot;
  snapshot = default_limits();
  return snapshot;
}

ScopedLimits::ScopedLimits(const Limits& l) : saved_(t_limits), had_override_(t_override) {
  t_limits = l;
  t_override = true;
}

ScopedLimits::~ScopedLimits() {
  t_limits = saved_;
  t_override = had_override_;
}

}  // namespace delta
