#include "tsr/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsr/error.hpp"
#include "tsr/graph.hpp"

namespace tsr {

namespace {

void require_admissible(std::int64_t delta, int r) {
  if (delta < 2) throw Error(ErrorCode::DegenerateGraph, "max degree " + std::to_string(delta) + " < 2");
  if (r < 2) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r) + ", need r >= 2");
}

}  // namespace

double small_step_real(std::int64_t delta, int r) {
  const double d = static_cast<double>(delta);
  const double ln = std::log(d);
  return std::pow(d, r - 4.0 / 3.0) * ln * ln;
}

Params params_with_small_step(std::int64_t delta, int r, std::int64_t small_step) {
  require_admissible(delta, r);
  if (small_step < 1) throw Error(ErrorCode::ParameterOutOfRange, "small step must be >= 1");
  Params p;
  p.r = r;
  p.delta = delta;
  p.small_step = small_step;
  std::int64_t twice_big = 0;
  if (__builtin_add_overflow(checked_pow(delta, r - 1), small_step, &p.big_step) ||
      __builtin_mul_overflow(p.big_step, 2, &twice_big) ||
      __builtin_add_overflow(twice_big, small_step, &p.palette_cap) ||
      __builtin_add_overflow(p.palette_cap, 1, &p.palette_cap)) {
    throw Error(ErrorCode::ParameterOutOfRange, "palette for Delta=" + std::to_string(delta) +
                                                    ", r=" + std::to_string(r) + " overflows int64");
  }
  p.vertex_cap = p.big_step + 1;
  return p;
}

Params derive_params(std::int64_t delta, int r) {
  require_admissible(delta, r);
  const double x = std::ceil(small_step_real(delta, r));
  // 2^63 is exactly representable; anything at or above it cannot be an int64.
  if (!(x < 0x1.0p63)) {
    throw Error(ErrorCode::ParameterOutOfRange, "small step overflows int64");
  }
  return params_with_small_step(delta, r, std::max<std::int64_t>(1, static_cast<std::int64_t>(x)));
}

Params Params::escalated() const {
  std::int64_t doubled = 0;
  if (__builtin_mul_overflow(small_step, 2, &doubled)) {
    throw Error(ErrorCode::ParameterOutOfRange, "escalated small step overflows int64");
  }
  auto next = params_with_small_step(delta, r, doubled);
  next.escalation_level = escalation_level + 1;
  return next;
}

TheoremBounds theorem_bounds(std::int64_t delta, int r) {
  require_admissible(delta, r);
  const auto base = checked_pow(delta, r - 1);
  TheoremBounds out{};
  out.improved = 2.0L * static_cast<long double>(base) +
                 3.0L * static_cast<long double>(small_step_real(delta, r)) + 4.0L;
  if (__builtin_mul_overflow(base, 3, &out.prior)) {
    throw Error(ErrorCode::ParameterOutOfRange, "prior bound overflows int64");
  }
  return out;
}

void TotalColoring::recompute_max_color() {
  max_color = 0;
  for (auto c : vertex_colors) max_color = std::max(max_color, c);
  for (auto c : edge_colors) max_color = std::max(max_color, c);
}

}  // namespace tsr
