#pragma once

#include "tempqa/kg/timestamp.hpp"
#include "tempqa/numeric/tensor.hpp"

namespace tempqa::numeric {

// Sinusoidal encoding of one position: [sin(k/10000^(2i/d)), cos(k/10000^(2i/d))]
// interleaved for i = 0 .. d/2-1. ContractViolation for odd or non-positive d.
Tensor position_encode(double k, int d);

// Day positions start after the month positions so that month/day swaps
// (January 2 vs February 1) encode differently.
inline constexpr int kDayOffset = 12;

// Sum of position encodings of (year - epoch), month and kDayOffset + day,
// skipping absent month/day. Injective while year - epoch stays outside
// [1, kDayOffset + 31].
Tensor time_encode(const kg::Timestamp& ts, int d, int epoch = 1000);

}  // namespace tempqa::numeric
