#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sched {

using TaskId = int32_t;
using ProcId = int32_t;
using Time = int64_t;

// Large but overflow-safe under addition; used for pruned/invalid states.
inline constexpr Time kInfiniteTime = std::numeric_limits<Time>::max() / 4;

// Exact ratio, reduced, denominator > 0. Communication-to-computation ratios
// stay rational throughout so CCR targets can be met exactly.
struct Ratio {
    long long num = 0;
    long long den = 1;

    Ratio() = default;
    Ratio(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Ratio: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Ratio& o) const { return num == o.num && den == o.den; }
};

} // namespace sched
