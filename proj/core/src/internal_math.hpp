#pragma once

#include <cmath>
#include <cstdint>

namespace hilberg::detail {

// Thread-safe log-gamma: glibc's lgamma writes the sign to a global.
inline double lgamma_safe(double x) {
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

constexpr double kInvLn2 = 1.4426950408889634074;

inline double log2_factorial(std::uint64_t n) {
    return lgamma_safe(static_cast<double>(n) + 1.0) * kInvLn2;
}

inline double log2_binomial(std::uint64_t n, std::uint64_t k) {
    return log2_factorial(n) - log2_factorial(k) - log2_factorial(n - k);
}

// Kahan compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

} // namespace hilberg::detail
