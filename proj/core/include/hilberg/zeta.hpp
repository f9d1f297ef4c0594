#pragma once

#include <cstdint>

namespace hilberg {

struct ZetaValue {
    double s = 0.0;
    double value = 0.0;
    // Bound on the Euler-Maclaurin truncation of the series. Floating point
    // roundoff (about eps * value) is not included; near the pole at s = 1
    // the value itself is ~1/(s-1) and roundoff necessarily dominates.
    double abs_error_bound = 0.0;
};

// Riemann zeta on the real axis, s > 1 + 1e-6.
ZetaValue zeta(double s);

// Sum of j^-s for j >= start. Used for Zipf tail inversion; start >= 1.
double zeta_tail_from(double s, std::uint64_t start);

} // namespace hilberg
