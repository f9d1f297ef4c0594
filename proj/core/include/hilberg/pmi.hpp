#pragma once

#include <cstdint>
#include <string>

#include "hilberg/process.hpp"

namespace hilberg {

// Positive logarithm: log2(x+1) for x >= 0, else 0. Subadditive over sums.
double log_plus(double x);

enum class PmiSource { ExactMeasure, Code };

struct PmiSample {
    std::uint64_t n = 0;     // window half-length
    double value = 0.0;      // bits; negative only for code-based values
    PmiSource source = PmiSource::ExactMeasure;
    std::string codec;       // empty for exact values
};

// Pointwise mutual information between the halves of the window under the
// process measure: -log2 Q(left) - log2 Q(right) + log2 Q(join).
//
// For the Santa Fe kinds the combination telescopes to the number of distinct
// active indices shared by the halves; the integer count is returned after
// cross-checking it against the floating combination.
PmiSample pmi_exact(const Window& w, const ProcessSpec& spec);

// Mixture pointwise MI as a function of the half ones-counts alone:
// log2((n+1)^2/(2n+1)) + log2(C(n,t) C(n,s) / C(2n,t+s)).
double pmi_mixture_closed_form(std::uint64_t t, std::uint64_t s, std::uint64_t n);

} // namespace hilberg
