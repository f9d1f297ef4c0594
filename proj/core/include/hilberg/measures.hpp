#pragma once

#include <cstdint>
#include <span>

#include "hilberg/process.hpp"

namespace hilberg {

// Impossible events are reported as -infinity rather than an error so that
// callers combining log probabilities can propagate them.
bool is_impossible_log2(double log2p);

// log2 Q(x_1^n) for the uniform-prior Bernoulli mixture:
// Q = 1 / ((n+1) * C(n, ones)). Exact via log-gamma.
double log2_prob_mixture_bernoulli(std::span<const std::uint8_t> bits);
double log2_prob_mixture_bernoulli_counts(std::uint64_t n, std::uint64_t ones);

// log2 Q for a Santa Fe kind: sum of Zipf log-pmfs minus the number of
// distinct active indices. Inconsistent bits for one index, or a set bit on a
// gated-off index, make the sequence impossible (-infinity).
double log2_prob_santa_fe(const ProcessSpec& spec, std::span<const Symbol> symbols);

// Expected block mutual information E I(n) between the two halves of a
// two-sided window of half-length n.
//
// Mixture: exact double sum over the joint law of the two ones-counts,
// O(n^2); refuses n > 2^14.
double expected_mi_mixture(std::uint64_t n);

// Santa Fe kinds: sum over indices of a_k * (1 - (1 - A k^{-1/beta})^n)^2
// with A = 1/zeta(1/beta). Terms up to a cutoff are summed directly; the
// remainder (every term below sqrt(tol/2)^2) is bracketed between integrals
// of the monotone term function, evaluated in closed form from a short
// series. Absolute error is below 2*tol.
double expected_mi_santa_fe(const ProcessSpec& spec, std::uint64_t n, double tol = 1e-8);

} // namespace hilberg
