#pragma once

#include <cstdint>
#include <vector>

#include "hilberg/process.hpp"
#include "hilberg/rng.hpp"

namespace hilberg {

// Inversion sampler for the Zipf law P(k) = k^{-1/beta} / zeta(1/beta),
// k >= 1, 0 < beta < 1. Draws with u below the precomputed prefix CDF are
// resolved by binary search in the table; rarer draws fall through to a
// doubling bracket plus bisection on the analytic tail of the CDF. The law
// is conditioned on K <= 2^62 by rejection: the excluded mass is ~5e-7 at
// beta = 0.75, ~2e-5 at beta = 0.8, negligible below, growing toward 1.
class ZipfSampler {
public:
    explicit ZipfSampler(double beta);

    std::uint64_t sample(RngStream& rng) const;

    double pmf(std::uint64_t k) const;
    double cdf(std::uint64_t k) const;
    double beta() const { return beta_; }
    double exponent() const { return s_; }
    double log2_pmf(std::uint64_t k) const;

private:
    std::uint64_t invert_tail(double target) const;

    double beta_ = 0.0;
    double s_ = 0.0;      // 1/beta
    double zeta_ = 0.0;   // zeta(s)
    double log2_zeta_ = 0.0;
    double tail_cap_cdf_ = 1.0; // acceptance threshold for K <= 2^62
    std::vector<double> prefix_cdf_; // prefix_cdf_[k-1] = P(K <= k), k <= kPrefixSize
    static constexpr std::uint64_t kPrefixSize = 4096;
};

// Cached per-beta sampler (thread local), for one-off draws.
std::uint64_t sample_zipf(double beta, RngStream& rng);
const ZipfSampler& zipf_sampler_for(double beta);

// Draw a two-sided window of half-length n. MixtureBernoulli draws one theta
// per window and then 2n conditionally independent bits; the Santa Fe kinds
// draw 2n Zipf indices and realize each distinct index's bit on first sight,
// so repeats agree across the whole window by construction. Identical
// (spec, n, rng state) give bitwise identical windows.
Window sample_window(const ProcessSpec& spec, std::size_t n, RngStream& rng);

} // namespace hilberg
