#pragma once

#include <cstdint>

namespace hilberg {

// SplitMix64 stream. The state walks a fixed 64-bit lattice and every output
// is a bijective mix of the counter, so a stream is fully determined by its
// starting state. Replicate streams are derived by remixing (master, replicate)
// and can therefore be generated in any order, or in parallel, without
// changing a single draw.
class RngStream {
public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    static RngStream for_replicate(std::uint64_t master_seed, std::uint64_t replicate) {
        std::uint64_t a = mix(master_seed + 0x9E3779B97F4A7C15ull);
        std::uint64_t b = mix(replicate * 0xBF58476D1CE4E5B9ull + 0x94D049BB133111EBull);
        return RngStream(mix(a ^ b));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform draw strictly inside (0,1): 53 mantissa bits, half-ulp offset.
    double next_double_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace hilberg
