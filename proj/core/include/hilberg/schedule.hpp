#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hilberg {

// On/off gating of statement indices for the modified Santa Fe process.
// Block m switches indices in (floor(b_m^{2*beta}), floor(c_m^beta)] on and
// leaves the gap (floor(c_{m-1}^beta), floor(b_m^{2*beta})] off, with
// eps_m = beta/m. Indices beyond the last block are off. A schedule with no
// blocks gates everything off.
class Schedule {
public:
    struct Block {
        std::uint64_t b = 0;
        std::uint64_t c = 0;
        double eps = 0.0;
        // Cached range edges: off on (prev_on, off_end], on on (off_end, on_end].
        std::uint64_t off_end = 0; // floor(b^{2*beta})
        std::uint64_t on_end = 0;  // floor(c^beta)
    };

    Schedule() = default;
    // Validates block ordering, eps values and the growth constraints; throws
    // parameter_error on violation.
    Schedule(double beta, std::vector<Block> blocks);

    double beta() const { return beta_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

    // a_k for k >= 1.
    bool active(std::uint64_t k) const;
    // Largest index with a_k = 1, or 0 when there is none.
    std::uint64_t max_active_index() const;

    std::string to_json_string() const;
    static Schedule from_json_string(const std::string& text);

private:
    double beta_ = 0.0;
    std::vector<Block> blocks_;
};

// Smallest (b_m, c_m) pairs, block by block, satisfying the gating
// constraints for the given beta. Throws resource_error when the next block
// would leave the 64-bit integer range; the message reports the largest
// feasible block count.
Schedule build_schedule(double beta, std::uint32_t num_blocks);

// floor(base^expo) with an integer fix-up pass so exact powers land on the
// right side of the boundary.
std::uint64_t floor_pow(std::uint64_t base, double expo);

} // namespace hilberg
