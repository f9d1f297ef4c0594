#include "hilberg/schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hilberg/errors.hpp"
#include "hilberg/zeta.hpp"

namespace hilberg {
namespace {

// 1 - e^{-A}, the per-index hit probability floor used by both constraints.
double hit_floor(double a) { return -std::expm1(-a); }

std::uint64_t checked_int_pow(std::uint64_t base, unsigned p, const char* who) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < p; ++i) {
        acc *= base;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw resource_error(std::string(who) + ": integer power exceeds the 64-bit range");
    }
    return static_cast<std::uint64_t>(acc);
}

// base >= r^q, evaluated exactly; q <= 64. Saturates instead of overflowing.
bool int_pow_at_most(std::uint64_t r, unsigned q, std::uint64_t base) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < q; ++i) {
        acc *= r;
        if (acc > base) return false;
    }
    return true;
}

} // namespace

std::uint64_t floor_pow(std::uint64_t base, double expo) {
    if (expo < 0.0) throw parameter_error("floor_pow: negative exponent");
    if (base == 0) return 0;
    if (base == 1) return 1;

    double p = std::nearbyint(expo);
    if (std::fabs(expo - p) < 1e-12 && p >= 0.0 && p <= 63.0)
        return checked_int_pow(base, static_cast<unsigned>(p), "floor_pow");

    long double v = powl(static_cast<long double>(base), static_cast<long double>(expo));
    if (v >= 18446744073709551616.0L)
        throw resource_error("floor_pow: result exceeds the 64-bit range");

    // Near-integer results sit on a floor boundary; decide the side exactly
    // when 1/expo is an integer (base^expo >= r iff r^(1/expo) <= base).
    long double r = nearbyintl(v);
    if (r >= 1.0L && fabsl(v - r) <= 1e-9L * r) {
        std::uint64_t ri = static_cast<std::uint64_t>(r);
        double q = 1.0 / expo;
        double qr = std::nearbyint(q);
        if (std::fabs(q - qr) < 1e-9 && qr >= 1.0 && qr <= 64.0) {
            if (int_pow_at_most(ri, static_cast<unsigned>(qr), base)) return ri;
            return ri - 1;
        }
        return ri;
    }
    return static_cast<std::uint64_t>(floorl(v));
}

Schedule::Schedule(double beta, std::vector<Block> blocks) : beta_(beta), blocks_(std::move(blocks)) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw parameter_error("Schedule: beta must lie strictly inside (0,1)");
    const double a = 1.0 / zeta(1.0 / beta).value;
    const double shift = 1.0 + a * a * beta / (2.0 - beta);
    const double floor_w = hit_floor(a);

    std::uint64_t prev_on = 0; // floor(c_0^beta) with c_0 = 0
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        Block& blk = blocks_[i];
        const unsigned m = static_cast<unsigned>(i + 1);
        if (blk.b == 0 || blk.c == 0)
            throw parameter_error("Schedule: block bounds must be positive");
        if (std::fabs(blk.eps - beta / m) > 1e-12)
            throw parameter_error("Schedule: eps of block " + std::to_string(m) +
                                  " must equal beta/m");
        blk.off_end = floor_pow(blk.b, 2.0 * beta);
        blk.on_end = floor_pow(blk.c, beta);
        if (!(prev_on < blk.off_end && blk.off_end < blk.on_end))
            throw parameter_error("Schedule: block " + std::to_string(m) +
                                  " violates the range ordering");
        long double b_eps = powl(static_cast<long double>(blk.b), blk.eps);
        if (!(static_cast<long double>(prev_on) + shift <= b_eps + 1e-9L))
            throw parameter_error("Schedule: block " + std::to_string(m) +
                                  " starts too early for its eps");
        long double c_need = powl(static_cast<long double>(blk.c), beta - blk.eps);
        long double c_have = static_cast<long double>(blk.on_end - blk.off_end) * floor_w;
        if (!(c_have >= c_need - 1e-9L))
            throw parameter_error("Schedule: block " + std::to_string(m) +
                                  " has too few active indices for its eps");
        prev_on = blk.on_end;
    }
}

bool Schedule::active(std::uint64_t k) const {
    for (const Block& blk : blocks_) {
        if (k <= blk.off_end) return false;
        if (k <= blk.on_end) return true;
    }
    return false;
}

std::uint64_t Schedule::max_active_index() const {
    return blocks_.empty() ? 0 : blocks_.back().on_end;
}

std::string Schedule::to_json_string() const {
    nlohmann::ordered_json doc;
    doc["beta"] = beta_;
    doc["blocks"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& blk = blocks_[i];
        doc["blocks"].push_back({{"m", i + 1}, {"b", blk.b}, {"c", blk.c}, {"eps", blk.eps}});
    }
    return doc.dump(2) + "\n";
}

Schedule Schedule::from_json_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("schedule JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("beta") || !doc.contains("blocks"))
        throw parameter_error("schedule JSON: expected an object with beta and blocks");
    double beta;
    std::vector<Block> blocks;
    try {
        beta = doc.at("beta").get<double>();
        for (const auto& item : doc.at("blocks")) {
            Block blk;
            std::uint64_t m = item.at("m").get<std::uint64_t>();
            if (m != blocks.size() + 1)
                throw parameter_error("schedule JSON: blocks must be numbered 1..M in order");
            blk.b = item.at("b").get<std::uint64_t>();
            blk.c = item.at("c").get<std::uint64_t>();
            blk.eps = item.at("eps").get<double>();
            blocks.push_back(blk);
        }
    } catch (const nlohmann::json::exception& e) {
        throw parameter_error(std::string("schedule JSON: ") + e.what());
    }
    return Schedule(beta, std::move(blocks));
}

Schedule build_schedule(double beta, std::uint32_t num_blocks) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw parameter_error("build_schedule: beta must lie strictly inside (0,1)");
    if (num_blocks == 0)
        throw parameter_error("build_schedule: need at least one block");

    const double a = 1.0 / zeta(1.0 / beta).value;
    const double shift = 1.0 + a * a * beta / (2.0 - beta);
    // The builder reserves the squared hit floor: each index is seen on both
    // sides of the window independently, so the two-sided coverage rate is
    // the square of the one-sided one. The resulting schedule also clears the
    // one-sided check in the validating constructor, with room to spare.
    const double floor_w2 = hit_floor(a) * hit_floor(a);

    std::vector<Schedule::Block> blocks;
    std::uint64_t prev_on = 0;
    for (std::uint32_t m = 1; m <= num_blocks; ++m) {
        const double eps = beta / m;
        auto overflow = [&](const char* stage) {
            std::ostringstream msg;
            msg << "build_schedule: " << stage << " of block " << m
                << " exceeds the 64-bit range; largest feasible block count for beta=" << beta
                << " is " << (m - 1);
            return resource_error(msg.str());
        };
        try {

        // Smallest b with floor(b^{2 beta}) > prev_on and b^eps >= prev_on + shift.
        const long double b_rhs = static_cast<long double>(prev_on) + shift;
        long double lg = logl(b_rhs) / eps;
        if (lg >= 63.9L * 0.6931471805599453L) throw overflow("b");
        std::uint64_t b = static_cast<std::uint64_t>(expl(lg));
        if (b < 2) b = 2;
        while (b > 2 && powl(static_cast<long double>(b - 1), eps) >= b_rhs &&
               floor_pow(b - 1, 2.0 * beta) > prev_on)
            --b;
        while (powl(static_cast<long double>(b), eps) < b_rhs || floor_pow(b, 2.0 * beta) <= prev_on)
            ++b;
        const std::uint64_t off_end = floor_pow(b, 2.0 * beta);

        // Smallest c: walk the on-range size q = floor(c^beta) upward; within
        // one q the smallest c is the cheapest, and validity is monotone in q.
        auto smallest_c_for = [&](std::uint64_t q) {
            if (logl(static_cast<long double>(q)) / beta >= 63.9L * 0.6931471805599453L)
                throw overflow("c");
            long double x = powl(static_cast<long double>(q), 1.0L / beta);
            std::uint64_t c = static_cast<std::uint64_t>(ceill(x - 0.5L));
            if (c < 1) c = 1;
            while (floor_pow(c, beta) < q) ++c;
            while (c > 1 && floor_pow(c - 1, beta) >= q) --c;
            return c;
        };
        auto q_valid = [&](std::uint64_t q) {
            std::uint64_t c = smallest_c_for(q);
            long double need = powl(static_cast<long double>(c), beta - eps);
            return static_cast<long double>(q - off_end) * floor_w2 >= need;
        };

        std::uint64_t q_lo = off_end + 1, q_hi = q_lo;
        while (!q_valid(q_hi)) {
            if (q_hi > (std::numeric_limits<std::uint64_t>::max() >> 1)) throw overflow("c");
            q_lo = q_hi + 1;
            q_hi *= 2;
        }
        while (q_lo < q_hi) {
            std::uint64_t mid = q_lo + (q_hi - q_lo) / 2;
            if (q_valid(mid))
                q_hi = mid;
            else
                q_lo = mid + 1;
        }
        const std::uint64_t c = smallest_c_for(q_hi);

        blocks.push_back({b, c, eps, off_end, q_hi});
        prev_on = q_hi;

        } catch (const resource_error& e) {
            if (std::string(e.what()).rfind("build_schedule", 0) == 0) throw;
            throw overflow("range");
        }
    }
    return Schedule(beta, std::move(blocks));
}

} // namespace hilberg
