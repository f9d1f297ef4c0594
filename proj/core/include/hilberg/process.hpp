#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hilberg/errors.hpp"
#include "hilberg/schedule.hpp"

namespace hilberg {

enum class ProcessKind { MixtureBernoulli, SantaFe, ModifiedSantaFe };

// One time step of a realization. MixtureBernoulli uses only `bit`; the Santa
// Fe kinds carry an (index, bit) pair with index >= 1.
struct Symbol {
    std::uint64_t index = 0;
    std::uint8_t bit = 0;
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

class ProcessSpec {
public:
    static ProcessSpec mixture_bernoulli();
    static ProcessSpec santa_fe(double beta);
    static ProcessSpec modified_santa_fe(double beta, Schedule schedule);

    ProcessKind kind() const { return kind_; }
    bool is_santa_fe_kind() const { return kind_ != ProcessKind::MixtureBernoulli; }
    double beta() const { return beta_; }
    const Schedule& schedule() const;

    // a_k. Always 1 for the plain Santa Fe process.
    bool index_active(std::uint64_t k) const {
        return kind_ == ProcessKind::SantaFe || (schedule_ && schedule_->active(k));
    }

    std::string name() const;

private:
    ProcessKind kind_ = ProcessKind::MixtureBernoulli;
    double beta_ = 0.0;
    std::shared_ptr<const Schedule> schedule_;
};

// Two-sided block of half-length n: `left` holds positions -n+1..0 and
// `right` positions 1..n, both in time order.
struct Window {
    std::vector<Symbol> left;
    std::vector<Symbol> right;

    std::size_t half_len() const { return left.size(); }

    // Central sub-window of half-length m <= half_len(): the m positions
    // adjacent to the origin on each side. Slices of one realization stay
    // mutually consistent.
    Window inner(std::size_t m) const {
        if (m == 0 || m > left.size() || left.size() != right.size())
            throw parameter_error("Window::inner: bad sub-window length");
        Window w;
        w.left.assign(left.end() - static_cast<std::ptrdiff_t>(m), left.end());
        w.right.assign(right.begin(), right.begin() + static_cast<std::ptrdiff_t>(m));
        return w;
    }
};

} // namespace hilberg
