#include "hilberg/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "hilberg/errors.hpp"
#include "hilberg/zeta.hpp"

namespace hilberg {

ProcessSpec ProcessSpec::mixture_bernoulli() {
    return ProcessSpec{};
}

ProcessSpec ProcessSpec::santa_fe(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw parameter_error("ProcessSpec: beta must lie strictly inside (0,1)");
    ProcessSpec spec;
    spec.kind_ = ProcessKind::SantaFe;
    spec.beta_ = beta;
    return spec;
}

ProcessSpec ProcessSpec::modified_santa_fe(double beta, Schedule schedule) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw parameter_error("ProcessSpec: beta must lie strictly inside (0,1)");
    // An empty schedule gates everything off; its beta carries no geometry.
    if (!schedule.empty() && schedule.beta() != beta)
        throw parameter_error("ProcessSpec: schedule beta does not match the process beta");
    ProcessSpec spec;
    spec.kind_ = ProcessKind::ModifiedSantaFe;
    spec.beta_ = beta;
    spec.schedule_ = std::make_shared<const Schedule>(std::move(schedule));
    return spec;
}

const Schedule& ProcessSpec::schedule() const {
    if (!schedule_) throw parameter_error("ProcessSpec: no schedule attached");
    return *schedule_;
}

std::string ProcessSpec::name() const {
    switch (kind_) {
    case ProcessKind::MixtureBernoulli: return "mixture";
    case ProcessKind::SantaFe: return "santa-fe";
    case ProcessKind::ModifiedSantaFe: return "modified-santa-fe";
    }
    return "unknown";
}

ZipfSampler::ZipfSampler(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0))
        throw parameter_error("ZipfSampler: beta must lie strictly inside (0,1)");
    beta_ = beta;
    s_ = 1.0 / beta;
    zeta_ = zeta(s_).value;
    log2_zeta_ = std::log2(zeta_);
    prefix_cdf_.resize(kPrefixSize);
    double sum = 0.0, comp = 0.0; // Kahan, so the table is monotone
    for (std::uint64_t k = 1; k <= kPrefixSize; ++k) {
        double term = std::pow(static_cast<double>(k), -s_) / zeta_;
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        prefix_cdf_[k - 1] = sum < 1.0 ? sum : 1.0;
    }
    // The nudge keeps every accepted u strictly invertible below the cap.
    tail_cap_cdf_ =
        1.0 - (zeta_tail_from(s_, (std::uint64_t{1} << 62) + 1) / zeta_) * (1.0 + 1e-12);
}

double ZipfSampler::pmf(std::uint64_t k) const {
    if (k == 0) throw parameter_error("ZipfSampler::pmf: k must be >= 1");
    return std::pow(static_cast<double>(k), -s_) / zeta_;
}

double ZipfSampler::log2_pmf(std::uint64_t k) const {
    if (k == 0) throw parameter_error("ZipfSampler::log2_pmf: k must be >= 1");
    return -s_ * std::log2(static_cast<double>(k)) - log2_zeta_;
}

double ZipfSampler::cdf(std::uint64_t k) const {
    if (k == 0) return 0.0;
    if (k <= kPrefixSize) return prefix_cdf_[k - 1];
    return 1.0 - zeta_tail_from(s_, k + 1) / zeta_;
}

std::uint64_t ZipfSampler::invert_tail(double target) const {
    // Smallest k with cdf(k) >= target, searched in residual-mass space to
    // dodge cancellation near 1.
    const double resid = (1.0 - target) * zeta_;
    std::uint64_t lo = kPrefixSize; // known: cdf(lo) < target
    std::uint64_t hi = kPrefixSize * 2;
    while (zeta_tail_from(s_, hi + 1) > resid) {
        lo = hi;
        if (hi > (std::uint64_t{1} << 62))
            throw resource_error("ZipfSampler: tail inversion beyond 2^62");
        hi *= 2;
    }
    while (lo + 1 < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (zeta_tail_from(s_, mid + 1) > resid)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

std::uint64_t ZipfSampler::sample(RngStream& rng) const {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double u = rng.next_double_open01();
        if (u > tail_cap_cdf_) continue; // mass beyond 2^62, redraw
        if (u <= prefix_cdf_.back()) {
            auto it = std::lower_bound(prefix_cdf_.begin(), prefix_cdf_.end(), u);
            return static_cast<std::uint64_t>(it - prefix_cdf_.begin()) + 1;
        }
        return invert_tail(u);
    }
    throw resource_error("ZipfSampler: rejection loop failed to terminate");
}

const ZipfSampler& zipf_sampler_for(double beta) {
    thread_local std::map<double, ZipfSampler> cache;
    auto it = cache.find(beta);
    if (it == cache.end()) it = cache.emplace(beta, ZipfSampler(beta)).first;
    return it->second;
}

std::uint64_t sample_zipf(double beta, RngStream& rng) {
    return zipf_sampler_for(beta).sample(rng);
}

Window sample_window(const ProcessSpec& spec, std::size_t n, RngStream& rng) {
    if (n == 0) throw parameter_error("sample_window: n must be >= 1");
    Window w;
    w.left.reserve(n);
    w.right.reserve(n);

    if (spec.kind() == ProcessKind::MixtureBernoulli) {
        // One bias per window: the window is one realization of the mixture.
        double theta = rng.next_double_open01();
        for (std::size_t i = 0; i < 2 * n; ++i) {
            Symbol sym;
            sym.bit = rng.next_double_open01() < theta ? 1 : 0;
            (i < n ? w.left : w.right).push_back(sym);
        }
        return w;
    }

    const ZipfSampler& sampler = zipf_sampler_for(spec.beta());
    std::unordered_map<std::uint64_t, std::uint8_t> realized;
    realized.reserve(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        std::uint64_t k = sampler.sample(rng);
        auto it = realized.find(k);
        if (it == realized.end()) {
            // Z_k is realized on first sight whether or not the index is
            // gated on, so draw order is schedule independent.
            std::uint8_t z = rng.next_bit() ? 1 : 0;
            it = realized.emplace(k, z).first;
        }
        Symbol sym;
        sym.index = k;
        sym.bit = spec.index_active(k) ? it->second : 0;
        (i < n ? w.left : w.right).push_back(sym);
    }
    return w;
}

} // namespace hilberg
