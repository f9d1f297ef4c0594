#include "hilberg/pmi.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hilberg/errors.hpp"
#include "hilberg/measures.hpp"
#include "internal_math.hpp"

namespace hilberg {

double log_plus(double x) {
    return x >= 0.0 ? std::log2(x + 1.0) : 0.0;
}

double pmi_mixture_closed_form(std::uint64_t t, std::uint64_t s, std::uint64_t n) {
    if (n == 0) throw parameter_error("pmi_mixture_closed_form: n must be >= 1");
    if (t > n || s > n) throw parameter_error("pmi_mixture_closed_form: counts must be <= n");
    double np1 = static_cast<double>(n) + 1.0;
    return 2.0 * std::log2(np1) - std::log2(2.0 * static_cast<double>(n) + 1.0) +
           detail::log2_binomial(n, t) + detail::log2_binomial(n, s) -
           detail::log2_binomial(2 * n, t + s);
}

namespace {

double mixture_pmi(const Window& w) {
    std::uint64_t t = 0, s = 0;
    for (const Symbol& sym : w.left) t += sym.bit;
    for (const Symbol& sym : w.right) s += sym.bit;
    std::uint64_t n = w.half_len();
    // The measure combination collapses to counts: the (n+1) and binomial
    // factors of the halves against those of the join.
    double ll = log2_prob_mixture_bernoulli_counts(n, t);
    double lr = log2_prob_mixture_bernoulli_counts(n, s);
    double lj = log2_prob_mixture_bernoulli_counts(2 * n, t + s);
    return -ll - lr + lj;
}

double santa_fe_pmi(const Window& w, const ProcessSpec& spec) {
    std::unordered_map<std::uint64_t, std::uint8_t> bits;
    bits.reserve(2 * w.half_len());
    std::unordered_set<std::uint64_t> left_active;
    std::uint64_t shared = 0;
    for (const Symbol& sym : w.left) {
        if (sym.index == 0) throw parameter_error("pmi_exact: index must be >= 1");
        bool active = spec.index_active(sym.index);
        if (!active && sym.bit != 0)
            throw impossible_event_error("pmi_exact: nonzero value on a gated-off index");
        auto [it, fresh] = bits.emplace(sym.index, sym.bit);
        if (!fresh && it->second != sym.bit)
            throw impossible_event_error("pmi_exact: conflicting values for one index");
        if (active) left_active.insert(sym.index);
    }
    std::unordered_set<std::uint64_t> counted;
    for (const Symbol& sym : w.right) {
        if (sym.index == 0) throw parameter_error("pmi_exact: index must be >= 1");
        bool active = spec.index_active(sym.index);
        if (!active && sym.bit != 0)
            throw impossible_event_error("pmi_exact: nonzero value on a gated-off index");
        auto [it, fresh] = bits.emplace(sym.index, sym.bit);
        if (!fresh && it->second != sym.bit)
            throw impossible_event_error("pmi_exact: conflicting values for one index");
        if (active && left_active.count(sym.index) && counted.insert(sym.index).second) ++shared;
    }

    // Cross-check: combining the three log probabilities telescopes the Zipf
    // factors away and leaves the shared-active-index count up to roundoff.
    std::vector<Symbol> joined(w.left);
    joined.insert(joined.end(), w.right.begin(), w.right.end());
    double ll = log2_prob_santa_fe(spec, w.left);
    double lr = log2_prob_santa_fe(spec, w.right);
    double lj = log2_prob_santa_fe(spec, joined);
    double combined = -ll - lr + lj;
    if (std::fabs(combined - static_cast<double>(shared)) > 1e-6)
        throw std::logic_error("pmi_exact: measure combination disagrees with the "
                               "shared-index count");
    return static_cast<double>(shared);
}

} // namespace

PmiSample pmi_exact(const Window& w, const ProcessSpec& spec) {
    if (w.left.empty() || w.left.size() != w.right.size())
        throw parameter_error("pmi_exact: window halves must be nonempty and equal length");
    PmiSample out;
    out.n = w.half_len();
    out.source = PmiSource::ExactMeasure;
    out.value = spec.is_santa_fe_kind() ? santa_fe_pmi(w, spec) : mixture_pmi(w);
    return out;
}

} // namespace hilberg
