#include "hilberg/measures.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>
#include <vector>

#include "hilberg/errors.hpp"
#include "hilberg/sampling.hpp"
#include "hilberg/zeta.hpp"
#include "internal_math.hpp"

namespace hilberg {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

bool is_impossible_log2(double log2p) {
    return std::isinf(log2p) && log2p < 0.0;
}

double log2_prob_mixture_bernoulli_counts(std::uint64_t n, std::uint64_t ones) {
    if (n == 0) throw parameter_error("log2_prob_mixture_bernoulli: empty sequence");
    if (ones > n) throw parameter_error("log2_prob_mixture_bernoulli: ones > n");
    return -std::log2(static_cast<double>(n) + 1.0) - detail::log2_binomial(n, ones);
}

double log2_prob_mixture_bernoulli(std::span<const std::uint8_t> bits) {
    std::uint64_t ones = 0;
    for (std::uint8_t b : bits) {
        if (b > 1) throw parameter_error("log2_prob_mixture_bernoulli: symbols must be bits");
        ones += b;
    }
    return log2_prob_mixture_bernoulli_counts(bits.size(), ones);
}

double log2_prob_santa_fe(const ProcessSpec& spec, std::span<const Symbol> symbols) {
    if (!spec.is_santa_fe_kind())
        throw parameter_error("log2_prob_santa_fe: process is not a Santa Fe kind");
    if (symbols.empty()) throw parameter_error("log2_prob_santa_fe: empty sequence");

    const ZipfSampler& sampler = zipf_sampler_for(spec.beta());
    std::unordered_map<std::uint64_t, std::uint8_t> seen;
    seen.reserve(symbols.size());
    detail::Kahan index_mass;
    std::uint64_t distinct_active = 0;
    for (const Symbol& sym : symbols) {
        if (sym.index == 0) throw parameter_error("log2_prob_santa_fe: index must be >= 1");
        if (sym.bit > 1) throw parameter_error("log2_prob_santa_fe: value must be a bit");
        index_mass.add(sampler.log2_pmf(sym.index));
        bool active = spec.index_active(sym.index);
        if (!active && sym.bit != 0) return kNegInf; // gated-off index forces 0
        auto [it, fresh] = seen.emplace(sym.index, sym.bit);
        if (fresh) {
            if (active) ++distinct_active;
        } else if (it->second != sym.bit) {
            return kNegInf; // one shared bit per index
        }
    }
    return index_mass.sum - static_cast<double>(distinct_active);
}

double expected_mi_mixture(std::uint64_t n) {
    if (n == 0) throw parameter_error("expected_mi_mixture: n must be >= 1");
    if (n > (std::uint64_t{1} << 14))
        throw resource_error("expected_mi_mixture: n > 2^14 makes the exact double sum "
                             "impractical; use Monte Carlo simulation instead");

    // I(T;S) = sum_{t,s} P(t,s) log2[P(t,s) (n+1)^2] with
    // P(t,s) = C(n,t) C(n,s) / ((2n+1) C(2n,t+s)).
    std::vector<double> lb_n(n + 1), lb_2n(2 * n + 1);
    for (std::uint64_t t = 0; t <= n; ++t) lb_n[t] = detail::log2_binomial(n, t);
    for (std::uint64_t w = 0; w <= 2 * n; ++w) lb_2n[w] = detail::log2_binomial(2 * n, w);
    const double log2_2n1 = std::log2(2.0 * static_cast<double>(n) + 1.0);
    const double log2_n1sq = 2.0 * std::log2(static_cast<double>(n) + 1.0);

    detail::Kahan mi;
    for (std::uint64_t t = 0; t <= n; ++t) {
        for (std::uint64_t s = 0; s <= n; ++s) {
            double lp = lb_n[t] + lb_n[s] - lb_2n[t + s] - log2_2n1;
            mi.add(std::exp2(lp) * (lp + log2_n1sq));
        }
    }
    return mi.sum;
}

double expected_mi_santa_fe(const ProcessSpec& spec, std::uint64_t n, double tol) {
    if (!spec.is_santa_fe_kind())
        throw parameter_error("expected_mi_santa_fe: process is not a Santa Fe kind");
    if (n == 0) throw parameter_error("expected_mi_santa_fe: n must be >= 1");
    if (!(tol > 1e-12) || !(tol < 1e-2))
        throw parameter_error("expected_mi_santa_fe: tol must lie in (1e-12, 1e-2)");

    const double beta = spec.beta();
    const double s = 1.0 / beta;
    const double a = 1.0 / zeta(s).value;
    const double nd = static_cast<double>(n);
    // (1 - (1 - A k^{-1/beta})^n)^2, evaluated through expm1 so deep-tail
    // terms keep full relative precision.
    auto term = [&](std::uint64_t k) {
        double u = a * std::pow(static_cast<double>(k), -s);
        double one_m = -std::expm1(nd * std::log1p(-u));
        return one_m * one_m;
    };

    if (spec.kind() == ProcessKind::ModifiedSantaFe) {
        // Finitely many indices are gated on, so the series is a finite sum.
        detail::Kahan sum;
        for (const Schedule::Block& blk : spec.schedule().blocks())
            for (std::uint64_t k = blk.off_end + 1; k <= blk.on_end; ++k) sum.add(term(k));
        return sum.sum;
    }

    // Head: every k with n A k^{-1/beta} > eps0, so the remainder terms are
    // all below eps0^2 <= tol/2.
    const double eps0 = std::min(1e-4, std::sqrt(tol / 2.0));
    std::uint64_t head_end = static_cast<std::uint64_t>(std::ceil(std::pow(nd * a / eps0, beta)));
    if (head_end < 16) head_end = 16;
    detail::Kahan head;
    for (std::uint64_t k = 1; k <= head_end; ++k) head.add(term(k));

    // Remainder: the term function is decreasing, so the sum over k > K lies
    // between the integrals from K+1 and from K. Substituting u = A x^{-1/beta}
    // turns each integral into beta A^beta n^2 sum_j e_j w^{2-beta+j}/(2-beta+j)
    // where sum_j e_j u^j is the square of (1-(1-u)^n)/(nu) expanded around 0;
    // with n u <= eps0 a handful of coefficients is exact to working precision.
    constexpr int kTerms = 8;
    double d[kTerms], e[kTerms];
    d[0] = 1.0;
    for (int j = 1; j < kTerms; ++j)
        d[j] = -d[j - 1] * (nd - j) / static_cast<double>(j + 1);
    for (int j = 0; j < kTerms; ++j) {
        e[j] = 0.0;
        for (int i = 0; i <= j; ++i) e[j] += d[i] * d[j - i];
    }
    auto tail_integral_from = [&](double x0) {
        double w = a * std::pow(x0, -s);
        double sum = 0.0;
        for (int j = kTerms - 1; j >= 0; --j)
            sum = sum * w + e[j] / (2.0 - beta + j);
        return beta * std::pow(a, beta) * nd * nd * std::pow(w, 2.0 - beta) * sum;
    };
    double hi = tail_integral_from(static_cast<double>(head_end));
    double lo = tail_integral_from(static_cast<double>(head_end) + 1.0);
    return head.sum + 0.5 * (hi + lo);
}

} // namespace hilberg
