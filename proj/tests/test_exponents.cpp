#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "doctest.h"
#include "hilberg/errors.hpp"
#include "hilberg/exponents.hpp"
#include "hilberg/measures.hpp"
#include "hilberg/pmi.hpp"
#include "hilberg/process.hpp"

using namespace hilberg;

namespace {

// Dispersion-free row: every replicate equals `value`, shift fixed at B.
CurveRecord flat_row(std::uint64_t n, double value, double B = 1.0) {
    CurveRecord r;
    r.n = n;
    r.replicates = 3;
    r.mean_mi = value;
    r.var_mi = 0.0;
    r.harmonic_mean_shifted = 1.0 / (value + B);
    r.B = B;
    r.source = "exact";
    return r;
}

std::map<std::uint64_t, double> power_trajectory(double beta, std::uint32_t k_min,
                                                 std::uint32_t k_max) {
    std::map<std::uint64_t, double> values;
    for (std::uint32_t k = k_min; k <= k_max; ++k) {
        std::uint64_t n = std::uint64_t{1} << k;
        values[n] = std::floor(std::pow(static_cast<double>(n), beta));
    }
    return values;
}

} // namespace

TEST_CASE("exponent_sequence normalizes dyadic value maps") {
    std::map<std::uint64_t, double> values = power_trajectory(0.5, 2, 20);
    auto seq = exponent_sequence(values, SequenceKind::Pointwise);
    REQUIRE(seq.size() == 19);
    CHECK(seq.front().k == 2);
    CHECK(seq.back().k == 20);
    // floor(sqrt(2^20)) = 1024, so the last ratio is log2(1025)/20.
    CHECK(seq.back().ratio == doctest::Approx(std::log2(1025.0) / 20.0).epsilon(1e-12));
    CHECK(seq.back().ratio == doctest::Approx(0.5000704).epsilon(1e-5));

    auto expected = exponent_sequence(values, SequenceKind::Expected);
    REQUIRE(expected.size() == seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(expected[i].k == seq[i].k);
        CHECK(expected[i].ratio == seq[i].ratio);
    }
}

TEST_CASE("exponent_sequence clamps nonpositive values to ratio zero") {
    std::map<std::uint64_t, double> values;
    for (std::uint32_t k = 2; k <= 10; ++k) values[std::uint64_t{1} << k] = 0.0;
    values[1 << 4] = -3.5;
    for (const RatioPoint& p : exponent_sequence(values, SequenceKind::Expected))
        CHECK(p.ratio == 0.0);
}

TEST_CASE("exponent_sequence on linear growth exceeds one") {
    std::map<std::uint64_t, double> values;
    for (std::uint32_t k = 2; k <= 20; ++k)
        values[std::uint64_t{1} << k] = static_cast<double>(std::uint64_t{1} << k);
    for (const RatioPoint& p : exponent_sequence(values, SequenceKind::Pointwise))
        CHECK(p.ratio > 1.0); // log2(n + 1) / log2(n) > 1
}

TEST_CASE("exponent_sequence rejects bad grids") {
    std::map<std::uint64_t, double> bad{{12, 1.0}};
    CHECK_THROWS_AS(exponent_sequence(bad, SequenceKind::Pointwise), parameter_error);
    std::map<std::uint64_t, double> small{{2, 1.0}};
    CHECK_THROWS_AS(exponent_sequence(small, SequenceKind::Pointwise), parameter_error);
    std::map<std::uint64_t, double> ok{{4, 1.0}};
    CHECK_NOTHROW(exponent_sequence(ok, SequenceKind::Pointwise));
}

TEST_CASE("estimate_limsup_liminf recovers a square-root trajectory") {
    auto seq = exponent_sequence(power_trajectory(0.5, 2, 20), SequenceKind::Pointwise);
    TailBounds b = estimate_limsup_liminf(seq);
    CHECK(b.plus >= b.minus);
    CHECK(b.plus == doctest::Approx(0.5).epsilon(0.02));
    CHECK(b.minus == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(b.plus - 0.5) < 0.01);
    CHECK(std::abs(b.minus - 0.5) < 0.01);
}

TEST_CASE("estimate_limsup_liminf on a constant ratio sequence") {
    std::vector<RatioPoint> seq;
    for (std::uint32_t k = 4; k <= 12; ++k) seq.push_back({k, 0.42});
    TailBounds b = estimate_limsup_liminf(seq);
    CHECK(b.plus == 0.42);
    CHECK(b.minus == 0.42);
}

TEST_CASE("estimate_limsup_liminf separates oscillating bounds") {
    std::vector<RatioPoint> seq;
    for (std::uint32_t k = 4; k <= 20; ++k) seq.push_back({k, k % 2 == 0 ? 0.7 : 0.2});
    TailBounds b = estimate_limsup_liminf(seq);
    CHECK(b.plus == doctest::Approx(0.7));
    CHECK(b.minus == doctest::Approx(0.2));
}

TEST_CASE("estimate_limsup_liminf window validation") {
    std::vector<RatioPoint> seq;
    for (std::uint32_t k = 4; k <= 7; ++k) seq.push_back({k, 0.5});
    // Four points cannot host a five-point tail window.
    CHECK_THROWS_AS(estimate_limsup_liminf(seq), parameter_error);

    std::vector<RatioPoint> longer;
    for (std::uint32_t k = 6; k <= 14; ++k) longer.push_back({k, 0.5});
    CHECK_THROWS_AS(estimate_limsup_liminf(longer, 4), parameter_error);  // below front
    CHECK_THROWS_AS(estimate_limsup_liminf(longer, 11), parameter_error); // room for 4 only
    CHECK_NOTHROW(estimate_limsup_liminf(longer, 10));

    std::vector<RatioPoint> gap;
    for (std::uint32_t k = 4; k <= 12; ++k)
        if (k != 9) gap.push_back({k, 0.5});
    CHECK_THROWS_AS(estimate_limsup_liminf(gap), parameter_error);

    std::vector<RatioPoint> unsorted{{6, 0.1}, {5, 0.2}, {7, 0.3}};
    CHECK_THROWS_AS(estimate_limsup_liminf(unsorted), parameter_error);
    CHECK_THROWS_AS(estimate_limsup_liminf({}), parameter_error);
}

TEST_CASE("estimate_epsilon on variance proportional to mean") {
    // var/mean == 1 everywhere, so the ratio is log2(2)/k and peaks at k0.
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 16; ++k) {
        CurveRecord r = flat_row(std::uint64_t{1} << k, 5.0);
        r.var_mi = 5.0;
        curve.push_back(r);
    }
    double eps = estimate_epsilon(curve);
    CHECK(eps == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("estimate_epsilon matches the growth exponent when var equals mean squared") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 16; ++k) {
        double mean = std::pow(2.0, 0.6 * k) - 1.0;
        CurveRecord r = flat_row(std::uint64_t{1} << k, mean);
        r.var_mi = mean * mean;
        curve.push_back(r);
    }
    CHECK(estimate_epsilon(curve) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("estimate_epsilon positivity check applies inside the window only") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 16; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, 2.0));
    curve.front().mean_mi = -1.0; // k = 4 sits below the default window start 8
    CHECK_NOTHROW(estimate_epsilon(curve));
    curve.back().mean_mi = 0.0;
    CHECK_THROWS_WITH_AS(estimate_epsilon(curve),
                         doctest::Contains("nonpositive mean"), parameter_error);
}

TEST_CASE("estimate_inverse_exponents equals the mean-based bounds without dispersion") {
    std::vector<CurveRecord> curve;
    std::map<std::uint64_t, double> means;
    for (std::uint32_t k = 4; k <= 14; ++k) {
        double v = std::pow(2.0, 0.4 * k);
        curve.push_back(flat_row(std::uint64_t{1} << k, v));
        means[std::uint64_t{1} << k] = v;
    }
    TailBounds zeta = estimate_inverse_exponents(curve, 1.0);
    TailBounds delta =
        estimate_limsup_liminf(exponent_sequence(means, SequenceKind::Expected));
    CHECK(zeta.plus == doctest::Approx(delta.plus).epsilon(1e-12));
    CHECK(zeta.minus == doctest::Approx(delta.minus).epsilon(1e-12));
}

TEST_CASE("estimate_inverse_exponents sits below the mean-based bounds under dispersion") {
    // Replicates split between 0 and 2*mean: harmonic mean of 1/(I+1) is
    // (mean+1)/(2*mean+1), so the recovered excess is mean/(mean+1) < mean.
    std::vector<CurveRecord> curve;
    std::map<std::uint64_t, double> means;
    for (std::uint32_t k = 4; k <= 14; ++k) {
        double m = std::pow(2.0, 0.5 * k);
        CurveRecord r = flat_row(std::uint64_t{1} << k, m);
        r.var_mi = m * m;
        r.harmonic_mean_shifted = (m + 1.0) / (2.0 * m + 1.0);
        curve.push_back(r);
        means[r.n] = m;
    }
    TailBounds zeta = estimate_inverse_exponents(curve, 1.0);
    TailBounds delta =
        estimate_limsup_liminf(exponent_sequence(means, SequenceKind::Expected));
    CHECK(zeta.plus <= delta.plus + 1e-12);
    CHECK(zeta.minus <= delta.minus + 1e-12);
    CHECK(zeta.plus < delta.plus); // strict at finite length
}

TEST_CASE("estimate_inverse_exponents rejects bad shifts") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 12; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, 3.0));
    CHECK_THROWS_AS(estimate_inverse_exponents(curve, 0.0), parameter_error);
    CHECK_THROWS_AS(estimate_inverse_exponents(curve, -1.0), parameter_error);

    curve.back().harmonic_mean_shifted = 1.2; // some sample had I + B < 1
    CHECK_THROWS_WITH_AS(estimate_inverse_exponents(curve, 1.0),
                         doctest::Contains("B too small"), parameter_error);
    curve.back().harmonic_mean_shifted = 0.0;
    CHECK_THROWS_AS(estimate_inverse_exponents(curve, 1.0), parameter_error);
}

TEST_CASE("fit_growth_models classifies a power-law analytic curve") {
    ProcessSpec spec = ProcessSpec::santa_fe(0.5);
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 8; k <= 20; ++k) {
        std::uint64_t n = std::uint64_t{1} << k;
        curve.push_back(flat_row(n, expected_mi_santa_fe(spec, n)));
    }
    GrowthFit fit = fit_growth_models(curve);
    CHECK(fit.classification == "power");
    CHECK(fit.power_slope == doctest::Approx(0.5).epsilon(0.04));
    CHECK(fit.power_r2 > 0.999);
    CHECK(fit.power_r2 > fit.log_r2 + 0.01);
}

TEST_CASE("fit_growth_models classifies the logarithmic mixture curve") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 2; k <= 13; ++k) {
        std::uint64_t n = std::uint64_t{1} << k;
        curve.push_back(flat_row(n, expected_mi_mixture(n)));
    }
    GrowthFit fit = fit_growth_models(curve);
    CHECK(fit.classification == "log");
    CHECK(fit.log_r2 > fit.power_r2 + 0.01);
    // Bits gained per doubling approach 1/2 from below on this range.
    CHECK(fit.log_slope > 0.3);
    CHECK(fit.log_slope < 0.6);
}

TEST_CASE("fit_growth_models is ambiguous on a constant curve") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 11; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, 3.0));
    GrowthFit fit = fit_growth_models(curve);
    CHECK(fit.classification == "ambiguous");
    CHECK(fit.power_r2 == 0.0);
    CHECK(fit.log_r2 == 0.0);
}

TEST_CASE("fit_growth_models input validation") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 8; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, 2.0));
    CHECK_THROWS_WITH_AS(fit_growth_models(curve), doctest::Contains("six"),
                         parameter_error);
    curve.push_back(flat_row(std::uint64_t{1} << 9, 0.0));
    CHECK_THROWS_WITH_AS(fit_growth_models(curve),
                         doctest::Contains("nonpositive mean"), parameter_error);
}

TEST_CASE("find_excess_witness locates doubling-subadditivity points") {
    // 2 log2(n) - log2(2n) = log2(n) - 1 turns nonnegative at n = 2.
    auto log_g = [](std::uint64_t n) { return std::log2(static_cast<double>(n)); };
    auto w = find_excess_witness(log_g, 1 << 20);
    REQUIRE(w.has_value());
    CHECK(*w == 2);

    // 2 sqrt(n) - sqrt(2n) = sqrt(n) (2 - sqrt 2) >= 0 from the start.
    auto sqrt_g = [](std::uint64_t n) { return std::sqrt(static_cast<double>(n)); };
    w = find_excess_witness(sqrt_g, 1 << 20);
    REQUIRE(w.has_value());
    CHECK(*w == 1);

    auto delayed = [](std::uint64_t n) {
        if (n < 8) return -1.0;
        return static_cast<double>(n) / std::log2(static_cast<double>(n));
    };
    w = find_excess_witness(delayed, 1 << 20);
    REQUIRE(w.has_value());
    CHECK(*w == 8);

    auto never = [](std::uint64_t n) { return -1.0 / static_cast<double>(n); };
    CHECK_FALSE(find_excess_witness(never, 1 << 10).has_value());

    CHECK_THROWS_AS(find_excess_witness(log_g, 3), parameter_error);
}

TEST_CASE("pointwise_exponents recovers synthetic growth exponents") {
    for (double beta : {0.2, 0.5, 0.8}) {
        CAPTURE(beta);
        TailBounds b = pointwise_exponents(power_trajectory(beta, 2, 20), 16);
        CHECK(std::abs(b.plus - beta) < 0.01);
        CHECK(std::abs(b.minus - beta) < 0.01);
    }
}

TEST_CASE("validate_report_orderings accepts consistent reports") {
    ExponentReport r;
    r.gamma_plus = 0.6;
    r.gamma_minus = 0.4;
    r.delta_plus = 0.55;
    r.delta_minus = 0.45;
    r.zeta_plus = 0.5;
    r.zeta_minus = 0.4;
    CHECK_NOTHROW(validate_report_orderings(r));
}

TEST_CASE("validate_report_orderings rejects each inversion") {
    ExponentReport base;
    base.gamma_plus = base.gamma_minus = 0.5;
    base.delta_plus = base.delta_minus = 0.5;
    base.zeta_plus = base.zeta_minus = 0.4;

    ExponentReport r = base;
    r.gamma_minus = 0.7;
    CHECK_THROWS_AS(validate_report_orderings(r), std::logic_error);

    r = base;
    r.delta_minus = 0.6;
    CHECK_THROWS_AS(validate_report_orderings(r), std::logic_error);

    r = base;
    r.zeta_minus = 0.45;
    r.zeta_plus = 0.41;
    CHECK_THROWS_AS(validate_report_orderings(r), std::logic_error);

    r = base;
    r.zeta_plus = 0.6; // above delta_plus
    CHECK_THROWS_AS(validate_report_orderings(r), std::logic_error);

    r = base;
    r.zeta_minus = 0.4;
    r.delta_minus = 0.3;
    r.delta_plus = 0.6;
    CHECK_THROWS_AS(validate_report_orderings(r), std::logic_error);
}

TEST_CASE("estimate_report on a dispersion-free curve collapses all exponents") {
    std::vector<CurveRecord> curve;
    std::vector<std::vector<double>> trajectories(3);
    for (std::uint32_t k = 4; k <= 12; ++k) {
        double v = std::pow(2.0, 0.3 * k);
        curve.push_back(flat_row(std::uint64_t{1} << k, v));
        for (auto& row : trajectories) row.push_back(v);
    }
    ExponentReport rep = estimate_report(curve, std::nullopt, &trajectories);
    CHECK(rep.gamma_source == "pointwise");
    CHECK(rep.k_min == 4);
    CHECK(rep.k_max == 12);
    CHECK(rep.k0 == 6);
    CHECK(rep.B == 1.0);
    CHECK(rep.epsilon_hat == 0.0);
    CHECK(rep.gamma_plus == doctest::Approx(rep.delta_plus).epsilon(1e-12));
    CHECK(rep.gamma_minus == doctest::Approx(rep.delta_minus).epsilon(1e-12));
    CHECK(rep.zeta_plus == doctest::Approx(rep.delta_plus).epsilon(1e-12));
    CHECK(rep.zeta_minus == doctest::Approx(rep.delta_minus).epsilon(1e-12));
    REQUIRE(rep.fit.has_value());
    CHECK(rep.fit->classification == "power");
    CHECK_NOTHROW(validate_report_orderings(rep));
}

TEST_CASE("estimate_report falls back to the expected curve without trajectories") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 12; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, std::pow(2.0, 0.3 * k)));
    ExponentReport rep = estimate_report(curve);
    CHECK(rep.gamma_source == "expected-curve");
    CHECK(rep.gamma_plus == rep.delta_plus);
    CHECK(rep.gamma_minus == rep.delta_minus);
}

TEST_CASE("estimate_report input validation") {
    std::vector<CurveRecord> curve;
    for (std::uint32_t k = 4; k <= 12; ++k)
        curve.push_back(flat_row(std::uint64_t{1} << k, 2.0));

    std::vector<CurveRecord> dup = curve;
    dup.push_back(flat_row(16, 2.0));
    CHECK_THROWS_WITH_AS(estimate_report(dup), doctest::Contains("duplicate"),
                         parameter_error);

    std::vector<CurveRecord> off_grid = curve;
    off_grid.push_back(flat_row(48, 2.0));
    CHECK_THROWS_AS(estimate_report(off_grid), parameter_error);

    std::vector<CurveRecord> few(curve.begin(), curve.begin() + 4);
    CHECK_THROWS_WITH_AS(estimate_report(few), doctest::Contains("five"),
                         parameter_error);

    std::vector<CurveRecord> mixed_b = curve;
    mixed_b.back().B = 2.0;
    CHECK_THROWS_WITH_AS(estimate_report(mixed_b), doctest::Contains("shift"),
                         parameter_error);

    std::vector<std::vector<double>> bad_traj{{1.0, 2.0}};
    CHECK_THROWS_AS(estimate_report(curve, std::nullopt, &bad_traj), parameter_error);
}
