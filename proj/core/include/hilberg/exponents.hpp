#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hilberg {

// One dyadic grid point of an aggregated mutual information curve.
struct CurveRecord {
    std::uint64_t n = 0;          // power of two
    std::uint64_t replicates = 0;
    double mean_mi = 0.0;
    double var_mi = 0.0;          // unbiased sample variance, 0 for analytic rows
    double harmonic_mean_shifted = 0.0; // mean of 1/(I + B)
    double B = 1.0;               // shift, min sampled I + B >= 1
    std::optional<double> analytic_mi;
    std::string source;           // "exact", "code:lz78", "analytic", ...
};

enum class SequenceKind { Pointwise, Expected };

struct RatioPoint {
    std::uint32_t k = 0; // log2 n
    double ratio = 0.0;  // log_plus(value) / k
};

// log_plus(values[n]) / log2(n) on a dyadic grid. Every key must be a power
// of two with exponent >= 2.
std::vector<RatioPoint> exponent_sequence(const std::map<std::uint64_t, double>& values,
                                          SequenceKind kind);

struct TailBounds {
    double plus = 0.0;  // max over the tail window
    double minus = 0.0; // min over the tail window
};

// Max/min of the ratio sequence over k in [k0, k_max]. k0 defaults to
// ceil(k_max/2), clamped so the window keeps at least five points; the
// sequence must cover the window and satisfy k_max >= k0 + 4.
TailBounds estimate_limsup_liminf(const std::vector<RatioPoint>& seq,
                                  std::optional<std::uint32_t> k0 = std::nullopt);

// Dispersion gap: max over the tail window of log_plus(var/mean) / log2 n.
// Means must be positive on the window.
double estimate_epsilon(const std::vector<CurveRecord>& curve,
                        std::optional<std::uint32_t> k0 = std::nullopt);

// Inverse-moment exponents from the harmonic_mean_shifted column:
// ratio_k = log_plus(1/harmonic - B) / k. Subtracting the shift keeps the
// estimate equal to the mean-based one on dispersion-free curves and below it
// otherwise (Jensen), at any finite length.
TailBounds estimate_inverse_exponents(const std::vector<CurveRecord>& curve, double B,
                                      std::optional<std::uint32_t> k0 = std::nullopt);

struct GrowthFit {
    double power_slope = 0.0; // log2(mean) on log2(n)
    double power_r2 = 0.0;
    double log_slope = 0.0;   // mean on log2(n), bits per doubling
    double log_r2 = 0.0;
    std::string classification; // "power", "log" or "ambiguous"
};

// Unweighted least squares of both growth models on the full curve; needs at
// least six points and positive means. Whichever model leads by an R^2
// margin of 0.01 wins, otherwise "ambiguous".
GrowthFit fit_growth_models(const std::vector<CurveRecord>& curve);

// Smallest n with 2n <= n_max and 2 G(n) - G(2n) >= 0.
std::optional<std::uint64_t> find_excess_witness(const std::function<double(std::uint64_t)>& g,
                                                 std::uint64_t n_max);

struct ExponentReport {
    double gamma_plus = 0.0, gamma_minus = 0.0; // pointwise
    double delta_plus = 0.0, delta_minus = 0.0; // expected
    double zeta_plus = 0.0, zeta_minus = 0.0;   // inverse expected
    double epsilon_hat = 0.0;
    std::optional<GrowthFit> fit; // absent when the curve has under six points
    std::uint32_t k_min = 0, k_max = 0, k0 = 0;
    double B = 1.0;
    std::string gamma_source; // "pointwise" or "expected-curve"
};

// Assembles a report from an aggregated curve. When per-replicate pointwise
// trajectories are available (rows = replicates, columns = the curve's grid
// in ascending n), gamma_* average the per-replicate tail bounds; otherwise
// they fall back to the expected-curve estimates.
ExponentReport estimate_report(const std::vector<CurveRecord>& curve,
                               std::optional<std::uint32_t> k0 = std::nullopt,
                               const std::vector<std::vector<double>>* trajectories = nullptr);

// Tail bounds of one pointwise trajectory given as a dyadic value map.
TailBounds pointwise_exponents(const std::map<std::uint64_t, double>& trajectory,
                               std::optional<std::uint32_t> k0 = std::nullopt);

// Throws logic_error if the report violates its ordering guarantees
// (plus >= minus for each pair, delta >= zeta on both sides).
void validate_report_orderings(const ExponentReport& r);

} // namespace hilberg
