#include "hilberg/exponents.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "hilberg/errors.hpp"
#include "hilberg/pmi.hpp"

namespace hilberg {
namespace {

std::uint32_t k_of(std::uint64_t n) {
    if (n < 4 || !std::has_single_bit(n))
        throw parameter_error("dyadic grid: n must be a power of two with exponent >= 2");
    return static_cast<std::uint32_t>(std::countr_zero(n));
}

// Curve rows sorted by n, keys validated dyadic and distinct.
std::vector<CurveRecord> sorted_curve(const std::vector<CurveRecord>& curve) {
    std::vector<CurveRecord> rows(curve);
    std::sort(rows.begin(), rows.end(),
              [](const CurveRecord& a, const CurveRecord& b) { return a.n < b.n; });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        k_of(rows[i].n);
        if (i > 0 && rows[i].n == rows[i - 1].n)
            throw parameter_error("curve has duplicate n = " + std::to_string(rows[i].n) +
                                  " (mixed sources?)");
    }
    return rows;
}

// Resolves the tail-window start. An explicit k0 must be covered; the
// default, ceil(k_max/2), is clamped into the covered range.
std::uint32_t effective_k0(std::uint32_t k_front, std::uint32_t k_max,
                           std::optional<std::uint32_t> k0) {
    std::uint32_t eff;
    if (k0) {
        eff = *k0;
        if (eff < k_front)
            throw parameter_error("tail window: k0 = " + std::to_string(eff) +
                                  " is below the first grid point");
    } else {
        eff = (k_max + 1) / 2;
        if (k_max >= 4 && eff > k_max - 4) eff = k_max - 4;
        if (eff < k_front) eff = k_front;
    }
    if (k_max < eff + 4)
        throw parameter_error("tail window: need k_max >= k0 + 4, got k0 = " +
                              std::to_string(eff) + ", k_max = " + std::to_string(k_max));
    return eff;
}

TailBounds window_bounds(const std::vector<RatioPoint>& seq, std::uint32_t eff,
                         std::uint32_t k_max) {
    TailBounds out;
    bool first = true;
    std::uint32_t expect = eff;
    for (const RatioPoint& p : seq) {
        if (p.k < eff || p.k > k_max) continue;
        if (p.k != expect)
            throw parameter_error("tail window: dyadic grid has a gap at k = " +
                                  std::to_string(expect));
        ++expect;
        if (first) {
            out.plus = out.minus = p.ratio;
            first = false;
        } else {
            out.plus = std::max(out.plus, p.ratio);
            out.minus = std::min(out.minus, p.ratio);
        }
    }
    if (expect != k_max + 1)
        throw parameter_error("tail window: sequence does not cover k0..k_max");
    return out;
}

} // namespace

std::vector<RatioPoint> exponent_sequence(const std::map<std::uint64_t, double>& values,
                                          SequenceKind kind) {
    (void)kind; // same normalization for both; the tag documents call sites
    std::vector<RatioPoint> seq;
    seq.reserve(values.size());
    for (const auto& [n, v] : values) {
        std::uint32_t k = k_of(n);
        seq.push_back({k, log_plus(v) / static_cast<double>(k)});
    }
    return seq;
}

TailBounds estimate_limsup_liminf(const std::vector<RatioPoint>& seq,
                                  std::optional<std::uint32_t> k0) {
    if (seq.empty()) throw parameter_error("estimate_limsup_liminf: empty sequence");
    for (std::size_t i = 1; i < seq.size(); ++i)
        if (seq[i].k <= seq[i - 1].k)
            throw parameter_error("estimate_limsup_liminf: k values must increase");
    std::uint32_t eff = effective_k0(seq.front().k, seq.back().k, k0);
    return window_bounds(seq, eff, seq.back().k);
}

double estimate_epsilon(const std::vector<CurveRecord>& curve,
                        std::optional<std::uint32_t> k0) {
    std::vector<CurveRecord> rows = sorted_curve(curve);
    if (rows.empty()) throw parameter_error("estimate_epsilon: empty curve");
    std::uint32_t eff = effective_k0(k_of(rows.front().n), k_of(rows.back().n), k0);
    std::vector<RatioPoint> seq;
    for (const CurveRecord& r : rows) {
        std::uint32_t k = k_of(r.n);
        if (k < eff) continue;
        if (!(r.mean_mi > 0.0))
            throw parameter_error("estimate_epsilon: nonpositive mean at n = " +
                                  std::to_string(r.n));
        seq.push_back({k, log_plus(r.var_mi / r.mean_mi) / static_cast<double>(k)});
    }
    return window_bounds(seq, eff, k_of(rows.back().n)).plus;
}

TailBounds estimate_inverse_exponents(const std::vector<CurveRecord>& curve, double B,
                                      std::optional<std::uint32_t> k0) {
    if (!(B > 0.0)) throw parameter_error("estimate_inverse_exponents: B must be positive");
    std::vector<CurveRecord> rows = sorted_curve(curve);
    if (rows.empty()) throw parameter_error("estimate_inverse_exponents: empty curve");
    std::uint32_t eff = effective_k0(k_of(rows.front().n), k_of(rows.back().n), k0);
    std::vector<RatioPoint> seq;
    for (const CurveRecord& r : rows) {
        std::uint32_t k = k_of(r.n);
        if (k < eff) continue;
        if (!(r.harmonic_mean_shifted > 0.0) || r.harmonic_mean_shifted > 1.0 + 1e-9)
            throw parameter_error("estimate_inverse_exponents: harmonic mean outside (0,1]; "
                                  "B too small for the sampled minimum at n = " +
                                  std::to_string(r.n));
        // Subtracting the shift back recovers the mean exactly on
        // dispersion-free curves and stays below it otherwise.
        double excess = 1.0 / r.harmonic_mean_shifted - B;
        seq.push_back({k, log_plus(excess) / static_cast<double>(k)});
    }
    return window_bounds(seq, eff, k_of(rows.back().n));
}

GrowthFit fit_growth_models(const std::vector<CurveRecord>& curve) {
    std::vector<CurveRecord> rows = sorted_curve(curve);
    if (rows.size() < 6) throw parameter_error("fit_growth_models: need at least six points");

    std::vector<double> x, y_pow, y_log;
    for (const CurveRecord& r : rows) {
        if (!(r.mean_mi > 0.0))
            throw parameter_error("fit_growth_models: nonpositive mean at n = " +
                                  std::to_string(r.n));
        x.push_back(static_cast<double>(k_of(r.n)));
        y_pow.push_back(std::log2(r.mean_mi));
        y_log.push_back(r.mean_mi);
    }
    auto least_squares = [&](const std::vector<double>& y, double& slope, double& r2) {
        std::size_t m = y.size();
        double sx = 0, sy = 0;
        for (std::size_t i = 0; i < m; ++i) { sx += x[i]; sy += y[i]; }
        double mx = sx / m, my = sy / m;
        double sxx = 0, sxy = 0, syy = 0;
        for (std::size_t i = 0; i < m; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
            syy += (y[i] - my) * (y[i] - my);
        }
        slope = sxy / sxx;
        double intercept = my - slope * mx;
        double ssres = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double e = y[i] - (intercept + slope * x[i]);
            ssres += e * e;
        }
        r2 = syy > 1e-30 ? 1.0 - ssres / syy : 0.0;
    };

    GrowthFit fit;
    least_squares(y_pow, fit.power_slope, fit.power_r2);
    least_squares(y_log, fit.log_slope, fit.log_r2);
    if (fit.power_r2 >= fit.log_r2 + 0.01)
        fit.classification = "power";
    else if (fit.log_r2 >= fit.power_r2 + 0.01)
        fit.classification = "log";
    else
        fit.classification = "ambiguous";
    return fit;
}

std::optional<std::uint64_t> find_excess_witness(const std::function<double(std::uint64_t)>& g,
                                                 std::uint64_t n_max) {
    if (n_max < 4) throw parameter_error("find_excess_witness: n_max must be >= 4");
    for (std::uint64_t n = 1; 2 * n <= n_max; ++n)
        if (2.0 * g(n) - g(2 * n) >= 0.0) return n;
    return std::nullopt;
}

TailBounds pointwise_exponents(const std::map<std::uint64_t, double>& trajectory,
                               std::optional<std::uint32_t> k0) {
    return estimate_limsup_liminf(exponent_sequence(trajectory, SequenceKind::Pointwise), k0);
}

void validate_report_orderings(const ExponentReport& r) {
    constexpr double slack = 1e-9;
    auto check = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("ExponentReport ordering violated: ") + what);
    };
    check(r.gamma_plus + slack >= r.gamma_minus, "gamma_plus >= gamma_minus");
    check(r.delta_plus + slack >= r.delta_minus, "delta_plus >= delta_minus");
    check(r.zeta_plus + slack >= r.zeta_minus, "zeta_plus >= zeta_minus");
    check(r.delta_plus + slack >= r.zeta_plus, "delta_plus >= zeta_plus");
    check(r.delta_minus + slack >= r.zeta_minus, "delta_minus >= zeta_minus");
}

ExponentReport estimate_report(const std::vector<CurveRecord>& curve,
                               std::optional<std::uint32_t> k0,
                               const std::vector<std::vector<double>>* trajectories) {
    std::vector<CurveRecord> rows = sorted_curve(curve);
    if (rows.size() < 5) throw parameter_error("estimate_report: need at least five rows");
    for (const CurveRecord& r : rows)
        if (r.B != rows.front().B)
            throw parameter_error("estimate_report: rows disagree on the shift B");

    ExponentReport rep;
    rep.B = rows.front().B;
    rep.k_min = k_of(rows.front().n);
    rep.k_max = k_of(rows.back().n);
    rep.k0 = effective_k0(rep.k_min, rep.k_max, k0);

    std::map<std::uint64_t, double> means;
    for (const CurveRecord& r : rows) means[r.n] = r.mean_mi;
    TailBounds delta =
        estimate_limsup_liminf(exponent_sequence(means, SequenceKind::Expected), rep.k0);
    rep.delta_plus = delta.plus;
    rep.delta_minus = delta.minus;

    TailBounds zeta_b = estimate_inverse_exponents(rows, rep.B, rep.k0);
    rep.zeta_plus = zeta_b.plus;
    rep.zeta_minus = zeta_b.minus;

    rep.epsilon_hat = estimate_epsilon(rows, rep.k0);

    bool fit_ok = rows.size() >= 6;
    for (const CurveRecord& r : rows) fit_ok = fit_ok && r.mean_mi > 0.0;
    if (fit_ok) rep.fit = fit_growth_models(rows);

    if (trajectories != nullptr && !trajectories->empty()) {
        double sum_plus = 0.0, sum_minus = 0.0;
        for (const std::vector<double>& row : *trajectories) {
            if (row.size() != rows.size())
                throw parameter_error("estimate_report: trajectory row does not match the grid");
            std::map<std::uint64_t, double> traj;
            for (std::size_t i = 0; i < rows.size(); ++i) traj[rows[i].n] = row[i];
            TailBounds g = pointwise_exponents(traj, rep.k0);
            sum_plus += g.plus;
            sum_minus += g.minus;
        }
        rep.gamma_plus = sum_plus / static_cast<double>(trajectories->size());
        rep.gamma_minus = sum_minus / static_cast<double>(trajectories->size());
        rep.gamma_source = "pointwise";
    } else {
        rep.gamma_plus = rep.delta_plus;
        rep.gamma_minus = rep.delta_minus;
        rep.gamma_source = "expected-curve";
    }

    validate_report_orderings(rep);
    return rep;
}

} // namespace hilberg
