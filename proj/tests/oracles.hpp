#pragma once

// Reference values computed by deliberately different methods than the
// library: bracketed partial sums instead of Euler-Maclaurin, direct log
// summation instead of log-gamma, adaptive quadrature instead of series
// expansion of the tail integrand. Each oracle reports its own error bound.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Bracketed {
    double value = 0.0;
    double bound = 0.0; // |value - truth| <= bound
};

// zeta(s) = head sum + tail bracketed by [int_{N+1}, int_N] of x^{-s} dx.
inline Bracketed zeta(double s, std::uint64_t terms = 2'000'000) {
    long double sum = 0.0L, comp = 0.0L;
    for (std::uint64_t k = terms; k >= 1; --k) {
        long double t = powl(static_cast<long double>(k), -static_cast<long double>(s));
        long double y = t - comp;
        long double u = sum + y;
        comp = (u - sum) - y;
        sum = u;
    }
    long double n = static_cast<long double>(terms);
    long double lo = powl(n + 1.0L, 1.0L - s) / (s - 1.0L);
    long double hi = powl(n, 1.0L - s) / (s - 1.0L);
    Bracketed r;
    r.value = static_cast<double>(sum + (lo + hi) / 2.0L);
    r.bound = static_cast<double>((hi - lo) / 2.0L) + 1e-13 * r.value;
    return r;
}

// log2 C(n, k) by direct summation of log2((n-k+i)/i).
inline double log2_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("oracle log2_binomial: k > n");
    if (k > n - k) k = n - k;
    long double sum = 0.0L;
    for (std::uint64_t i = 1; i <= k; ++i)
        sum += log2l(static_cast<long double>(n - k + i)) - log2l(static_cast<long double>(i));
    return static_cast<double>(sum);
}

// Exact binomials by Pascal's rule; n <= 62 keeps every entry below 2^62.
inline std::vector<std::vector<unsigned long long>> pascal_triangle(unsigned n_max) {
    if (n_max > 62) throw std::invalid_argument("oracle pascal_triangle: n_max > 62");
    std::vector<std::vector<unsigned long long>> c(n_max + 1);
    for (unsigned n = 0; n <= n_max; ++n) {
        c[n].assign(n + 1, 1ULL);
        for (unsigned k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
    }
    return c;
}

// Expected mixture-Bernoulli block MI at half-length n via the full double
// sum over ones counts, with factorial logs from direct summation.
inline double mixture_expected_mi(std::uint64_t n) {
    std::vector<long double> lf(2 * n + 1, 0.0L); // lf[m] = log2(m!)
    for (std::uint64_t m = 1; m <= 2 * n; ++m)
        lf[m] = lf[m - 1] + log2l(static_cast<long double>(m));
    auto lb = [&](std::uint64_t a, std::uint64_t b) { return lf[a] - lf[b] - lf[a - b]; };
    const long double l2n1 = log2l(static_cast<long double>(n + 1));
    const long double l2np = log2l(static_cast<long double>(2 * n + 1));
    long double sum = 0.0L, comp = 0.0L;
    for (std::uint64_t t = 0; t <= n; ++t) {
        for (std::uint64_t s = 0; s <= n; ++s) {
            long double lp = lb(n, t) + lb(n, s) - lb(2 * n, t + s) - l2np;
            long double term = exp2l(lp) * (lp + 2.0L * l2n1);
            long double y = term - comp;
            long double u = sum + y;
            comp = (u - sum) - y;
            sum = u;
        }
    }
    return static_cast<double>(sum);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
    auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f((lo + hi) / 2.0) + f(hi));
    };
    std::function<double(double, double, double, double, int)> rec =
        [&](double lo, double hi, double whole, double eps, int d) -> double {
        double mid = (lo + hi) / 2.0;
        double left = simpson(lo, mid), right = simpson(mid, hi);
        if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, eps / 2.0, d - 1) + rec(mid, hi, right, eps / 2.0, d - 1);
    };
    return rec(a, b, simpson(a, b), tol, depth);
}

// Santa Fe series sum_k (1-(1-A k^{-1/beta})^n)^2: head by direct summation,
// tail bracketed by integrals evaluated with adaptive Simpson in log space.
inline Bracketed santa_fe_expected_mi(double beta, double n_, double head_accuracy = 1e-4) {
    const double a = 1.0 / zeta(1.0 / beta).value;
    const double n = n_;
    auto term = [&](double x) {
        double p = a * std::pow(x, -1.0 / beta);
        if (p >= 1.0) return 1.0;
        double q = -std::expm1(n * std::log1p(-p));
        return q * q;
    };
    // Head length: term(K) ~ (nA)^2 K^{-2/beta} <= head_accuracy^2.
    double k0d = std::pow(n * a / head_accuracy, beta);
    std::uint64_t k0 = static_cast<std::uint64_t>(k0d) + 16;
    long double head = 0.0L, comp = 0.0L;
    for (std::uint64_t k = 1; k <= k0; ++k) {
        long double y = static_cast<long double>(term(static_cast<double>(k))) - comp;
        long double u = head + y;
        comp = (u - head) - y;
        head = u;
    }
    // Tail integral in t = ln x; integrand decays like exp(t(1 - 2/beta)).
    auto g = [&](double t) { return term(std::exp(t)) * std::exp(t); };
    double t_hi = (2.0 * std::log(n * a) + 46.0) / (2.0 / beta - 1.0);
    t_hi = std::max(t_hi, std::log(static_cast<double>(k0 + 2)) + 1.0);
    double int_hi = adaptive_simpson(g, std::log(static_cast<double>(k0)), t_hi, 1e-10);
    double int_lo = adaptive_simpson(g, std::log(static_cast<double>(k0 + 1)), t_hi, 1e-10);
    Bracketed r;
    r.value = static_cast<double>(head) + (int_hi + int_lo) / 2.0;
    r.bound = (int_hi - int_lo) / 2.0 + 1e-8;
    return r;
}

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// 0.999 quantile of chi-squared with 50 degrees of freedom.
inline constexpr double kChi2_999_df50 = 86.661;

} // namespace oracle
