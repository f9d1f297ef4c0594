#include "hilberg/zeta.hpp"

#include <cmath>

#include "hilberg/errors.hpp"

namespace hilberg {
namespace {

// Euler-Maclaurin tail of sum_{j>=N} j^-s through the N^{-s-5} term, plus the
// magnitude of the first omitted term. x^-s is completely monotone, so the
// remainder is bounded by that next term.
struct EmTail {
    double value;
    double error_bound;
};

EmTail em_tail(double s, double n) {
    double inv = 1.0 / n;
    double npow = std::pow(n, -s);
    double value = npow * n / (s - 1.0)           // integral
                   + npow * 0.5                   // half of f(N)
                   + s * npow * inv / 12.0;
    double rising = s * (s + 1.0) * (s + 2.0);
    value -= rising * npow * inv * inv * inv / 720.0;
    rising *= (s + 3.0) * (s + 4.0);
    double inv5 = inv * inv * inv * inv * inv;
    value += rising * npow * inv5 / 30240.0;
    rising *= (s + 5.0) * (s + 6.0);
    double bound = rising * npow * inv5 * inv * inv / 1209600.0;
    return {value, bound};
}

struct TailResult {
    double value;
    double error_bound;
};

TailResult tail_from(double s, std::uint64_t start) {
    if (start == 0)
        throw parameter_error("zeta_tail_from: start must be >= 1");

    // Huge s: the series collapses in a handful of terms.
    if (s > 30.0) {
        double sum = 0.0;
        double term;
        std::uint64_t j = start;
        do {
            term = std::pow(static_cast<double>(j), -s);
            sum += term;
            ++j;
        } while (term > sum * 1e-18 && j < start + 64);
        return {sum, term};
    }

    const std::uint64_t cut = start > 4096 ? start : 4096;
    double sum = 0.0, comp = 0.0; // Kahan
    for (std::uint64_t j = start; j < cut; ++j) {
        double term = std::pow(static_cast<double>(j), -s);
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    EmTail tail = em_tail(s, static_cast<double>(cut));
    return {sum + tail.value, tail.error_bound};
}

} // namespace

namespace {

// Accepts s = 1.000001 itself; the literal may round to either side of the
// stated cutoff, so the comparison gets one part in 10^9 of slack.
void check_domain(double s, const char* who) {
    if (!(s - 1.0 >= 1e-6 * (1.0 - 1e-9)))
        throw parameter_error(std::string(who) + ": requires s > 1 + 1e-6");
}

} // namespace

ZetaValue zeta(double s) {
    check_domain(s, "zeta");
    TailResult r = tail_from(s, 1);
    return {s, r.value, r.error_bound};
}

double zeta_tail_from(double s, std::uint64_t start) {
    check_domain(s, "zeta_tail_from");
    return tail_from(s, start).value;
}

} // namespace hilberg
