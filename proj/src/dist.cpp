#include "chibar/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chibar/rng.hpp"

namespace chibar {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kWeightSumTol = 1e-12;

// Bisection on a nondecreasing function f with f(lo) <= 0 <= f(hi).
template <typename F>
double bisect(F&& f, double lo, double hi, int iters = 200) {
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (f(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Expands hi until cdf(hi) >= p, then bisects.
template <typename Cdf>
double invert_cdf(Cdf&& cdf, double p, double hi0) {
    double hi = hi0;
    while (cdf(hi) < p) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("quantile bracket expansion failed");
    }
    return bisect([&](double x) { return cdf(x) - p; }, 0.0, hi);
}

double series_lower_gamma(double a, double x) {
    // P(a,x) = e^{-x} x^a / Gamma(a+1) * sum_k x^k Gamma(a+1)/Gamma(a+1+k)
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double cf_upper_gamma(double a, double x) {
    // Q(a,x) by modified Lentz continued fraction.
    const double fpmin = std::numeric_limits<double>::min() / 1e-15;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    // Wichura, algorithm AS 241 (PPND16).
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");
    static constexpr double a[8] = {3.3871328727963666080e0, 1.3314166789178437745e2,
                                    1.9715909503065514427e3, 1.3731693765509461125e4,
                                    4.5921953931549871457e4, 6.7265770927008700853e4,
                                    3.3430575583588128105e4, 2.5090809287301226727e3};
    static constexpr double b[8] = {1.0,
                                    4.2313330701600911252e1,
                                    6.8718700749205790830e2,
                                    5.3941960214247511077e3,
                                    2.1213794301586595867e4,
                                    3.9307895800092710610e4,
                                    2.8729085735721942674e4,
                                    5.2264952788528545610e3};
    static constexpr double c[8] = {1.42343711074968357734e0,  4.63033784615654529590e0,
                                    5.76949722146069140550e0,  3.64784832476320460504e0,
                                    1.27045825245236838258e0,  2.41780725177450611770e-1,
                                    2.27238449892691845833e-2, 7.74545014278341407640e-4};
    static constexpr double d[8] = {1.0,
                                    2.05319162663775882187e0,
                                    1.67638483018380384940e0,
                                    6.89767334985100004550e-1,
                                    1.48103976427480074590e-1,
                                    1.51986665636164571966e-2,
                                    5.47593808499534494600e-4,
                                    1.05075007164441684324e-9};
    static constexpr double e[8] = {6.65790464350110377720e0,  5.46378491116411436990e0,
                                    1.78482653991729133580e0,  2.96560571828504891230e-1,
                                    2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                    2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static constexpr double f[8] = {1.0,
                                    5.99832206555887937690e-1,
                                    1.36929880922735805310e-1,
                                    1.48753612908506148525e-2,
                                    7.86869131145613259100e-4,
                                    1.84631831751005468180e-5,
                                    1.42151175831644588870e-7,
                                    2.04426310338993978564e-15};

    auto horner = [](const double (&coef)[8], double r) {
        double s = coef[7];
        for (int i = 6; i >= 0; --i) s = s * r + coef[i];
        return s;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * horner(a, r) / horner(b, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        val = horner(c, r) / horner(d, r);
    } else {
        r -= 5.0;
        val = horner(e, r) / horner(f, r);
    }
    return q < 0.0 ? -val : val;
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("regularized_lower_gamma: a must be positive");
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return series_lower_gamma(a, x);
    return 1.0 - cf_upper_gamma(a, x);
}

double chisq_cdf(int k, double x) {
    if (k < 0) throw std::domain_error("chisq_cdf: degrees of freedom must be >= 0");
    if (k == 0) return x >= 0.0 ? 1.0 : 0.0;
    if (x <= 0.0) return 0.0;
    if (k == 1) return std::erf(std::sqrt(0.5 * x));
    if (k == 2) return -std::expm1(-0.5 * x);
    return regularized_lower_gamma(0.5 * k, 0.5 * x);
}

double chisq_quantile(int k, double p) {
    if (k < 0) throw std::domain_error("chisq_quantile: degrees of freedom must be >= 0");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("chisq_quantile: p must be in (0,1)");
    if (k == 0) return 0.0;
    return invert_cdf([k](double x) { return chisq_cdf(k, x); }, p, 100.0);
}

ChiBarMixture::ChiBarMixture(double w0, double w1, double w2) : w0_(w0), w1_(w1), w2_(w2) {
    if (!(std::isfinite(w0) && std::isfinite(w1) && std::isfinite(w2)))
        throw std::invalid_argument("ChiBarMixture: weights must be finite");
    if (std::fabs(w0 + w1 + w2 - 1.0) > kWeightSumTol)
        throw std::invalid_argument("ChiBarMixture: weights must sum to 1");
}

double ChiBarMixture::cdf(double x) const {
    if (x < 0.0) return 0.0;
    return w0_ + w1_ * chisq_cdf(1, x) + w2_ * chisq_cdf(2, x);
}

double ChiBarMixture::cdf_left(double x) const { return x <= 0.0 ? 0.0 : cdf(x); }

double ChiBarMixture::quantile(double p) const {
    if (!proper())
        throw std::domain_error(
            "ChiBarMixture::quantile: improper (signed) mixture has no quantile function; "
            "use the corrected distribution for a negative chisq_2 weight");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must be in (0,1)");
    if (p <= w0_) return 0.0;
    return invert_cdf([this](double x) { return cdf(x); }, p, 100.0);
}

std::vector<double> ChiBarMixture::sample(std::size_t n, std::uint64_t seed) const {
    if (!proper()) throw std::domain_error("ChiBarMixture::sample: improper mixture");
    rng::Xoshiro256pp gen(seed);
    std::vector<double> out(n);
    for (auto& v : out) {
        const double u = gen.uniform01();
        if (u < w0_) {
            v = 0.0;
        } else if (u < w0_ + w1_) {
            const double z = normal_quantile(gen.uniform01());
            v = z * z;
        } else {
            v = -2.0 * std::log(gen.uniform01());
        }
    }
    return out;
}

CorrectedMixture::CorrectedMixture(double q, double epsilon) : q_(q), epsilon_(epsilon) {
    if (!(q < 0.0)) throw std::invalid_argument("CorrectedMixture: q must be negative");
    if (!(epsilon > 0.0)) throw std::invalid_argument("CorrectedMixture: epsilon must be positive");
}

double CorrectedMixture::cdf(double x) const {
    if (x < 0.0) return 0.0;
    const double g = std::min(x / epsilon_, 1.0);
    return 0.5 + 0.5 * chisq_cdf(1, x) + q_ * chisq_cdf(2, x) - q_ * g;
}

double CorrectedMixture::cdf_left(double x) const { return x <= 0.0 ? 0.0 : cdf(x); }

CorrectedMixture::QuantileResult CorrectedMixture::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must be in (0,1)");
    QuantileResult res;
    if (p <= 0.5) return res;

    // Scan forward so we find the *smallest* root even where the CDF is
    // non-monotone, and record any observed decrease along the way.
    const double hi = std::max(100.0, epsilon_ + 100.0);
    const std::size_t n = 4096;
    double prev_x = 0.0;
    double prev_f = cdf(0.0);
    double root_lo = -1.0, root_hi = -1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = hi * static_cast<double>(i) / static_cast<double>(n);
        const double fx = cdf(x);
        if (fx < prev_f) res.tail_warning = true;
        if (root_lo < 0.0 && prev_f < p && fx >= p) {
            root_lo = prev_x;
            root_hi = x;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (root_lo < 0.0) throw std::runtime_error("corrected quantile: no crossing found");
    res.value = bisect([&](double x) { return cdf(x) - p; }, root_lo, root_hi);
    return res;
}

TailDiagnostic corrected_tail_diagnostic(const CorrectedMixture& c, double x_hi,
                                         std::size_t grid_points) {
    TailDiagnostic diag;
    double prev = c.cdf(0.0);
    diag.max_cdf = prev;
    double prev_x = 0.0;
    for (std::size_t i = 1; i <= grid_points; ++i) {
        const double x = x_hi * static_cast<double>(i) / static_cast<double>(grid_points);
        const double fx = c.cdf(x);
        if (fx < prev) {
            if (!diag.decreasing_detected) diag.first_drop_at = prev_x;
            diag.decreasing_detected = true;
            diag.largest_drop = std::max(diag.largest_drop, prev - fx);
        }
        diag.max_cdf = std::max(diag.max_cdf, fx);
        prev = fx;
        prev_x = x;
    }
    return diag;
}

double signed_density(const SignedDensityProbe& probe, double x) {
    if (!(x > 0.0)) throw std::domain_error("signed_density: x must be positive");
    return std::exp(-0.5 * x) * (probe.w1 / std::sqrt(2.0 * kPi * x) + 0.5 * probe.w2);
}

double epsilon_root(double w1, double w2) {
    if (!(w1 > 0.0)) throw std::domain_error("epsilon_root: w1 must be positive");
    if (!(w2 < 0.0)) throw std::domain_error("epsilon_root: w2 must be negative (no sign change)");
    return 2.0 * w1 * w1 / (kPi * w2 * w2);
}

}  // namespace chibar
