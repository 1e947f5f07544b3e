#pragma once

// Chi-squared building blocks, chi-bar-squared mixtures over (chisq_0,
// chisq_1, chisq_2), and the corrected distribution used when the chisq_2
// weight goes negative. Mixtures with signed weights are representable as
// diagnostic objects but refuse to be sampled or inverted.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chibar {

double normal_cdf(double x);
// Inverse standard normal CDF (Wichura's rational approximations),
// accurate to ~1e-15 over (0,1).
double normal_quantile(double p);

// P(a, x): regularized lower incomplete gamma, series for x < a + 1 and a
// continued fraction otherwise, terminated at 1e-15 relative change.
double regularized_lower_gamma(double a, double x);

// k = 0 is the point mass at zero; k = 1 and k = 2 use closed forms and the
// general case goes through the incomplete gamma.
double chisq_cdf(int k, double x);
// Bracketed bisection on the CDF; k = 0 returns 0 for every p in (0,1).
double chisq_quantile(int k, double p);

class ChiBarMixture {
  public:
    // Weights on (chisq_0, chisq_1, chisq_2); must sum to 1 within 1e-12.
    // Signed weights are accepted, but such a mixture is improper.
    ChiBarMixture(double w0, double w1, double w2);

    double w0() const { return w0_; }
    double w1() const { return w1_; }
    double w2() const { return w2_; }
    bool proper() const { return w0_ >= 0.0 && w1_ >= 0.0 && w2_ >= 0.0; }

    // w0 * 1(x>=0) + w1 * F1(x) + w2 * F2(x); a CDF only when proper.
    double cdf(double x) const;
    double cdf_left(double x) const;  // left limit; differs from cdf only at 0
    // Requires a proper mixture: p <= w0 maps to 0, otherwise bisection.
    double quantile(double p) const;
    // Component picked by weight, then a chisq_k draw; requires proper.
    std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  private:
    double w0_, w1_, w2_;
};

// The corrected law for a negative chisq_2 weight q: keep (1/2, 1/2, q) on
// (chisq_0, chisq_1, chisq_2) and add back the missing mass -q as a uniform
// CDF on (0, epsilon).
class CorrectedMixture {
  public:
    CorrectedMixture(double q, double epsilon);

    double q() const { return q_; }
    double epsilon() const { return epsilon_; }

    // 1/2 * 1(x>=0) + 1/2 * F1(x) + q * F2(x) - q * G_eps(x), evaluated
    // exactly as written. Beyond max(epsilon, sign-change root) the implied
    // density is negative, so this is not monotone in the far tail; see
    // tail_diagnostic().
    double cdf(double x) const;
    double cdf_left(double x) const;

    struct QuantileResult {
        double value = 0.0;
        // Set when the CDF was observed to decrease somewhere on the search
        // bracket (far-tail anomaly of the formula).
        bool tail_warning = false;
    };
    // p <= 1/2 returns 0; otherwise the smallest root of cdf(x) = p.
    QuantileResult quantile(double p) const;

  private:
    double q_, epsilon_;
};

struct TailDiagnostic {
    bool decreasing_detected = false;
    double max_cdf = 0.0;        // sup of the CDF over the scanned grid
    double largest_drop = 0.0;   // largest single-step decrease observed
    double first_drop_at = 0.0;  // grid point where the first decrease started
};

// Scans [0, x_hi] on a uniform grid and reports where the corrected CDF
// stops being nondecreasing.
TailDiagnostic corrected_tail_diagnostic(const CorrectedMixture& c, double x_hi,
                                         std::size_t grid_points = 20000);

// The x > 0 part of a signed two-component density:
// exp(-x/2) * (w1 / sqrt(2 pi x) + w2 / 2). May be negative.
struct SignedDensityProbe {
    double w1 = 0.0;
    double w2 = 0.0;
};
double signed_density(const SignedDensityProbe& probe, double x);

// Unique sign change of the signed density for w1 > 0, w2 < 0:
// x* = 2 w1^2 / (pi w2^2).
double epsilon_root(double w1, double w2);

}  // namespace chibar
