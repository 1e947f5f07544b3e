#include "chibar/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace chibar {

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

WeightReport case7_weights_sl(const SymPD2& info) {
    const double c = info.a12() / std::sqrt(info.a11() * info.a22());
    const double p_sl = std::acos(c) / kTwoPi;
    WeightReport r;
    r.case_number = 7;
    r.rho = correlation_from_information(info);
    r.p_sl = p_sl;
    r.mixture = ChiBarMixture(0.5 - p_sl, 0.5, p_sl);
    return r;
}

WeightReport case7_weights_ks(double rho) {
    if (!(rho > -1.0 && rho < 1.0)) throw std::domain_error("case7_weights_ks: rho must be in (-1, 1)");
    const double p_ks = std::acos(rho) / kTwoPi;
    WeightReport r;
    r.case_number = 7;
    r.rho = rho;
    r.p_ks = p_ks;
    r.mixture = ChiBarMixture(p_ks, 0.5, 0.5 - p_ks);
    return r;
}

EquivalenceReport case7_equivalence(const SymPD2& info) {
    const WeightReport sl = case7_weights_sl(info);
    const WeightReport ks = case7_weights_ks(correlation_from_information(info));
    EquivalenceReport e;
    e.p_sl = *sl.p_sl;
    e.p_ks = *ks.p_ks;
    const double d0 = std::fabs(sl.mixture->w0() - ks.mixture->w0());
    const double d1 = std::fabs(sl.mixture->w1() - ks.mixture->w1());
    const double d2 = std::fabs(sl.mixture->w2() - ks.mixture->w2());
    e.max_weight_delta = std::max({d0, d1, d2});
    e.angle_sum_delta = std::fabs(e.p_sl + e.p_ks - 0.5);
    e.ok = e.max_weight_delta <= 1e-12 && e.angle_sum_delta <= 1e-12;
    return e;
}

WeightReport case8_weights(double rho) {
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::domain_error(
            "case8_weights: valid for 0 <= rho < 1 only; for negative correlation the chisq_2 "
            "weight goes negative, use case8_corrected");
    const double q = std::asin(rho) / kTwoPi;
    WeightReport r;
    r.case_number = 8;
    r.rho = rho;
    r.q = q;
    r.mixture = ChiBarMixture(0.5 - q, 0.5, q);
    return r;
}

WeightReport case8_corrected(double rho, double epsilon_multiplier) {
    if (!(rho > -1.0 && rho < 0.0))
        throw std::domain_error("case8_corrected: valid for -1 < rho < 0 only; use case8_weights otherwise");
    if (!(epsilon_multiplier > 0.0))
        throw std::domain_error("case8_corrected: epsilon multiplier must be positive");
    const double q = std::asin(rho) / kTwoPi;
    WeightReport r;
    r.case_number = 8;
    r.rho = rho;
    r.q = q;
    r.corrected = CorrectedMixture(q, epsilon_multiplier * epsilon_root(0.5, q));
    return r;
}

ChiBarMixture fifty_fifty() { return {0.5, 0.5, 0.0}; }

}  // namespace chibar
