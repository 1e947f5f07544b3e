#pragma once

// Closed-form mixture weights for the two boundary-parameter test cases, the
// equivalence of the two published weight parameterizations, and the
// corrected distribution for negative correlation.

#include <optional>

#include "chibar/dist.hpp"
#include "chibar/linalg2.hpp"

namespace chibar {

inline constexpr double kDefaultEpsilonMultiplier = 1.01;

struct EquivalenceReport {
    bool ok = false;
    double p_sl = 0.0;
    double p_ks = 0.0;
    double max_weight_delta = 0.0;  // componentwise gap between the two routes
    double angle_sum_delta = 0.0;   // |p_sl + p_ks - 1/2|
};

struct WeightReport {
    int case_number = 7;
    double rho = 0.0;
    std::optional<double> p_sl;
    std::optional<double> p_ks;
    std::optional<double> q;
    std::optional<ChiBarMixture> mixture;
    std::optional<CorrectedMixture> corrected;
    std::optional<EquivalenceReport> equivalence;
};

// Two-parameters-of-interest weights from the information matrix:
// p_sl = arccos(I12 / sqrt(I11 I22)) / (2 pi), weights (1/2 - p_sl, 1/2, p_sl).
WeightReport case7_weights_sl(const SymPD2& info);

// Same case parameterized by the score correlation:
// p_ks = arccos(rho) / (2 pi), weights (p_ks, 1/2, 1/2 - p_ks).
WeightReport case7_weights_ks(double rho);

// Checks that the two routes produce the same mixture; the apparent swap of
// the chisq_0 and chisq_2 weights dissolves because the information
// correlation is the negative of the score correlation.
EquivalenceReport case7_equivalence(const SymPD2& info);

// Nuisance-on-the-boundary weights (1/2 - q, 1/2, q) with
// q = arcsin(rho) / (2 pi); only valid for rho >= 0. Negative rho is
// rejected here and routed to case8_corrected instead of silently returning
// a signed mixture.
WeightReport case8_weights(double rho);

// Corrected distribution for rho < 0: q = arcsin(rho)/(2 pi) and
// epsilon = multiplier * (sign-change root of the signed density with
// weights (1/2, q)).
WeightReport case8_corrected(double rho, double epsilon_multiplier = kDefaultEpsilonMultiplier);

// The (1/2, 1/2, 0) mixture, the naive fallback that moves the q weight onto
// the atom.
ChiBarMixture fifty_fifty();

}  // namespace chibar
