#pragma once

// Seeded Monte Carlo engines for the boundary-test statistic: a score-level
// engine that draws the whitened score directly from a standard bivariate
// normal, and a data-level engine that simulates N observations per
// replicate and runs the constrained fits. Replicates are split into
// fixed-size chunks, each with its own derived generator stream, so results
// are bit-identical for any thread count.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "chibar/cones.hpp"
#include "chibar/linalg2.hpp"

namespace chibar {

enum class SimMode { score_level, data_level };
enum class GeometryVariant { correct, selfliang };

struct SimConfig {
    SimMode mode = SimMode::score_level;
    int case_number = 8;  // 7 or 8
    GeometryVariant variant = GeometryVariant::correct;
    double rho = 0.0;
    std::size_t reps = 100000;
    std::size_t sample_size = 250;  // data_level only
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware concurrency; never affects results

    CaseId resolved_case() const;
    void validate() const;
};

struct SimResult {
    SimConfig config;
    std::vector<double> lrs;
    std::vector<std::uint8_t> region;     // label per replicate
    std::map<int, std::uint64_t> region_counts;
    double min_lrs = 0.0;
    std::string sampler;  // fixed per build; spells out the RNG pipeline
};

// Description of the sampling pipeline baked into this build.
const std::string& sampler_description();

SimResult simulate_score_level(const SimConfig& cfg);

// Per replicate: N i.i.d. bivariate normal observations with mean at the
// boundary point and known covariance V = [[1, rho], [rho, 1]]; the
// constrained fits are metric projections of the sample mean onto the two
// cones in the V^-1 metric, and the statistic is evaluated at
// sqrt(N) * sample mean.
SimResult simulate_data_level(const SimConfig& cfg);

// The per-replicate data-level statistic given the scaled sample mean;
// exposed so tests can check it against the whitened score-level path.
double data_level_lrs(const SymPD2& metric, const Cone2& c0, const Cone2& c1, Vec2 scaled_mean);

// Canonical whitening of a score with covariance [[1, rho], [rho, 1]]:
// u -> ((u1 - rho u2) / sqrt(1 - rho^2), u2). Maps the first parameter axis
// to +x and the second into the upper half-plane, matching CaseGeometry.
Vec2 canonical_score_map(double rho, Vec2 u);

class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> samples);

    double operator()(double x) const;  // P(X <= x)
    double left(double x) const;        // P(X < x)
    // Smallest order statistic whose ECDF reaches p (lower quantile).
    double quantile(double p) const;
    std::size_t size() const { return sorted_.size(); }
    const std::vector<double>& sorted() const { return sorted_; }

  private:
    std::vector<double> sorted_;
};

// sup over the sample points of |ECDF - cdf|, evaluated on both sides of
// every step. `cdf_left` supplies the reference's left limits so atoms are
// compared correctly; pass the cdf itself for continuous references.
double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left);
double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf);

// Dvoretzky-Kiefer-Wolfowitz uniform band: sqrt(log(2/delta) / (2n)).
double dkw_bound(std::size_t n, double delta);

}  // namespace chibar
