#include "chibar/mc.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "chibar/dist.hpp"
#include "chibar/rng.hpp"

namespace chibar {

namespace {

// Fixed chunking so the replicate -> stream mapping does not depend on the
// thread count.
constexpr std::size_t kChunkSize = 4096;

struct ChunkStats {
    std::array<std::uint64_t, 7> counts{};  // index 0 unused for case 8; "C" for case 7
    double min_lrs = 0.0;
};

template <typename Body>
void run_chunked(std::size_t reps, unsigned threads, Body&& body) {
    const std::size_t n_chunks = (reps + kChunkSize - 1) / kChunkSize;
    unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (n_threads == 0) n_threads = 1;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_chunks));

    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                body(c);
            }
        });
    }
    for (auto& th : pool) th.join();
}

SimResult run_simulation(const SimConfig& cfg) {
    cfg.validate();
    const CaseGeometry geom = CaseGeometry::make(cfg.resolved_case(), cfg.rho);

    SimResult out;
    out.config = cfg;
    out.sampler = sampler_description();
    out.lrs.resize(cfg.reps);
    out.region.resize(cfg.reps);

    const bool data_level = cfg.mode == SimMode::data_level;
    const double rho = cfg.rho;
    const double sigma = std::sqrt(1.0 - rho * rho);
    const double root_n = std::sqrt(static_cast<double>(cfg.sample_size));
    const SymPD2 metric = data_level
                              ? SymPD2(1.0 / (sigma * sigma), -rho / (sigma * sigma), 1.0 / (sigma * sigma))
                              : SymPD2(1.0, 0.0, 1.0);
    const Cone2 c0 = null_cone_original(cfg.resolved_case());
    const Cone2 c1 = alt_cone_original(cfg.resolved_case());

    const std::size_t n_chunks = (cfg.reps + kChunkSize - 1) / kChunkSize;
    std::vector<ChunkStats> stats(n_chunks);

    run_chunked(cfg.reps, cfg.threads, [&](std::size_t c) {
        rng::Xoshiro256pp gen = rng::Xoshiro256pp::for_stream(cfg.seed, c);
        const std::size_t lo = c * kChunkSize;
        const std::size_t hi = std::min(lo + kChunkSize, cfg.reps);
        ChunkStats& st = stats[c];
        st.min_lrs = std::numeric_limits<double>::infinity();
        for (std::size_t r = lo; r < hi; ++r) {
            double lrs;
            Vec2 z_tilde;
            if (data_level) {
                double s1 = 0.0, s2 = 0.0;
                for (std::size_t j = 0; j < cfg.sample_size; ++j) {
                    const double n1 = normal_quantile(gen.uniform01());
                    const double n2 = normal_quantile(gen.uniform01());
                    s1 += n1;
                    s2 += rho * n1 + sigma * n2;
                }
                const double inv_n = 1.0 / static_cast<double>(cfg.sample_size);
                const Vec2 u{root_n * s1 * inv_n, root_n * s2 * inv_n};
                lrs = data_level_lrs(metric, c0, c1, u);
                z_tilde = canonical_score_map(rho, u);
            } else {
                z_tilde = {normal_quantile(gen.uniform01()), normal_quantile(gen.uniform01())};
                lrs = lrs_whitened(geom, z_tilde);
            }
            const RegionLabel label = classify_region(geom, z_tilde);
            out.lrs[r] = lrs;
            out.region[r] = static_cast<std::uint8_t>(label.index);
            st.counts[static_cast<std::size_t>(label.index)]++;
            st.min_lrs = std::min(st.min_lrs, lrs);
        }
    });

    out.min_lrs = std::numeric_limits<double>::infinity();
    for (const auto& st : stats) {
        for (std::size_t i = 0; i < st.counts.size(); ++i)
            if (st.counts[i] != 0) out.region_counts[static_cast<int>(i)] += st.counts[i];
        out.min_lrs = std::min(out.min_lrs, st.min_lrs);
    }
    return out;
}

}  // namespace

CaseId SimConfig::resolved_case() const {
    if (case_number == 7) return CaseId::case7;
    return variant == GeometryVariant::selfliang ? CaseId::case8_selfliang : CaseId::case8_correct;
}

void SimConfig::validate() const {
    if (case_number != 7 && case_number != 8) throw std::invalid_argument("SimConfig: case must be 7 or 8");
    if (case_number == 7 && variant == GeometryVariant::selfliang)
        throw std::invalid_argument("SimConfig: the selfliang variant applies to case 8 only");
    if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("SimConfig: rho must be in (-1, 1)");
    if (reps < 1) throw std::invalid_argument("SimConfig: reps must be >= 1");
    if (mode == SimMode::data_level && sample_size < 2)
        throw std::invalid_argument("SimConfig: sample size must be >= 2");
}

const std::string& sampler_description() {
    static const std::string desc =
        "xoshiro256++ per 4096-replicate chunk, streams split from (seed, chunk) via splitmix64, "
        "normals by inverse CDF (AS241)";
    return desc;
}

SimResult simulate_score_level(const SimConfig& cfg) {
    if (cfg.mode != SimMode::score_level)
        throw std::invalid_argument("simulate_score_level: config mode mismatch");
    return run_simulation(cfg);
}

SimResult simulate_data_level(const SimConfig& cfg) {
    if (cfg.mode != SimMode::data_level)
        throw std::invalid_argument("simulate_data_level: config mode mismatch");
    return run_simulation(cfg);
}

double data_level_lrs(const SymPD2& metric, const Cone2& c0, const Cone2& c1, Vec2 scaled_mean) {
    return lrs_quadratic(metric, c0, c1, scaled_mean);
}

Vec2 canonical_score_map(double rho, Vec2 u) {
    const double sigma = std::sqrt(1.0 - rho * rho);
    return {(u.x - rho * u.y) / sigma, u.y};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left(double x) const {
    const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("EmpiricalCdf::quantile: p must be in (0,1)");
    const double n = static_cast<double>(sorted_.size());
    std::size_t k = static_cast<std::size_t>(std::ceil(n * p - 1e-9));
    if (k < 1) k = 1;
    if (k > sorted_.size()) k = sorted_.size();
    return sorted_[k - 1];
}

double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
    const auto& xs = ecdf.sorted();
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i]) ++j;
        const double x = xs[i];
        const double below = static_cast<double>(i) / n;
        const double at = static_cast<double>(j) / n;
        d = std::max(d, std::fabs(at - cdf(x)));
        d = std::max(d, std::fabs(below - cdf_left(x)));
        i = j;
    }
    return d;
}

double ks_distance(const EmpiricalCdf& ecdf, const std::function<double(double)>& cdf) {
    return ks_distance(ecdf, cdf, cdf);
}

double dkw_bound(std::size_t n, double delta) {
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace chibar
