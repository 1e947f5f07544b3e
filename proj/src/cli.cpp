#include "chibar/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "chibar/dist.hpp"
#include "chibar/mc.hpp"
#include "chibar/weights.hpp"

namespace chibar {

namespace {

using nlohmann::json;

// Seed offset for the matched half-plane-variant overlay simulation, so the
// overlay never shares a stream with the main run.
constexpr std::uint64_t kOverlaySeedTag = 0x53656c664c69616eULL;
// Draw count for that overlay, fixed by the comparison protocol.
constexpr std::size_t kOverlayReps = 100000;

// Acceptance bands for the compare subcommand.
constexpr double kCompareDelta = 0.01;          // DKW confidence parameter
constexpr double kQuantileBand = 0.006;         // |ECDF(x_p) - p| at p = .95, .99

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& content, std::ostream& fallback) const {
        if (path.empty()) {
            fallback << content;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << content;
    }
};

SymPD2 parse_info(const std::string& text) {
    // Accepts "a11,a12,a22" or the JSON form [[a11,a12],[a12,a22]].
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') {
        json j = json::parse(text);
        if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
            j[0].size() != 2 || j[1].size() != 2)
            throw std::invalid_argument("information matrix must be [[a11,a12],[a12,a22]]");
        const double a11 = j[0][0].get<double>();
        const double a12 = j[0][1].get<double>();
        const double a21 = j[1][0].get<double>();
        const double a22 = j[1][1].get<double>();
        if (a12 != a21)
            throw std::invalid_argument("asymmetric information matrix: entry [0][1] must equal [1][0]");
        return {a11, a12, a22};
    }
    double a11, a12, a22;
    char c1, c2;
    std::istringstream ss(text);
    if (!(ss >> a11 >> c1 >> a12 >> c2 >> a22) || c1 != ',' || c2 != ',')
        throw std::invalid_argument("expected a11,a12,a22");
    return {a11, a12, a22};
}

json mixture_json(const ChiBarMixture& m) {
    return json{{"w0", m.w0()}, {"w1", m.w1()}, {"w2", m.w2()}};
}

json corrected_json(const CorrectedMixture& c) {
    return json{{"q", c.q()}, {"epsilon", c.epsilon()}};
}

// Either branch of the analytic law for a case/correlation pair.
struct AnalyticLaw {
    std::optional<ChiBarMixture> mixture;
    std::optional<CorrectedMixture> corrected;

    double cdf(double x) const { return mixture ? mixture->cdf(x) : corrected->cdf(x); }
    double cdf_left(double x) const { return mixture ? mixture->cdf_left(x) : corrected->cdf_left(x); }
    double quantile(double p) const {
        return mixture ? mixture->quantile(p) : corrected->quantile(p).value;
    }
};

AnalyticLaw resolve_law(int case_number, double rho, double eps_mult) {
    AnalyticLaw law;
    if (case_number == 7) {
        law.mixture = *case7_weights_ks(rho).mixture;
    } else if (rho >= 0.0) {
        law.mixture = *case8_weights(rho).mixture;
    } else {
        law.corrected = *case8_corrected(rho, eps_mult).corrected;
    }
    return law;
}

json config_json(const SimConfig& cfg, double eps_mult) {
    return json{{"mode", cfg.mode == SimMode::data_level ? "data" : "score"},
                {"case", cfg.case_number},
                {"variant", cfg.variant == GeometryVariant::selfliang ? "selfliang" : "correct"},
                {"rho", cfg.rho},
                {"reps", cfg.reps},
                {"sample_size", cfg.sample_size},
                {"seed", cfg.seed},
                {"epsilon_multiplier", eps_mult},
                {"sampler", sampler_description()},
                {"quantile_convention", "lower (smallest order statistic reaching p)"}};
}

SimResult run_overlay_selfliang(double rho, std::uint64_t seed, unsigned threads) {
    SimConfig cfg;
    cfg.mode = SimMode::score_level;
    cfg.case_number = 8;
    cfg.variant = GeometryVariant::selfliang;
    cfg.rho = rho;
    cfg.reps = kOverlayReps;
    cfg.seed = seed ^ kOverlaySeedTag;
    cfg.threads = threads;
    return simulate_score_level(cfg);
}

std::string grid_csv(const EmpiricalCdf& ecdf, const AnalyticLaw& primary,
                     const EmpiricalCdf& selfliang, const ChiBarMixture& half_half,
                     std::size_t points) {
    const double hi = std::max(ecdf.quantile(0.999), primary.quantile(0.999)) * 1.05;
    std::string out = "x,ecdf,f_corr,f_selfliang,f_5050\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double x = hi * static_cast<double>(i) / static_cast<double>(points - 1);
        out += fmt(x) + "," + fmt(ecdf(x)) + "," + fmt(primary.cdf(x)) + "," + fmt(selfliang(x)) +
               "," + fmt(half_half.cdf(x)) + "\n";
    }
    return out;
}

double exact_zero_fraction(const std::vector<double>& lrs) {
    std::size_t z = 0;
    for (double v : lrs)
        if (v == 0.0) ++z;
    return static_cast<double>(z) / static_cast<double>(lrs.size());
}

// ---- subcommand payloads ----------------------------------------------

struct CommonOpts {
    int case_number = 8;
    double rho = 0.0;
    bool rho_set = false;
    std::string info_text;
    std::string variant = "correct";
    std::size_t reps = 100000;
    std::size_t sample_size = 250;
    std::uint64_t seed = 1;
    double eps_mult = kDefaultEpsilonMultiplier;
    unsigned threads = 0;
    std::vector<double> p_values;
    std::vector<double> x_values;
    std::size_t grid_points = 512;
    std::string out_path;
    std::string grid_out;
    std::string samples_out;
    std::string points_path = "-";
    std::string format;  // resolved per subcommand when empty

    std::string resolved_format(const char* fallback) const {
        return format.empty() ? fallback : format;
    }
    void require_json_summary() const {
        if (!format.empty() && format != "json")
            throw std::invalid_argument(
                "this subcommand emits a JSON summary; CSV applies to the tabular and grid outputs");
    }
};

double resolve_rho(const CommonOpts& o) {
    if (o.rho_set && !o.info_text.empty())
        throw std::invalid_argument("--rho and --info are mutually exclusive");
    if (!o.info_text.empty()) return correlation_from_information(parse_info(o.info_text));
    if (!o.rho_set) throw std::invalid_argument("one of --rho or --info is required");
    return o.rho;
}

int cmd_weights(const CommonOpts& o, std::ostream& out) {
    o.require_json_summary();
    json j;
    j["case"] = o.case_number;
    std::optional<SymPD2> info;
    if (!o.info_text.empty() && o.rho_set)
        throw std::invalid_argument("--rho and --info are mutually exclusive");
    if (!o.info_text.empty()) info = parse_info(o.info_text);
    const double rho = info ? correlation_from_information(*info) : (o.rho_set ? o.rho : throw std::invalid_argument("one of --rho or --info is required"));
    j["rho"] = rho;

    if (o.case_number == 7) {
        const WeightReport ks = case7_weights_ks(rho);
        j["p_ks"] = *ks.p_ks;
        j["weights"] = mixture_json(*ks.mixture);
        if (info) {
            const WeightReport sl = case7_weights_sl(*info);
            const EquivalenceReport eq = case7_equivalence(*info);
            j["p_sl"] = *sl.p_sl;
            j["equivalence"] = {{"ok", eq.ok},
                                {"p_sl", eq.p_sl},
                                {"p_ks", eq.p_ks},
                                {"max_weight_delta", eq.max_weight_delta},
                                {"angle_sum_delta", eq.angle_sum_delta}};
        }
    } else if (rho >= 0.0) {
        const WeightReport w = case8_weights(rho);
        j["q"] = *w.q;
        j["weights"] = mixture_json(*w.mixture);
    } else {
        const WeightReport w = case8_corrected(rho, o.eps_mult);
        j["q"] = *w.q;
        j["epsilon_multiplier"] = o.eps_mult;
        j["corrected"] = corrected_json(*w.corrected);
        const TailDiagnostic diag =
            corrected_tail_diagnostic(*w.corrected, w.corrected->epsilon() + 10.0);
        j["tail_diagnostic"] = {{"decreasing_detected", diag.decreasing_detected},
                                {"max_cdf", diag.max_cdf},
                                {"largest_drop", diag.largest_drop},
                                {"first_drop_at", diag.first_drop_at}};
    }
    OutputTarget{o.out_path}.write(j.dump(2) + "\n", out);
    return 0;
}

// CSV rows or a JSON array of the same pairs.
std::string tabulate(const std::vector<std::pair<double, double>>& rows, const std::string& format,
                     const char* key) {
    if (format == "json") {
        json arr = json::array();
        for (const auto& [x, v] : rows) arr.push_back({{key, x}, {"value", v}});
        return arr.dump(2) + "\n";
    }
    std::string csv = "x,value\n";
    for (const auto& [x, v] : rows) csv += fmt(x) + "," + fmt(v) + "\n";
    return csv;
}

int cmd_cdf(const CommonOpts& o, std::ostream& out) {
    const double rho = resolve_rho(o);
    const AnalyticLaw law = resolve_law(o.case_number, rho, o.eps_mult);
    std::vector<double> xs = o.x_values;
    if (xs.empty()) {
        const double hi = law.quantile(0.999) + 1.0;
        for (std::size_t i = 0; i < o.grid_points; ++i)
            xs.push_back(hi * static_cast<double>(i) / static_cast<double>(o.grid_points - 1));
    }
    std::vector<std::pair<double, double>> rows;
    for (double x : xs) rows.emplace_back(x, law.cdf(x));
    OutputTarget{o.out_path}.write(tabulate(rows, o.resolved_format("csv"), "x"), out);
    return 0;
}

int cmd_quantile(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    if (o.p_values.empty()) throw std::invalid_argument("quantile: at least one --p is required");
    const double rho = resolve_rho(o);
    const AnalyticLaw law = resolve_law(o.case_number, rho, o.eps_mult);
    std::vector<std::pair<double, double>> rows;
    for (double p : o.p_values) {
        if (law.corrected) {
            const auto qr = law.corrected->quantile(p);
            if (qr.tail_warning)
                err << "note: corrected CDF decreases in the far tail of the search bracket\n";
            rows.emplace_back(p, qr.value);
        } else {
            rows.emplace_back(p, law.mixture->quantile(p));
        }
    }
    OutputTarget{o.out_path}.write(tabulate(rows, o.resolved_format("csv"), "x"), out);
    return 0;
}

int cmd_regions(const CommonOpts& o, std::istream& in, std::ostream& out) {
    const double rho = resolve_rho(o);
    if (o.case_number == 7 && o.variant == "selfliang")
        throw std::invalid_argument("the selfliang variant applies to case 8 only");
    const CaseId id = o.case_number == 7
                          ? CaseId::case7
                          : (o.variant == "selfliang" ? CaseId::case8_selfliang : CaseId::case8_correct);
    const CaseGeometry geom = CaseGeometry::make(id, rho);

    std::ifstream file;
    std::istream* src = &in;
    if (o.points_path != "-") {
        file.open(o.points_path);
        if (!file) throw std::runtime_error("cannot open points file: " + o.points_path);
        src = &file;
    }

    std::string csv = "z1,z2,region,lrs\n";
    json arr = json::array();
    const bool as_json = o.resolved_format("csv") == "json";
    std::string line;
    while (std::getline(*src, line)) {
        if (line.empty() || line == "z1,z2") continue;
        double z1, z2;
        char comma;
        std::istringstream ss(line);
        if (!(ss >> z1 >> comma >> z2) || comma != ',')
            throw std::invalid_argument("regions: bad point line: " + line);
        const Vec2 z{z1, z2};
        const RegionLabel label = classify_region(geom, z);
        const double lrs = lrs_whitened(geom, z);
        if (as_json)
            arr.push_back({{"z1", z1}, {"z2", z2}, {"region", region_name(label)}, {"lrs", lrs}});
        else
            csv += fmt(z1) + "," + fmt(z2) + "," + region_name(label) + "," + fmt(lrs) + "\n";
    }
    OutputTarget{o.out_path}.write(as_json ? arr.dump(2) + "\n" : csv, out);
    return 0;
}

json summary_json(const SimResult& res, double eps_mult) {
    const EmpiricalCdf ecdf(res.lrs);
    json j;
    j["config"] = config_json(res.config, eps_mult);
    json freqs;
    for (const auto& [idx, count] : res.region_counts) {
        const RegionLabel label{res.config.resolved_case(), idx};
        freqs[region_name(label)] =
            static_cast<double>(count) / static_cast<double>(res.config.reps);
    }
    j["region_frequencies"] = freqs;
    j["atom_fraction"] = exact_zero_fraction(res.lrs);
    j["min_lrs"] = res.min_lrs;
    j["quantiles"] = {{"0.90", ecdf.quantile(0.90)},
                      {"0.95", ecdf.quantile(0.95)},
                      {"0.99", ecdf.quantile(0.99)}};
    return j;
}

// simulate and compare share the simulation + overlay load; split out.
struct SimBundle {
    SimResult result;
    EmpiricalCdf ecdf;
    AnalyticLaw primary;
    ChiBarMixture half_half;
    std::optional<SimResult> selfliang_res;
    std::optional<EmpiricalCdf> selfliang_ecdf;

    SimBundle(SimResult r, AnalyticLaw law)
        : result(std::move(r)), ecdf(result.lrs), primary(std::move(law)), half_half(fifty_fifty()) {}
};

int run_simulate(const CommonOpts& o, const std::string& mode, std::ostream& out,
                 std::ostream& err) {
    o.require_json_summary();
    SimConfig cfg;
    cfg.mode = mode == "data" ? SimMode::data_level : SimMode::score_level;
    cfg.case_number = o.case_number;
    cfg.variant = o.variant == "selfliang" ? GeometryVariant::selfliang : GeometryVariant::correct;
    cfg.rho = resolve_rho(o);
    cfg.reps = o.reps;
    cfg.sample_size = o.sample_size;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.validate();

    const SimResult res =
        cfg.mode == SimMode::data_level ? simulate_data_level(cfg) : simulate_score_level(cfg);
    SimBundle bundle(res, resolve_law(o.case_number, cfg.rho, o.eps_mult));

    json j = summary_json(bundle.result, o.eps_mult);

    json ks;
    const char* primary_name = bundle.primary.corrected ? "corrected" : "chibar";
    ks[primary_name] = ks_distance(
        bundle.ecdf, [&](double x) { return bundle.primary.cdf(x); },
        [&](double x) { return bundle.primary.cdf_left(x); });
    if (o.case_number == 8) {
        ks["fifty_fifty"] = ks_distance(
            bundle.ecdf, [&](double x) { return bundle.half_half.cdf(x); },
            [&](double x) { return bundle.half_half.cdf_left(x); });
        if (cfg.rho < 0.0) {
            // The signed continuation of the weight formula; improper but a
            // useful reference for how far the corrected CDF sits from it.
            const double q = *case8_corrected(cfg.rho, o.eps_mult).q;
            const ChiBarMixture improper(0.5 - q, 0.5, q);
            ks["improper_mixture"] = ks_distance(
                bundle.ecdf, [&](double x) { return improper.cdf(x); },
                [&](double x) { return improper.cdf_left(x); });
        }
    }

    const bool want_grid = !o.grid_out.empty();
    if (want_grid) {
        if (o.case_number != 8)
            throw std::invalid_argument("--grid-out produces the case 8 overlay grid only");
        bundle.selfliang_res = run_overlay_selfliang(cfg.rho, cfg.seed, cfg.threads);
        bundle.selfliang_ecdf.emplace(bundle.selfliang_res->lrs);
        ks["selfliang"] = ks_distance(
            bundle.ecdf, [&](double x) { return (*bundle.selfliang_ecdf)(x); },
            [&](double x) { return bundle.selfliang_ecdf->left(x); });
        const std::string csv = grid_csv(bundle.ecdf, bundle.primary, *bundle.selfliang_ecdf,
                                         bundle.half_half, o.grid_points);
        OutputTarget{o.grid_out}.write(csv, out);
    }
    j["ks"] = ks;

    if (!o.samples_out.empty()) {
        std::string csv = "lrs,region\n";
        for (std::size_t i = 0; i < bundle.result.lrs.size(); ++i) {
            const RegionLabel label{bundle.result.config.resolved_case(),
                                    static_cast<int>(bundle.result.region[i])};
            csv += fmt(bundle.result.lrs[i]) + "," + region_name(label) + "\n";
        }
        OutputTarget{o.samples_out}.write(csv, err);
    }

    OutputTarget{o.out_path}.write(j.dump(2) + "\n", out);
    return 0;
}

int run_compare(const CommonOpts& o, std::ostream& out) {
    o.require_json_summary();
    SimConfig cfg;
    cfg.mode = SimMode::data_level;
    cfg.case_number = 8;
    cfg.variant = GeometryVariant::correct;
    cfg.rho = o.rho_set ? o.rho : throw std::invalid_argument("compare: --rho is required");
    cfg.reps = o.reps;
    cfg.sample_size = o.sample_size;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.validate();

    const SimResult res = simulate_data_level(cfg);
    SimBundle bundle(res, resolve_law(8, cfg.rho, o.eps_mult));
    bundle.selfliang_res = run_overlay_selfliang(cfg.rho, cfg.seed, cfg.threads);
    bundle.selfliang_ecdf.emplace(bundle.selfliang_res->lrs);

    const double dkw = dkw_bound(cfg.reps, kCompareDelta);
    json j;
    j["config"] = config_json(cfg, o.eps_mult);
    j["dkw_bound"] = dkw;

    auto overlay_report = [&](const std::function<double(double)>& cdf,
                              const std::function<double(double)>& cdf_left,
                              const std::function<double(double)>& quantile) {
        json r;
        r["ks"] = ks_distance(bundle.ecdf, cdf, cdf_left);
        const double x95 = quantile(0.95);
        const double x99 = quantile(0.99);
        r["q95"] = x95;
        r["q99"] = x99;
        r["ecdf_at_q95"] = bundle.ecdf(x95);
        r["ecdf_at_q99"] = bundle.ecdf(x99);
        r["quantile_gap_95"] = std::fabs(bundle.ecdf(x95) - 0.95);
        r["quantile_gap_99"] = std::fabs(bundle.ecdf(x99) - 0.99);
        return r;
    };

    json overlays;
    const char* primary_name = bundle.primary.corrected ? "corrected" : "chibar";
    overlays[primary_name] = overlay_report(
        [&](double x) { return bundle.primary.cdf(x); },
        [&](double x) { return bundle.primary.cdf_left(x); },
        [&](double p) { return bundle.primary.quantile(p); });
    overlays["fifty_fifty"] = overlay_report(
        [&](double x) { return bundle.half_half.cdf(x); },
        [&](double x) { return bundle.half_half.cdf_left(x); },
        [&](double p) { return bundle.half_half.quantile(p); });
    overlays["selfliang"] = json{
        {"ks", ks_distance(
                   bundle.ecdf, [&](double x) { return (*bundle.selfliang_ecdf)(x); },
                   [&](double x) { return bundle.selfliang_ecdf->left(x); })}};

    if (bundle.primary.corrected) {
        const double q = bundle.primary.corrected->q();
        const ChiBarMixture improper(0.5 - q, 0.5, q);
        j["diagnostics"] = {
            {"empirical_atom", exact_zero_fraction(bundle.result.lrs)},
            {"primary_cdf_at_zero", bundle.primary.cdf(0.0)},
            {"improper_mixture_ks",
             ks_distance(
                 bundle.ecdf, [&](double x) { return improper.cdf(x); },
                 [&](double x) { return improper.cdf_left(x); })}};
    }

    std::vector<std::string> failures;
    const double ks_primary = overlays[primary_name]["ks"].get<double>();
    if (!(ks_primary < dkw))
        failures.push_back(std::string(primary_name) + " KS " + fmt(ks_primary) +
                           " not below DKW bound " + fmt(dkw));
    for (const char* p : {"quantile_gap_95", "quantile_gap_99"}) {
        const double gap = overlays[primary_name][p].get<double>();
        if (!(gap < kQuantileBand))
            failures.push_back(std::string(primary_name) + " " + p + " " + fmt(gap) +
                               " not below " + fmt(kQuantileBand));
    }

    j["overlays"] = overlays;
    j["pass"] = failures.empty();
    j["failures"] = failures;

    if (!o.grid_out.empty()) {
        const std::string csv = grid_csv(bundle.ecdf, bundle.primary, *bundle.selfliang_ecdf,
                                         bundle.half_half, o.grid_points);
        OutputTarget{o.grid_out}.write(csv, out);
    }

    OutputTarget{o.out_path}.write(j.dump(2) + "\n", out);
    return failures.empty() ? 0 : 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "chibar: chi-bar-squared mixtures, cone projections, and Monte Carlo checks for "
        "likelihood-ratio tests with two boundary parameters"};
    app.require_subcommand(1);

    CommonOpts o;

    auto add_common = [&](CLI::App* sub, bool with_info, const char* default_format) {
        sub->add_option("--case", o.case_number, "test case: 7 (two parameters of interest) or 8 (one interest + one nuisance)")
            ->check(CLI::IsMember({7, 8}))
            ->capture_default_str();
        auto* rho_opt = sub->add_option("--rho", o.rho, "score correlation, in (-1, 1)");
        rho_opt->each([&](const std::string&) { o.rho_set = true; });
        if (with_info) {
            auto* info_opt =
                sub->add_option("--info", o.info_text,
                                "information matrix as a11,a12,a22 or [[a11,a12],[a12,a22]] "
                                "(mutually exclusive with --rho)");
            rho_opt->excludes(info_opt);
            info_opt->excludes(rho_opt);
        }
        sub->add_option("--epsilon-multiplier", o.eps_mult,
                        "epsilon = multiplier * sign-change root of the signed density (rho < 0)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--out", o.out_path, "write the main output to this file (default: stdout)");
        sub->add_option("--format", o.format,
                        "output format; summaries are json, tabular output supports both")
            ->check(CLI::IsMember({"json", "csv"}))
            ->default_str(default_format);
    };

    auto* w = app.add_subcommand("weights", "mixture weights / corrected distribution parameters (JSON)");
    add_common(w, true, "json");

    auto* c = app.add_subcommand("cdf", "CDF values as CSV x,value");
    add_common(c, true, "csv");
    c->add_option("--x", o.x_values, "evaluation points (repeatable); default: grid");
    c->add_option("--grid-points", o.grid_points, "grid size when no --x is given")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* q = app.add_subcommand("quantile", "quantiles as CSV x,value (x = probability)");
    add_common(q, true, "csv");
    q->add_option("--p", o.p_values, "probabilities in (0,1) (repeatable)");

    auto* r = app.add_subcommand("regions", "classify points: CSV z1,z2,region,lrs");
    add_common(r, false, "csv");
    r->add_option("--variant", o.variant, "alternative-cone variant for case 8")
        ->check(CLI::IsMember({"correct", "selfliang"}))
        ->capture_default_str();
    r->add_option("--points", o.points_path, "CSV file of z1,z2 rows, or - for stdin")
        ->capture_default_str();

    std::string mode = "score";
    auto* s = app.add_subcommand("simulate", "seeded Monte Carlo run with JSON summary");
    add_common(s, false, "json");
    s->add_option("--mode", mode, "score (draw the whitened score) or data (N observations per replicate)")
        ->check(CLI::IsMember({"score", "data"}))
        ->capture_default_str();
    s->add_option("--variant", o.variant, "alternative-cone variant for case 8")
        ->check(CLI::IsMember({"correct", "selfliang"}))
        ->capture_default_str();
    s->add_option("--reps", o.reps, "Monte Carlo repetitions")->capture_default_str();
    s->add_option("--sample-size", o.sample_size, "observations per replicate (data mode)")
        ->capture_default_str();
    s->add_option("--seed", o.seed, "RNG seed; identical seeds give byte-identical output")
        ->capture_default_str();
    s->add_option("--threads", o.threads,
                  "worker threads (0 = hardware); never changes the results")
        ->capture_default_str();
    s->add_option("--grid-out", o.grid_out, "write a plot grid CSV x,ecdf,f_corr,f_selfliang,f_5050");
    s->add_option("--grid-points", o.grid_points, "points in the plot grid")->capture_default_str();
    s->add_option("--samples-out", o.samples_out, "write raw samples as CSV lrs,region");

    auto* cp = app.add_subcommand("compare",
                                  "data-level run vs analytic overlays with pass/fail bands "
                                  "(exit 2 when the primary overlay misses its band)");
    add_common(cp, false, "json");
    cp->add_option("--reps", o.reps, "Monte Carlo repetitions")->capture_default_str();
    cp->add_option("--sample-size", o.sample_size, "observations per replicate")->capture_default_str();
    cp->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    cp->add_option("--threads", o.threads, "worker threads (0 = hardware); never changes the results")
        ->capture_default_str();
    cp->add_option("--grid-out", o.grid_out, "write a plot grid CSV x,ecdf,f_corr,f_selfliang,f_5050");
    cp->add_option("--grid-points", o.grid_points, "points in the plot grid")->capture_default_str();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(w)) return cmd_weights(o, out);
        if (app.got_subcommand(c)) return cmd_cdf(o, out);
        if (app.got_subcommand(q)) return cmd_quantile(o, out, err);
        if (app.got_subcommand(r)) return cmd_regions(o, std::cin, out);
        if (app.got_subcommand(s)) return run_simulate(o, mode, out, err);
        if (app.got_subcommand(cp)) return run_compare(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace chibar
