// Simulation-assisted rank-stability test: per-series Hurst estimates
// before and after squaring, fGn contrast distributions, percentile scores,
// the synthetic contrast group, and the aggregate summaries.

#ifndef LONGMEM_STUDY_HPP
#define LONGMEM_STUDY_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "longmem/process.hpp"
#include "longmem/rng.hpp"
#include "longmem/spectral.hpp"
#include "longmem/stats.hpp"
#include "longmem/timeseries.hpp"

namespace longmem {

struct StudyConfig {
    std::size_t R = 200;
    double H_window_lo = 0.6;
    double H_window_hi = 0.9;
    std::size_t min_length = 300;
    EstimatorMethod estimator = EstimatorMethod::local_whittle;
    std::uint64_t master_seed = 1;
    bool contrast_group = false;

    void validate() const {
        if (R < 50) throw std::invalid_argument("StudyConfig: R must be >= 50");
        if (H_window_lo <= 0.5 || H_window_hi >= 1.0 || H_window_lo >= H_window_hi)
            throw std::invalid_argument("StudyConfig: H window must lie inside (0.5, 1)");
    }
};

struct StudyRecord {
    std::string id;
    std::size_t N = 0;
    double H1 = 0.0;     // Hurst estimate of the centered series
    double H2 = 0.0;     // Hurst estimate of the centered-and-squared series
    double delta = 0.0;  // H2 - max(1/2, 2 H1 - 1)
    double P = 0.0;      // contrast percentile of delta
    std::vector<double> contrast_deltas;
};

struct Exclusion {
    std::string id;
    std::string reason;  // "criterion-1" (length) or "criterion-3" (H window)
};

struct StudySummary {
    std::size_t M_selected = 0;
    double median_delta = 0.0;
    double median_P = 0.0;
    stats::Histogram hist_P;  // 20 equal bins on [0, 1]
    stats::FiveNumber H1_summary{};
    stats::FiveNumber H2_summary{};
};

struct StudyResult {
    std::vector<StudyRecord> records;
    std::vector<Exclusion> exclusions;
    StudySummary summary;
    // filled when config.contrast_group is set
    bool has_contrast = false;
    std::vector<StudyRecord> contrast_records;
    std::vector<Exclusion> contrast_exclusions;
    StudySummary contrast_summary;
};

inline double delta_statistic(double H1, double H2) {
    return H2 - std::max(0.5, 2.0 * H1 - 1.0);
}

// Weak inequality: fraction of contrast values <= delta.
inline double percentile_score(double delta, const std::vector<double>& contrast) {
    if (contrast.empty()) throw std::invalid_argument("percentile_score: empty contrast");
    std::size_t count = 0;
    for (double v : contrast)
        if (v <= delta) ++count;
    return static_cast<double>(count) / static_cast<double>(contrast.size());
}

namespace detail {

// Step 1 + Step 2: center, estimate H on the series and on its square.
inline std::pair<double, double> estimate_pair(const TimeSeries& x, EstimatorMethod method) {
    TimeSeries centered;
    centered.values = x.values;
    const double m = stats::mean(centered.values);
    for (double& v : centered.values) v -= m;
    const double h1 = estimate_hurst(centered, method).H_hat;
    TimeSeries squared;
    squared.values.reserve(centered.size());
    for (double v : centered.values) squared.values.push_back(v * v);
    const double m2 = stats::mean(squared.values);
    for (double& v : squared.values) v -= m2;
    const double h2 = estimate_hurst(squared, method).H_hat;
    return {h1, h2};
}

}  // namespace detail

// Step 3: R fGn replicates at Hurst index H, each yielding
// delta_r = h2_r - max(1/2, 2 h1_r - 1).
inline std::vector<double> run_contrast(double H, std::size_t N, std::size_t R,
                                        EstimatorMethod estimator, std::uint64_t seed) {
    if (H <= 0.0 || H >= 1.0) throw std::domain_error("run_contrast: H must lie in (0, 1)");
    std::vector<double> deltas;
    deltas.reserve(R);
    std::size_t invalid = 0;
    for (std::size_t r = 0; r < R; ++r) {
        try {
            const TimeSeries g = simulate_fgn({H, N, 1.0}, derive_seed(seed, r));
            const auto [h1, h2] = detail::estimate_pair(g, estimator);
            deltas.push_back(delta_statistic(h1, h2));
        } catch (const std::exception&) {
            ++invalid;
        }
    }
    if (invalid * 20 > R)  // more than 5% failed replicates
        throw numeric_error("run_contrast: more than 5% of replicates failed");
    return deltas;
}

inline StudySummary summarize(const std::vector<StudyRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    std::vector<double> deltas, ps, h1s, h2s;
    for (const auto& r : records) {
        deltas.push_back(r.delta);
        ps.push_back(r.P);
        h1s.push_back(r.H1);
        h2s.push_back(r.H2);
    }
    StudySummary s;
    s.M_selected = records.size();
    s.median_delta = stats::median(deltas);
    s.median_P = stats::median(ps);
    s.hist_P = stats::histogram(ps, 0.0, 1.0, 20);
    s.H1_summary = stats::five_number(h1s);
    s.H2_summary = stats::five_number(h2s);
    return s;
}

namespace detail {

inline void run_study_core(const std::vector<TimeSeries>& dataset, const StudyConfig& config,
                           std::uint64_t seed_space, std::vector<StudyRecord>& records,
                           std::vector<Exclusion>& exclusions) {
    for (std::size_t m = 0; m < dataset.size(); ++m) {
        const TimeSeries& x = dataset[m];
        std::string id = std::to_string(m);
        if (auto it = x.meta.find("id"); it != x.meta.end()) id = it->second;
        if (x.size() < config.min_length) {
            exclusions.push_back({id, "criterion-1"});
            continue;
        }
        const auto [h1, h2] = estimate_pair(x, config.estimator);
        if (h1 < config.H_window_lo || h1 > config.H_window_hi) {
            exclusions.push_back({id, "criterion-3"});
            continue;
        }
        StudyRecord rec;
        rec.id = id;
        rec.N = x.size();
        rec.H1 = h1;
        rec.H2 = h2;
        rec.delta = delta_statistic(h1, h2);
        rec.contrast_deltas =
            run_contrast(h1, x.size(), config.R, config.estimator, derive_seed(seed_space, m));
        rec.P = percentile_score(rec.delta, rec.contrast_deltas);
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw numeric_error("run_study: no series survived selection");
}

}  // namespace detail

// Step 5: one fGn series per record, with H and N drawn independently and
// uniformly with replacement from the observed pools.
inline std::vector<TimeSeries> make_contrast_group(const std::vector<StudyRecord>& records,
                                                   std::uint64_t seed) {
    if (records.empty()) throw std::invalid_argument("make_contrast_group: no records");
    Rng rng(seed);
    std::vector<TimeSeries> group;
    group.reserve(records.size());
    for (std::size_t m = 0; m < records.size(); ++m) {
        const double H = records[rng.integer(records.size())].H1;
        const std::size_t N = records[rng.integer(records.size())].N;
        TimeSeries ts = simulate_fgn({H, N, 1.0}, derive_seed(seed, m + 1));
        ts.meta["id"] = "contrast-" + std::to_string(m);
        group.push_back(std::move(ts));
    }
    return group;
}

inline StudyResult run_study(const std::vector<TimeSeries>& dataset, const StudyConfig& config) {
    config.validate();
    if (dataset.empty()) throw std::invalid_argument("run_study: empty dataset");
    StudyResult out;
    detail::run_study_core(dataset, config, mix64(config.master_seed), out.records,
                           out.exclusions);
    out.summary = summarize(out.records);
    if (config.contrast_group) {
        const std::uint64_t cseed = mix64(config.master_seed ^ 0x5b5a5958d1d2d3d4ULL);
        const auto group = make_contrast_group(out.records, cseed);
        detail::run_study_core(group, config, mix64(cseed), out.contrast_records,
                               out.contrast_exclusions);
        out.contrast_summary = summarize(out.contrast_records);
        out.has_contrast = true;
    }
    return out;
}

}  // namespace longmem

#endif
