#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "longmem/study.hpp"

using namespace longmem;

TEST_CASE("delta statistic and percentile score") {
    REQUIRE(delta_statistic(0.7, 0.5) == Catch::Approx(0.0));   // floor: max(1/2, 0.4) = 1/2
    REQUIRE(delta_statistic(0.7, 0.6) == Catch::Approx(0.1));
    REQUIRE(delta_statistic(0.9, 0.8) == Catch::Approx(0.0));
    REQUIRE(delta_statistic(0.7182, 0.7217) == Catch::Approx(0.2217).margin(1e-12));
    const std::vector<double> contrast = {-0.1, 0.0, 0.1, 0.2};
    REQUIRE(percentile_score(0.05, contrast) == 0.5);
    REQUIRE(percentile_score(0.2, contrast) == 1.0);  // weak inequality
    REQUIRE(percentile_score(-0.5, contrast) == 0.0);
    REQUIRE_THROWS_AS(percentile_score(0.0, {}), std::invalid_argument);
}

TEST_CASE("config validation") {
    StudyConfig c;
    c.R = 10;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
    c.R = 200;
    c.H_window_lo = 0.4;
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("contrast run is deterministic and has the requested size") {
    const auto a = run_contrast(0.8, 512, 50, EstimatorMethod::local_whittle, 9);
    const auto b = run_contrast(0.8, 512, 50, EstimatorMethod::local_whittle, 9);
    REQUIRE(a.size() == 50);
    REQUIRE(a == b);
    const auto c = run_contrast(0.8, 512, 50, EstimatorMethod::local_whittle, 10);
    REQUIRE(a != c);
}

TEST_CASE("summaries aggregate records") {
    std::vector<StudyRecord> recs(3);
    recs[0].delta = 0.1; recs[0].P = 0.2; recs[0].H1 = 0.6; recs[0].H2 = 0.5;
    recs[1].delta = 0.3; recs[1].P = 0.9; recs[1].H1 = 0.7; recs[1].H2 = 0.6;
    recs[2].delta = 0.2; recs[2].P = 0.5; recs[2].H1 = 0.8; recs[2].H2 = 0.7;
    const StudySummary s = summarize(recs);
    REQUIRE(s.M_selected == 3);
    REQUIRE(s.median_delta == Catch::Approx(0.2));
    REQUIRE(s.median_P == Catch::Approx(0.5));
    REQUIRE(s.H1_summary.median == Catch::Approx(0.7));
    REQUIRE(s.hist_P.counts.size() == 20);
}

TEST_CASE("study selects, excludes, and scores") {
    std::vector<TimeSeries> data;
    for (int i = 0; i < 3; ++i) {
        TimeSeries t = simulate_fgn({0.8, 512, 1.0}, 900 + i);
        t.meta["id"] = "fgn-" + std::to_string(i);
        data.push_back(t);
    }
    TimeSeries tiny = simulate_fgn({0.8, 100, 1.0}, 950);
    tiny.meta["id"] = "too-short";
    data.push_back(tiny);
    TimeSeries flat;  // iid noise, H near 1/2, outside the window
    Rng rng(33);
    flat.values.resize(512);
    for (double& v : flat.values) v = rng.gaussian();
    flat.meta["id"] = "white";
    data.push_back(flat);

    StudyConfig cfg;
    cfg.R = 60;
    cfg.master_seed = 5;
    const StudyResult res = run_study(data, cfg);
    REQUIRE(res.records.size() == 3);
    REQUIRE(res.exclusions.size() == 2);
    bool saw_len = false, saw_window = false;
    for (const auto& e : res.exclusions) {
        if (e.id == "too-short") { REQUIRE(e.reason == "criterion-1"); saw_len = true; }
        if (e.id == "white") { REQUIRE(e.reason == "criterion-3"); saw_window = true; }
    }
    REQUIRE(saw_len);
    REQUIRE(saw_window);
    for (const auto& r : res.records) {
        REQUIRE(r.contrast_deltas.size() == 60);
        REQUIRE(r.P >= 0.0);
        REQUIRE(r.P <= 1.0);
        REQUIRE(r.delta == Catch::Approx(delta_statistic(r.H1, r.H2)));
    }
    REQUIRE(res.summary.M_selected == 3);
    REQUIRE_FALSE(res.has_contrast);

    // bit-identical rerun
    const StudyResult res2 = run_study(data, cfg);
    for (std::size_t i = 0; i < res.records.size(); ++i) {
        REQUIRE(res.records[i].delta == res2.records[i].delta);
        REQUIRE(res.records[i].P == res2.records[i].P);
    }
}

TEST_CASE("contrast group mirrors the observed pools") {
    std::vector<TimeSeries> data;
    for (int i = 0; i < 3; ++i)
        data.push_back(simulate_fgn({0.8, 512, 1.0}, 700 + i));
    StudyConfig cfg;
    cfg.R = 50;
    cfg.master_seed = 8;
    cfg.contrast_group = true;
    const StudyResult res = run_study(data, cfg);
    REQUIRE(res.has_contrast);
    REQUIRE(res.contrast_records.size() + res.contrast_exclusions.size() == res.records.size());
    for (const auto& r : res.contrast_records) REQUIRE(r.N == 512);
}

TEST_CASE("empty or fully excluded datasets are errors") {
    StudyConfig cfg;
    REQUIRE_THROWS_AS(run_study({}, cfg), std::invalid_argument);
    std::vector<TimeSeries> data{simulate_fgn({0.8, 100, 1.0}, 1)};
    REQUIRE_THROWS_AS(run_study(data, cfg), numeric_error);
}
