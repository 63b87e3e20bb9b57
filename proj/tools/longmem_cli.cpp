// Command-line front end: simulate | transform | estimate | rank | study | lab.
// Every run writes a manifest.json with the resolved configuration.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "longmem/longmem.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace longmem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct Manifest {
    std::string subcommand;
    std::map<std::string, std::string> flags;
    std::uint64_t seed = 0;
    std::string started = iso_now();

    void write(const fs::path& dir) const {
        fs::create_directories(dir);
        json j;
        j["version"] = kVersion;
        j["subcommand"] = subcommand;
        j["flags"] = flags;
        j["seed"] = seed;
        j["timestamps"] = {{"started", started}, {"finished", iso_now()}};
        std::ofstream out(dir / "manifest.json");
        if (!out) throw data_error("cannot write manifest in " + dir.string());
        out << j.dump(2) << "\n";
    }
};

EstimatorMethod parse_method(const std::string& name) {
    if (name == "aggvar") return EstimatorMethod::aggvar;
    if (name == "gph") return EstimatorMethod::gph;
    if (name == "lw") return EstimatorMethod::local_whittle;
    if (name == "whittle") return EstimatorMethod::whittle_farima;
    throw CLI::ValidationError("--method/--estimator", "unknown estimator '" + name + "'");
}

Innovation parse_innovation(const std::string& name) {
    if (name == "gaussian") return Innovation::gaussian;
    if (name == "exp") return Innovation::centered_exponential;
    if (name == "t") return Innovation::student_t;
    throw CLI::ValidationError("--innovation", "unknown innovation '" + name + "'");
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

// --config <json> takes precedence over command-line flags.
void apply_config_overrides(const std::string& path, CLI::App* sub) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw data_error(std::string("config parse failure: ") + e.what());
    }
    for (auto& [key, val] : cfg.items()) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        opt->clear();
        const std::string sval = val.is_string() ? val.get<std::string>() : val.dump();
        opt->add_result(sval);
        opt->run_callback();
    }
}

json scaling_report_json(const ScalingReport& r) {
    json j;
    j["target"] = r.target;
    j["N_grid"] = r.N_grid;
    j["log_stat"] = r.log_stat;
    j["fitted_exponent"] = r.fitted_exponent;
    j["exponent_ci"] = {r.exponent_ci_lo, r.exponent_ci_hi};
    j["replicates"] = r.replicates;
    return j;
}

void write_curve_csv(const ScalingReport& r, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path.string());
    out << "N,log_stat\n";
    for (std::size_t i = 0; i < r.N_grid.size(); ++i)
        out << r.N_grid[i] << "," << fmt17(r.log_stat[i]) << "\n";
}

json five_number_json(const stats::FiveNumber& f) {
    return {{"min", f.min}, {"q1", f.q1}, {"median", f.median}, {"q3", f.q3}, {"max", f.max}};
}

json summary_json(const StudySummary& s) {
    json j;
    j["M_selected"] = s.M_selected;
    j["median_delta"] = s.median_delta;
    j["median_P"] = s.median_P;
    j["H1"] = five_number_json(s.H1_summary);
    j["H2"] = five_number_json(s.H2_summary);
    return j;
}

void write_records_csv(const std::vector<StudyRecord>& records, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path.string());
    out << "id,N,H1,H2,delta,P\n";
    for (const auto& r : records)
        out << r.id << "," << r.N << "," << fmt17(r.H1) << "," << fmt17(r.H2) << ","
            << fmt17(r.delta) << "," << fmt17(r.P) << "\n";
}

void write_hist_csv(const stats::Histogram& h, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path.string());
    out << "bin_left,bin_right,count\n";
    for (std::size_t b = 0; b < h.counts.size(); ++b)
        out << fmt17(h.bin_left[b]) << "," << fmt17(h.bin_right[b]) << "," << h.counts[b]
            << "\n";
}

void write_boxplot_csv(const StudySummary& s, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write " + path.string());
    out << "quantity,min,q1,median,q3,max\n";
    auto row = [&](const char* name, const stats::FiveNumber& f) {
        out << name << "," << fmt17(f.min) << "," << fmt17(f.q1) << "," << fmt17(f.median) << ","
            << fmt17(f.q3) << "," << fmt17(f.max) << "\n";
    };
    row("H1", s.H1_summary);
    row("H2", s.H2_summary);
}

std::vector<TimeSeries> load_data_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw data_error("not a directory: " + dir);
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() != ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    std::vector<TimeSeries> out;
    for (const auto& p : paths) {
        SeriesFile sf = read_series(p.string());
        if (!sf.series.meta.count("id")) sf.series.meta["id"] = p.stem().string();
        out.push_back(std::move(sf.series));
    }
    if (out.empty()) throw data_error("no series files in " + dir);
    return out;
}

struct CliError {
    int code;
    std::string message;
};

void emit_error(int code, const std::string& message) {
    json j;
    j["error"] = message;
    j["exit_code"] = code;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"long-memory toolkit: simulation, Hurst estimation, Hermite ranks, "
                 "rank-stability studies, and asymptotic rate experiments"};
    app.require_subcommand(1);
    unsigned threads = std::thread::hardware_concurrency();
    app.add_option("--threads", threads, "parallelism bound (modules are serial today)");

    // ---- simulate ----------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "generate a synthetic series");
    double sim_fgn = -1.0, sim_farima = -10.0, sim_linear = -1.0, sim_phi = 0.5;
    std::string sim_weak, sim_innovation = "gaussian", sim_out, sim_config;
    int sim_df = 6;
    std::size_t sim_n = 0;
    std::uint64_t sim_seed = 1;
    sim->add_option("--fgn", sim_fgn, "fractional Gaussian noise with this Hurst index");
    sim->add_option("--farima", sim_farima, "FARIMA(0,d,0) with this memory parameter d");
    sim->add_option("--linear", sim_linear, "one-sided linear process with this Hurst index");
    sim->add_option("--weak", sim_weak, "weak-dependence model: iid | ar1 | shift");
    sim->add_option("--phi", sim_phi, "AR(1) / shift-map coefficient");
    sim->add_option("--innovation", sim_innovation, "gaussian | exp | t");
    sim->add_option("--df", sim_df, "degrees of freedom for t innovations");
    sim->add_option("--n", sim_n, "series length")->required();
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--out", sim_out, "output series file")->required();
    sim->add_option("--config", sim_config, "JSON file overriding flags");

    // ---- transform ---------------------------------------------------------
    auto* tra = app.add_subcommand("transform", "apply a pointwise/lagged transformation");
    std::string tra_in, tra_out, tra_spec, tra_config;
    tra->add_option("--in", tra_in, "input series file")->required();
    tra->add_option("--transform", tra_spec, "transformation in canonical text form")->required();
    tra->add_option("--out", tra_out, "output series file")->required();
    tra->add_option("--config", tra_config, "JSON file overriding flags");

    // ---- estimate ----------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "Hurst / memory-parameter estimation");
    std::string est_in, est_method = "lw", est_bandwidth = "auto", est_out = ".", est_config;
    est->add_option("--in", est_in, "input series file")->required();
    est->add_option("--method", est_method, "aggvar | gph | lw | whittle");
    est->add_option("--bandwidth", est_bandwidth, "integer bandwidth or 'auto'");
    est->add_option("--out", est_out, "directory for manifest.json");
    est->add_option("--config", est_config, "JSON file overriding flags");

    // ---- rank --------------------------------------------------------------
    auto* rnk = app.add_subcommand("rank", "Hermite / power / generalized rank");
    std::string rnk_spec, rnk_method = "gaussian", rnk_sample, rnk_x, rnk_y, rnk_out = ".",
                rnk_config;
    double rnk_shift = 0.0;
    rnk->add_option("--transform", rnk_spec, "transformation in canonical text form")->required();
    rnk->add_option("--method", rnk_method, "gaussian | power | generalized");
    rnk->add_option("--shift", rnk_shift, "report the rank of the shifted transformation");
    rnk->add_option("--sample", rnk_sample, "marginal sample file (power rank)");
    rnk->add_option("--x", rnk_x, "transformed series file (generalized rank)");
    rnk->add_option("--y", rnk_y, "underlying series file (generalized rank)");
    rnk->add_option("--out", rnk_out, "directory for manifest.json");
    rnk->add_option("--config", rnk_config, "JSON file overriding flags");

    // ---- study -------------------------------------------------------------
    auto* stu = app.add_subcommand("study", "rank-stability study over a series directory");
    std::string stu_dir, stu_estimator = "lw", stu_out = "study-out", stu_config;
    std::size_t stu_R = 200;
    std::uint64_t stu_seed = 1;
    bool stu_contrast = false;
    stu->add_option("--data-dir", stu_dir, "directory of series files")->required();
    stu->add_option("--estimator", stu_estimator, "aggvar | gph | lw | whittle");
    stu->add_option("--R", stu_R, "contrast replicates per series");
    stu->add_option("--seed", stu_seed, "master seed");
    stu->add_flag("--contrast-group", stu_contrast, "also run the synthetic contrast group");
    stu->add_option("--out", stu_out, "output directory");
    stu->add_option("--config", stu_config, "JSON file overriding flags");

    // ---- lab ---------------------------------------------------------------
    auto* lab = app.add_subcommand("lab", "asymptotic rate experiments");
    std::string lab_experiment, lab_out = "lab-out", lab_perturb, lab_transform, lab_weak = "ar1",
                lab_innovation = "gaussian", lab_ngrid = "512,1024,2048,4096,8192",
                lab_xgrid = "0,1", lab_config;
    double lab_H = 0.8, lab_phi = 0.5;
    std::size_t lab_reps = 500, lab_n = 4096;
    std::uint64_t lab_seed = 1;
    bool lab_iid = false;
    lab->add_option("--experiment", lab_experiment,
                    "scaling | samplevar | empirical | whittlerate | clt")
        ->required();
    lab->add_option("--H", lab_H, "Hurst index");
    lab->add_option("--perturb", lab_perturb, "perturbing transformation (text form)");
    lab->add_option("--transform", lab_transform, "transformation (empirical / clt)");
    lab->add_option("--n-grid", lab_ngrid, "comma-separated lengths");
    lab->add_option("--x-grid", lab_xgrid, "comma-separated evaluation points (empirical)");
    lab->add_option("--n", lab_n, "length (empirical / clt)");
    lab->add_option("--reps", lab_reps, "replicates");
    lab->add_option("--seed", lab_seed, "master seed");
    lab->add_option("--weak", lab_weak, "weak-dependence model for clt: iid | ar1 | shift");
    lab->add_option("--phi", lab_phi, "AR(1) / shift-map coefficient (clt)");
    lab->add_option("--innovation", lab_innovation, "gaussian | exp | t (clt)");
    lab->add_flag("--iid", lab_iid, "iid control instead of fGn (empirical)");
    lab->add_option("--out", lab_out, "output directory");
    lab->add_option("--config", lab_config, "JSON file overriding flags");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string* cfg =
            sub == sim ? &sim_config : sub == tra ? &tra_config : sub == est ? &est_config
            : sub == rnk ? &rnk_config : sub == stu ? &stu_config : &lab_config;
        if (!cfg->empty()) apply_config_overrides(*cfg, sub);

        Manifest man;
        man.subcommand = sub->get_name();
        for (const auto* opt : sub->get_options())
            if (opt->count() > 0 || !opt->get_default_str().empty())
                man.flags[opt->get_name()] =
                    opt->count() > 0 ? opt->results().back() : opt->get_default_str();
        man.flags["--threads"] = std::to_string(threads);

        if (sub == sim) {
            man.seed = sim_seed;
            TimeSeries out;
            if (sim_fgn > 0.0) {
                out = simulate_fgn({sim_fgn, sim_n, 1.0}, sim_seed);
            } else if (sim_farima > -1.0) {
                out = simulate_farima(sim_farima, sim_n, sim_seed);
            } else if (sim_linear > 0.0) {
                out = simulate_linear({sim_linear, parse_innovation(sim_innovation), sim_df},
                                      sim_n, sim_seed);
            } else if (!sim_weak.empty()) {
                WeakDepSpec spec;
                spec.kind = sim_weak == "iid"     ? WeakDepSpec::Kind::iid
                            : sim_weak == "ar1"   ? WeakDepSpec::Kind::ar1
                            : sim_weak == "shift" ? WeakDepSpec::Kind::bernoulli_shift
                                                  : throw CLI::ValidationError(
                                                        "--weak", "unknown model '" + sim_weak + "'");
                spec.phi = sim_phi;
                spec.innovation = parse_innovation(sim_innovation);
                spec.df = sim_df;
                out = simulate_weak(spec, sim_n, sim_seed);
            } else {
                throw CLI::ValidationError("simulate",
                                           "one of --fgn/--farima/--linear/--weak is required");
            }
            write_series(out, sim_out);
            man.write(fs::path(sim_out).has_parent_path() ? fs::path(sim_out).parent_path()
                                                          : fs::path("."));
        } else if (sub == tra) {
            const TransformSpec g = TransformSpec::parse(tra_spec);
            const SeriesFile in = read_series(tra_in);
            write_series(apply_transform(in.series, g), tra_out);
            man.write(fs::path(tra_out).has_parent_path() ? fs::path(tra_out).parent_path()
                                                          : fs::path("."));
        } else if (sub == est) {
            const SeriesFile in = read_series(est_in);
            const EstimatorMethod method = parse_method(est_method);
            std::size_t bw = 0;
            if (est_bandwidth != "auto") bw = std::stoull(est_bandwidth);
            const EstimatorResult r = estimate_hurst(in.series, method, bw);
            std::cout << method_name(r.method) << "," << in.series.size() << "," << r.bandwidth
                      << "," << fmt17(r.H_hat) << "," << fmt17(r.d_hat) << ","
                      << fmt17(r.std_error) << "\n";
            man.write(est_out);
        } else if (sub == rnk) {
            TransformSpec g = TransformSpec::parse(rnk_spec);
            RankReport report;
            if (rnk_method == "gaussian") {
                report = rnk->count("--shift") ? shifted_rank(g, rnk_shift) : hermite_rank(g);
            } else if (rnk_method == "power") {
                if (rnk_sample.empty())
                    throw CLI::ValidationError("rank", "--method power requires --sample");
                report = power_rank(g, read_series(rnk_sample).series.values);
            } else if (rnk_method == "generalized") {
                if (rnk_x.empty() || rnk_y.empty())
                    throw CLI::ValidationError("rank", "--method generalized requires --x and --y");
                report = generalized_rank(read_series(rnk_x).series.values,
                                          read_series(rnk_y).series.values);
            } else {
                throw CLI::ValidationError("--method", "unknown rank method '" + rnk_method + "'");
            }
            if (!report.found) throw numeric_error("no nonzero coefficient up to order " +
                                                   std::to_string(report.max_order_searched));
            std::cout << "rank," << report.rank << "\n";
            man.write(rnk_out);
        } else if (sub == stu) {
            StudyConfig cfg2;
            cfg2.R = stu_R;
            cfg2.estimator = parse_method(stu_estimator);
            cfg2.master_seed = stu_seed;
            cfg2.contrast_group = stu_contrast;
            man.seed = stu_seed;
            const StudyResult res = run_study(load_data_dir(stu_dir), cfg2);
            const fs::path out(stu_out);
            fs::create_directories(out);
            write_records_csv(res.records, out / "records.csv");
            write_hist_csv(res.summary.hist_P, out / "hist_P.csv");
            write_boxplot_csv(res.summary, out / "boxplot.csv");
            json j;
            j["summary"] = summary_json(res.summary);
            json ex = json::array();
            for (const auto& e : res.exclusions) ex.push_back({{"id", e.id}, {"reason", e.reason}});
            j["exclusions"] = ex;
            if (res.has_contrast) {
                j["contrast_summary"] = summary_json(res.contrast_summary);
                write_records_csv(res.contrast_records, out / "contrast_records.csv");
            }
            std::ofstream(out / "summary.json") << j.dump(2) << "\n";
            man.write(out);
        } else if (sub == lab) {
            man.seed = lab_seed;
            const fs::path out(lab_out);
            fs::create_directories(out);
            std::optional<TransformSpec> perturb;
            if (!lab_perturb.empty()) perturb = TransformSpec::parse(lab_perturb);
            json j;
            if (lab_experiment == "scaling") {
                const TransformSpec g = lab_transform.empty()
                                            ? TransformSpec::identity()
                                            : TransformSpec::parse(lab_transform);
                const double H = lab_H;
                Sampler sampler = [H, g](std::size_t N, std::uint64_t s) {
                    return apply_transform(simulate_fgn({H, N, 1.0}, s), g);
                };
                Statistic total = [](const TimeSeries& x) {
                    double s = 0.0;
                    for (double v : x.values) s += v - 0.0;
                    return s;
                };
                // partial-sum growth of the (uncentered) transformed series
                const ScalingReport r = scaling_exponent(sampler, total, parse_size_list(lab_ngrid),
                                                         lab_reps, lab_seed,
                                                         "partial-sum growth, F=" + g.str());
                j = scaling_report_json(r);
                write_curve_csv(r, out / "curve.csv");
            } else if (lab_experiment == "samplevar") {
                const ScalingReport r = sample_variance_experiment(
                    lab_H, perturb, parse_size_list(lab_ngrid), lab_reps, lab_seed);
                j = scaling_report_json(r);
                write_curve_csv(r, out / "curve.csv");
            } else if (lab_experiment == "whittlerate") {
                const ScalingReport r = whittle_rate_experiment(
                    lab_H, perturb, parse_size_list(lab_ngrid), lab_reps, lab_seed);
                j = scaling_report_json(r);
                write_curve_csv(r, out / "curve.csv");
            } else if (lab_experiment == "empirical") {
                const TransformSpec g = lab_transform.empty()
                                            ? TransformSpec::identity()
                                            : TransformSpec::parse(lab_transform);
                const EmpiricalProcessReport r = empirical_process_experiment(
                    lab_H, g, parse_double_list(lab_xgrid), lab_n, lab_reps, lab_seed, lab_iid);
                j["x_grid"] = r.x_grid;
                j["J1_estimates"] = r.J1_estimates;
                j["cross_correlations"] = r.cross_correlations;
                j["scaling_exponent_x0"] = r.scaling_exponent_x0;
            } else if (lab_experiment == "clt") {
                WeakDepSpec spec;
                spec.kind = lab_weak == "iid"     ? WeakDepSpec::Kind::iid
                            : lab_weak == "ar1"   ? WeakDepSpec::Kind::ar1
                            : lab_weak == "shift" ? WeakDepSpec::Kind::bernoulli_shift
                                                  : throw CLI::ValidationError(
                                                        "--weak", "unknown model '" + lab_weak + "'");
                spec.phi = lab_phi;
                spec.innovation = parse_innovation(lab_innovation);
                const TransformSpec f = lab_transform.empty()
                                            ? TransformSpec::clipped_absolute(3.0)
                                            : TransformSpec::parse(lab_transform);
                const NormalityReport r =
                    clt_stability_experiment(spec, f, lab_n, lab_reps, lab_seed);
                j["N"] = r.N;
                j["replicates"] = r.replicates;
                j["skewness"] = r.skewness;
                j["excess_kurtosis"] = r.excess_kurtosis;
                j["ks_distance"] = r.ks_distance;
                j["sigma2_lr"] = r.sigma2_lr;
            } else {
                throw CLI::ValidationError("--experiment",
                                           "unknown experiment '" + lab_experiment + "'");
            }
            std::ofstream(out / "report.json") << j.dump(2) << "\n";
            man.write(out);
        }
    } catch (const CLI::ValidationError& e) {
        emit_error(2, e.what());
        return 2;
    } catch (const degenerate_transform_error& e) {
        emit_error(2, e.what());
        return 2;
    } catch (const data_error& e) {
        emit_error(3, e.what());
        return 3;
    } catch (const numeric_error& e) {
        emit_error(4, e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        emit_error(2, e.what());
        return 2;
    } catch (const std::domain_error& e) {
        emit_error(2, e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error(4, e.what());
        return 4;
    }
    return 0;
}
