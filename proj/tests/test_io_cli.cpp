#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "longmem/process.hpp"
#include "longmem/timeseries.hpp"

using namespace longmem;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path d = fs::temp_directory_path() / "longmem-test";
    fs::create_directories(d);
    return d;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
    std::string cmd = std::string(LONGMEM_CLI_PATH) + " " + args + " 2>/dev/null";
    if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("series files round-trip bit-exactly with metadata") {
    const fs::path p = temp_dir() / "roundtrip.txt";
    const TimeSeries x = simulate_fgn({0.8, 257, 1.0}, 99);
    write_series(x, p.string());
    const SeriesFile sf = read_series(p.string());
    REQUIRE(sf.series.values == x.values);
    REQUIRE(sf.series.meta.at("H") == "0.8");
    REQUIRE(sf.series.meta.at("seed") == "99");
}

TEST_CASE("ingestion accepts plain and csv layouts") {
    const fs::path d = temp_dir();
    write_text(d / "plain.txt", "1.0\n2.0\n3.0\n");
    REQUIRE(read_series((d / "plain.txt").string()).series.values ==
            std::vector<double>{1.0, 2.0, 3.0});

    write_text(d / "csv.txt", "index,value\n0,1.5\n1,-2.5\n");
    const SeriesFile csv = read_series((d / "csv.txt").string());
    REQUIRE(csv.series.values == std::vector<double>{1.5, -2.5});

    write_text(d / "meta.txt", "# source: synthetic\n# id: abc\n4.0\n");
    const SeriesFile meta = read_series((d / "meta.txt").string());
    REQUIRE(meta.series.meta.at("source") == "synthetic");
    REQUIRE(meta.series.meta.at("id") == "abc");
    REQUIRE(meta.comment_lines == 2);
}

TEST_CASE("ingestion rejects missing or malformed values") {
    const fs::path d = temp_dir();
    write_text(d / "na.txt", "1.0\nNA\n3.0\n");
    REQUIRE_THROWS_AS(read_series((d / "na.txt").string()), data_error);
    write_text(d / "empty.txt", "\n\n");
    REQUIRE_THROWS_AS(read_series((d / "empty.txt").string()), data_error);
    write_text(d / "inf.txt", "1.0\ninf\n");
    REQUIRE_THROWS_AS(read_series((d / "inf.txt").string()), data_error);
    REQUIRE_THROWS_AS(read_series((d / "does-not-exist.txt").string()), data_error);
}

TEST_CASE("cli simulate is deterministic and round-trips through ingest") {
    const fs::path d = temp_dir();
    const std::string out1 = (d / "s1.txt").string(), out2 = (d / "s2.txt").string();
    REQUIRE(run_cli("simulate --fgn 0.8 --n 512 --seed 7 --out " + out1) == 0);
    REQUIRE(run_cli("simulate --fgn 0.8 --n 512 --seed 7 --out " + out2) == 0);
    REQUIRE(read_text(out1) == read_text(out2));
    const SeriesFile sf = read_series(out1);
    REQUIRE(sf.series.size() == 512);
    REQUIRE(fs::exists(d / "manifest.json"));
}

TEST_CASE("cli rank prints the expected line") {
    const fs::path d = temp_dir();
    const fs::path cap = d / "rank.out";
    REQUIRE(run_cli("rank --transform square --out " + d.string(), cap) == 0);
    REQUIRE(read_text(cap) == "rank,2\n");
    REQUIRE(run_cli("rank --transform hermite:5 --out " + d.string(), cap) == 0);
    REQUIRE(read_text(cap) == "rank,5\n");
}

TEST_CASE("cli estimate emits the documented csv line") {
    const fs::path d = temp_dir();
    const std::string series = (d / "est.txt").string();
    REQUIRE(run_cli("simulate --fgn 0.7 --n 2048 --seed 3 --out " + series) == 0);
    const fs::path cap = d / "est.out";
    REQUIRE(run_cli("estimate --in " + series + " --method lw --out " + d.string(), cap) == 0);
    const std::string line = read_text(cap);
    REQUIRE(line.rfind("lw,2048,", 0) == 0);
    int commas = 0;
    for (char c : line)
        if (c == ',') ++commas;
    REQUIRE(commas == 5);  // method,N,bandwidth,H_hat,d_hat,stderr
}

TEST_CASE("cli transform applies and chains") {
    const fs::path d = temp_dir();
    const std::string a = (d / "a.txt").string(), b = (d / "b.txt").string();
    REQUIRE(run_cli("simulate --fgn 0.8 --n 300 --seed 2 --out " + a) == 0);
    REQUIRE(run_cli("transform --in " + a + " --transform square --out " + b) == 0);
    const SeriesFile fa = read_series(a), fb = read_series(b);
    for (std::size_t i = 0; i < 300; ++i)
        REQUIRE(fb.series.values[i] == fa.series.values[i] * fa.series.values[i]);
    REQUIRE(fb.series.meta.at("transform") == "square");
}

TEST_CASE("cli exit codes distinguish usage, data, and combination errors") {
    const fs::path d = temp_dir();
    REQUIRE(run_cli("estimate --in " + (d / "missing.txt").string()) == 3);
    REQUIRE(run_cli("frobnicate") == 2);
    REQUIRE(run_cli("simulate --n 100 --out " + (d / "x.txt").string()) == 2);  // no model
    REQUIRE(run_cli("rank --transform square --method power --out " + d.string()) == 2);
    REQUIRE(run_cli("rank --transform poly:5 --out " + d.string()) == 2);  // constant transform
}

TEST_CASE("cli config file overrides flags") {
    const fs::path d = temp_dir();
    write_text(d / "cfg.json", "{\"seed\": 9, \"n\": 64}\n");
    const std::string out = (d / "cfgged.txt").string();
    REQUIRE(run_cli("simulate --fgn 0.8 --n 512 --seed 1 --config " + (d / "cfg.json").string() +
                    " --out " + out) == 0);
    REQUIRE(read_series(out).series.size() == 64);
    REQUIRE(read_series(out).series.meta.at("seed") == "9");
}

TEST_CASE("cli study writes the documented artifacts") {
    const fs::path d = temp_dir() / "study";
    const fs::path dir = d / "data";
    fs::create_directories(dir);
    for (int i = 0; i < 2; ++i)
        REQUIRE(run_cli("simulate --fgn 0.8 --n 512 --seed " + std::to_string(40 + i) + " --out " +
                        (dir / ("s" + std::to_string(i) + ".txt")).string()) == 0);
    const fs::path out = d / "out";
    REQUIRE(run_cli("study --data-dir " + dir.string() + " --estimator lw --R 50 --seed 4 --out " +
                    out.string()) == 0);
    for (const char* f : {"records.csv", "summary.json", "hist_P.csv", "boxplot.csv",
                          "manifest.json"})
        REQUIRE(fs::exists(out / f));
    const std::string records = read_text(out / "records.csv");
    REQUIRE(records.rfind("id,N,H1,H2,delta,P\n", 0) == 0);
}
