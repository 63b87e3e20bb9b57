// TimeSeries container and plain-text ingestion/export. The on-disk format
// is one value per line; `# key: value` lines carry metadata and an
// `index,value` CSV with header is also accepted on ingestion.

#ifndef LONGMEM_TIMESERIES_HPP
#define LONGMEM_TIMESERIES_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace longmem {

class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TimeSeries {
    std::vector<double> values;
    std::map<std::string, std::string> meta;  // generator description, seed, ...

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

struct SeriesFile {
    std::string path;
    TimeSeries series;
    std::size_t comment_lines = 0;
    std::size_t skipped_blank = 0;
};

namespace detail {

inline bool parse_strict_double(const std::string& tok, double& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

inline SeriesFile read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open series file: " + path);
    SeriesFile sf;
    sf.path = path;
    std::string line;
    std::size_t lineno = 0;
    bool csv_header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty()) {
            ++sf.skipped_blank;
            continue;
        }
        if (t[0] == '#') {
            ++sf.comment_lines;
            const auto colon = t.find(':');
            if (colon != std::string::npos) {
                const std::string key = detail::trim(t.substr(1, colon - 1));
                const std::string val = detail::trim(t.substr(colon + 1));
                if (!key.empty()) sf.series.meta[key] = val;
            }
            continue;
        }
        const auto comma = t.find(',');
        std::string tok = t;
        if (comma != std::string::npos) {
            // index,value CSV; the header row is accepted once
            const std::string first = detail::trim(t.substr(0, comma));
            tok = detail::trim(t.substr(comma + 1));
            double dummy;
            if (!detail::parse_strict_double(first, dummy)) {
                if (!csv_header_seen && sf.series.values.empty() && first == "index" &&
                    tok == "value") {
                    csv_header_seen = true;
                    continue;
                }
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": non-numeric index '" + first + "'");
            }
        }
        double v;
        if (!detail::parse_strict_double(tok, v))
            throw data_error(path + ":" + std::to_string(lineno) + ": non-numeric or missing value '" +
                             tok + "'");
        if (!std::isfinite(v))
            throw data_error(path + ":" + std::to_string(lineno) + ": non-finite value");
        sf.series.values.push_back(v);
    }
    if (sf.series.values.empty()) throw data_error("empty series: " + path);
    return sf;
}

inline void write_series(const TimeSeries& x, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write series file: " + path);
    out.precision(17);
    for (const auto& [k, v] : x.meta) out << "# " << k << ": " << v << "\n";
    for (double v : x.values) out << v << "\n";
    if (!out) throw data_error("write failure: " + path);
}

}  // namespace longmem

#endif
