#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "covlab/cover.hpp"
#include "covlab/examples.hpp"
#include "covlab/metric_space.hpp"
#include "covlab/spectrum.hpp"

namespace covlab {

// Line-oriented text format: header (point count, mesh, units, name, flags),
// one weight/coordinate line per point, then the lower-triangular distance
// matrix. Full-precision decimals, so a round trip is lossless.
void save_space(const FiniteMetricSpace& s, const std::string& path, const std::string& units = "length");
FiniteMetricSpace load_space(const std::string& path);

// CSV with columns delta_low, delta_high, evidence_below, evidence_above,
// candidate_source, certified; uncertified regions follow as '#' comments.
void write_covspec_csv(const CovSpecReport& r, const std::string& path);

// CSV with columns j, volume, diameter, mesh, then the union of feature keys.
void write_sequence_csv(const SpaceSequence& seq, const std::string& path);

// Two-column plot series with a '# x y' header line.
void write_series(const std::string& x_name, const std::string& y_name,
                  const std::vector<std::pair<double, double>>& xy, const std::string& path);

// Cover edge list with the projection columns: node_u node_v base_u base_v length.
void write_cover_edges(const TruncatedCover& c, const std::string& path);

void write_text(const std::string& text, const std::string& path);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key = value config: one pair per line, '#' comments, blank lines ok.
// Typed getters throw ConfigError naming the line and field on bad input.
struct Config {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;
    std::string path;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<int> get_int_list(const std::string& key) const;  // comma-separated
    // Rejects keys outside `known` so typos fail loudly, naming the line.
    void restrict_keys(const std::vector<std::string>& known) const;
};

Config load_config(const std::string& path);

}  // namespace covlab
