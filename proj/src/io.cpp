#include "covlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace covlab {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void save_space(const FiniteMetricSpace& s, const std::string& path, const std::string& units) {
    auto out = open_out(path);
    bool coords = !s.coords.empty();
    out << "covlab-space 1\n";
    out << "points " << s.n << "\n";
    out << "mesh " << num(s.mesh) << "\n";
    out << "units " << units << "\n";
    if (!s.name.empty() && s.name.find_first_of(" \t") == std::string::npos)
        out << "name " << s.name << "\n";
    out << "coords " << (coords ? 1 : 0) << "\n";
    for (int i = 0; i < s.n; ++i) {
        out << num(s.weights[i]);
        if (coords)
            out << " " << num(s.coords[i][0]) << " " << num(s.coords[i][1]) << " "
                << num(s.coords[i][2]);
        out << "\n";
    }
    for (int i = 0; i < s.n; ++i) {
        for (int j = 0; j < i; ++j) out << (j ? " " : "") << num(s.d(i, j));
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

FiniteMetricSpace load_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    auto fail = [&](const std::string& what) {
        throw std::runtime_error(path + ": " + what);
    };
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != "covlab-space" || version != 1)
        fail("not a covlab-space version 1 file");
    std::string key, units, name;
    int n = -1, has_coords = -1;
    double mesh = 0.0;
    while (in >> key) {
        if (key == "points") {
            in >> n;
        } else if (key == "mesh") {
            in >> mesh;
        } else if (key == "units") {
            in >> units;
        } else if (key == "name") {
            in >> name;
        } else if (key == "coords") {
            in >> has_coords;
            break;
        } else {
            fail("unknown header key \"" + key + "\"");
        }
        if (!in) fail("bad header value after \"" + key + "\"");
    }
    if (n < 1 || has_coords < 0 || mesh <= 0.0) fail("incomplete header");

    std::vector<double> weights(n);
    std::vector<std::array<double, 3>> coords;
    if (has_coords) coords.resize(n);
    for (int i = 0; i < n; ++i) {
        if (!(in >> weights[i])) fail("missing weight for point " + std::to_string(i));
        if (has_coords)
            if (!(in >> coords[i][0] >> coords[i][1] >> coords[i][2]))
                fail("missing coordinates for point " + std::to_string(i));
    }
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            double v = 0.0;
            if (!(in >> v)) fail("missing distance (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            dist[static_cast<std::size_t>(i) * n + j] = v;
            dist[static_cast<std::size_t>(j) * n + i] = v;
        }
    auto s = make_space(n, std::move(dist), std::move(weights), mesh);
    s.coords = std::move(coords);
    s.name = name;
    return s;
}

void write_covspec_csv(const CovSpecReport& r, const std::string& path) {
    auto out = open_out(path);
    out << "delta_low,delta_high,evidence_below,evidence_above,candidate_source,certified\n";
    for (const auto& b : r.brackets) {
        out << num(b.delta_low) << "," << num(b.delta_high) << "," << b.evidence_below << ","
            << b.evidence_above << ",";
        if (std::isfinite(b.candidate)) out << num(b.candidate);
        out << "," << (b.certified ? "true" : "false") << "\n";
    }
    for (const auto& u : r.uncertified)
        out << "# uncertified " << num(u.lo) << " " << num(u.hi) << " " << u.reason << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_sequence_csv(const SpaceSequence& seq, const std::string& path) {
    auto out = open_out(path);
    std::set<std::string> keys;
    for (const auto& m : seq.members)
        for (const auto& kv : m.features) keys.insert(kv.first);
    out << "j,volume,diameter,mesh";
    for (const auto& k : keys) out << "," << k;
    out << "\n";
    for (std::size_t i = 0; i < seq.members.size(); ++i) {
        const auto& m = seq.members[i];
        out << seq.j_list[i] << "," << num(m.volume) << "," << num(m.diameter) << ","
            << num(m.space.mesh);
        for (const auto& k : keys) {
            out << ",";
            auto it = m.features.find(k);
            if (it != m.features.end()) out << num(it->second);
        }
        out << "\n";
    }
    if (seq.limit_is_zero) out << "# limit ZERO\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_series(const std::string& x_name, const std::string& y_name,
                  const std::vector<std::pair<double, double>>& xy, const std::string& path) {
    auto out = open_out(path);
    out << "# " << x_name << " " << y_name << "\n";
    for (const auto& [x, y] : xy) out << num(x) << " " << num(y) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_cover_edges(const TruncatedCover& c, const std::string& path) {
    auto out = open_out(path);
    out << "# node_u node_v base_u base_v length\n";
    for (int u = 0; u < c.nodes(); ++u)
        for (const auto& [v, eid] : c.adjacency[u])
            if (u < v)
                out << u << " " << v << " " << c.base[u] << " " << c.base[v] << " "
                    << num(c.edge_len[eid]) << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

void write_text(const std::string& text, const std::string& path) {
    auto out = open_out(path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

[[noreturn]] void config_fail(const Config& c, const std::string& key, const std::string& what) {
    auto it = c.lines.find(key);
    std::string where = it != c.lines.end() ? "line " + std::to_string(it->second) : "missing key";
    throw ConfigError(c.path + ": " + where + ": field \"" + key + "\" " + what);
}

}  // namespace

std::string Config::get_string(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) config_fail(*this, key, "is required");
    return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
    const std::string raw = get_string(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(raw, &used);
    } catch (const std::exception&) {
        config_fail(*this, key, "expects a number, got \"" + raw + "\"");
    }
    if (used != raw.size()) config_fail(*this, key, "expects a number, got \"" + raw + "\"");
    return v;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int Config::get_int(const std::string& key) const {
    double v = get_double(key);
    int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) config_fail(*this, key, "expects an integer");
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
    std::string raw = get_string(key);
    std::replace(raw.begin(), raw.end(), ',', ' ');
    std::istringstream is(raw);
    std::vector<int> out;
    int v = 0;
    while (is >> v) out.push_back(v);
    if (out.empty() || !is.eof()) config_fail(*this, key, "expects a comma-separated integer list");
    return out;
}

void Config::restrict_keys(const std::vector<std::string>& known) const {
    for (const auto& kv : values)
        if (std::find(known.begin(), known.end(), kv.first) == known.end())
            config_fail(*this, kv.first, "is not a recognized key for this experiment");
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path);
    Config c;
    c.path = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ": line " + std::to_string(lineno) +
                              ": expected key = value, got \"" + line + "\"");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ": line " + std::to_string(lineno) +
                              ": expected key = value, got \"" + line + "\"");
        if (c.values.count(key))
            throw ConfigError(path + ": line " + std::to_string(lineno) + ": duplicate key \"" +
                              key + "\" (first at line " + std::to_string(c.lines[key]) + ")");
        c.values[key] = value;
        c.lines[key] = lineno;
    }
    return c;
}

}  // namespace covlab
