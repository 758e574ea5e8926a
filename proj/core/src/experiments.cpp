#include "aia/experiments.hpp"

#include "aia/parallel.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace aia {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double to_double(const std::string& v, int line, const std::string& key)
{
    const std::string t = trim(v);
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(d))
        throw ConfigError("invalid number for '" + key + "': '" + t + "'", line);
    return d;
}

long to_int(const std::string& v, int line, const std::string& key)
{
    const std::string t = trim(v);
    char* end = nullptr;
    errno = 0;
    const long n = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw ConfigError("invalid integer for '" + key + "': '" + t + "'", line);
    return n;
}

bool to_bool(const std::string& v, int line, const std::string& key)
{
    const std::string t = trim(v);
    if (t == "true" || t == "1" || t == "yes")
        return true;
    if (t == "false" || t == "0" || t == "no")
        return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + t + "'", line);
}

const std::vector<std::string>& common_keys()
{
    static const std::vector<std::string> k = {"model", "tf_min", "tf_max", "tf_points", "tf_log",
                                               "scenarios", "rel_tol", "abs_tol", "threads",
                                               "output", "dtau_points"};
    return k;
}

std::vector<std::string> model_keys(Model m)
{
    switch (m) {
    case Model::Lz: return {"x", "z_i", "z_f"};
    case Model::Tfi: return {"L", "h_i", "h_f"};
    case Model::Open: return {"x", "z_i", "z_f", "T", "g"};
    }
    return {};
}

std::vector<std::string> allowed_scenarios(Model m)
{
    if (m == Model::Tfi)
        return {"1", "2", "opt"};
    return {"1", "2", "3", "4", "opt"};
}

bool contains(const std::vector<std::string>& v, const std::string& s)
{
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r')
            c = ';';
    return s;
}

void compute_lz_row(const SweepConfig& cfg, SweepRow& row)
{
    LzParams p = cfg.lz;
    p.t_f = row.t_f;
    const StateVector exact = evolve_schrodinger(p, cfg.ode);
    row.values[0] = state_distance(exact, adiabatic_state(p));
    row.values[1] = state_distance(exact, adiabatic_first_order(p));
    for (const auto& s : cfg.scenarios) {
        if (s == "opt") {
            const DtauOptimum o = optimize_dtau(p, exact);
            row.values[6] = o.distance;
            row.values[11] = o.dtau;
        } else {
            const int k = std::stoi(s);
            const SwitchingTimes st = switching_times(p, k);
            row.values[1 + k] = state_distance(exact, aia_state(p, st));
            row.values[6 + k] = st.dtau();
        }
    }
}

void compute_tfi_row(const SweepConfig& cfg, SweepRow& row)
{
    TfiParams p = cfg.tfi;
    p.t_f = row.t_f;
    const ModeRegister exact = evolve_register(p, cfg.ode);
    row.values[0] = register_distance(exact, adiabatic_register(p));
    for (const auto& s : cfg.scenarios) {
        if (s == "opt") {
            const DtauOptimum o = optimize_dtau_tfi(p, exact);
            row.values[6] = o.distance;
            row.values[11] = o.dtau;
        } else {
            const int k = std::stoi(s);
            const SwitchingTimes st = switching_times_tfi(p, k);
            row.values[1 + k] = register_distance(exact, aia_register(p, st));
            row.values[6 + k] = st.dtau();
        }
    }
}

OpenParams open_params(const SweepConfig& cfg, double t_f, double T)
{
    return {cfg.lz.x, cfg.lz.z_i, cfg.lz.z_f, t_f, T, cfg.g};
}

void compute_open_row(const SweepConfig& cfg, SweepRow& row)
{
    const OpenParams p = open_params(cfg, row.t_f, *row.T);
    const CoherenceVector exact = evolve_master(p, cfg.ode);
    row.values[0] = trace_distance(exact, adiabatic_state_open(p));
    for (const auto& s : cfg.scenarios) {
        if (s == "opt") {
            const DtauOptimum o = optimize_dtau_open(p, exact);
            row.values[6] = o.distance;
            row.values[11] = o.dtau;
        } else {
            const int k = std::stoi(s);
            const SwitchingTimes st = switching_times_open(p, k);
            row.values[1 + k] = trace_distance(exact, aia_state_open(p, st));
            row.values[6 + k] = st.dtau();
        }
    }
}

} // namespace

const char* model_name(Model m)
{
    switch (m) {
    case Model::Lz: return "lz";
    case Model::Tfi: return "tfi";
    case Model::Open: return "open";
    }
    return "?";
}

Model parse_model(const std::string& s)
{
    if (s == "lz")
        return Model::Lz;
    if (s == "tfi")
        return Model::Tfi;
    if (s == "open")
        return Model::Open;
    throw ConfigError("unknown model '" + s + "'");
}

void SweepConfig::validate() const
{
    if (!(tf_min > 0.0) || !(tf_min < tf_max))
        throw ConfigError("need 0 < tf_min < tf_max");
    if (tf_points != 0 && tf_points < 2)
        throw ConfigError("tf_points must be >= 2");
    if (scenarios.empty())
        throw ConfigError("scenario list is empty");
    if (!(ode.rel_tol > 0.0) || !(ode.abs_tol > 0.0))
        throw ConfigError("tolerances must be positive");
    if (dtau_points < 3)
        throw ConfigError("dtau_points must be >= 3");
    try {
        switch (model) {
        case Model::Lz: {
            LzParams p = lz;
            p.t_f = 1.0;
            p.validate();
            break;
        }
        case Model::Tfi: {
            TfiParams p = tfi;
            p.t_f = 1.0;
            p.validate();
            break;
        }
        case Model::Open:
            if (temperatures.empty())
                throw ConfigError("temperature list is empty");
            for (double T : temperatures)
                open_params(*this, 1.0, T).validate();
            break;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

SweepConfig parse_config(std::istream& in, std::optional<Model> expected)
{
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> entries;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("empty key", lineno);
        if (entries.count(key))
            throw ConfigError("duplicate key '" + key + "'", lineno);
        entries[key] = {value, lineno};
    }

    SweepConfig cfg;
    if (auto it = entries.find("model"); it != entries.end()) {
        try {
            cfg.model = parse_model(it->second.value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), it->second.line);
        }
        if (expected && *expected != cfg.model)
            throw ConfigError(std::string("config is for model '") + model_name(cfg.model) +
                                  "' but '" + model_name(*expected) + "' was requested",
                              it->second.line);
    } else if (expected) {
        cfg.model = *expected;
    } else {
        throw ConfigError("no model given");
    }

    const auto mk = model_keys(cfg.model);
    for (const auto& [key, e] : entries)
        if (!contains(common_keys(), key) && !contains(mk, key))
            throw ConfigError("unknown key '" + key + "' for model " + model_name(cfg.model), e.line);

    for (const auto& [key, e] : entries) {
        const std::string& v = e.value;
        const int ln = e.line;
        if (key == "x")
            cfg.lz.x = to_double(v, ln, key);
        else if (key == "z_i")
            cfg.lz.z_i = to_double(v, ln, key);
        else if (key == "z_f")
            cfg.lz.z_f = to_double(v, ln, key);
        else if (key == "L")
            cfg.tfi.L = static_cast<int>(to_int(v, ln, key));
        else if (key == "h_i")
            cfg.tfi.h_i = to_double(v, ln, key);
        else if (key == "h_f")
            cfg.tfi.h_f = to_double(v, ln, key);
        else if (key == "g")
            cfg.g = to_double(v, ln, key);
        else if (key == "T") {
            cfg.temperatures.clear();
            for (const auto& tok : split(v, ','))
                cfg.temperatures.push_back(to_double(tok, ln, key));
        } else if (key == "tf_min")
            cfg.tf_min = to_double(v, ln, key);
        else if (key == "tf_max")
            cfg.tf_max = to_double(v, ln, key);
        else if (key == "tf_points")
            cfg.tf_points = static_cast<int>(to_int(v, ln, key));
        else if (key == "tf_log")
            cfg.tf_log = to_bool(v, ln, key);
        else if (key == "scenarios") {
            cfg.scenarios.clear();
            for (const auto& tok : split(v, ',')) {
                if (tok.empty())
                    continue;
                if (!contains(allowed_scenarios(cfg.model), tok))
                    throw ConfigError("scenario '" + tok + "' not available for model " + model_name(cfg.model), ln);
                if (!contains(cfg.scenarios, tok))
                    cfg.scenarios.push_back(tok);
            }
            if (cfg.scenarios.empty())
                throw ConfigError("scenario list is empty", ln);
        } else if (key == "rel_tol")
            cfg.ode.rel_tol = to_double(v, ln, key);
        else if (key == "abs_tol")
            cfg.ode.abs_tol = to_double(v, ln, key);
        else if (key == "threads") {
            const long n = to_int(v, ln, key);
            if (n < 1)
                throw ConfigError("threads must be >= 1", ln);
            cfg.threads = static_cast<unsigned>(n);
        } else if (key == "output")
            cfg.output = v;
        else if (key == "dtau_points")
            cfg.dtau_points = static_cast<int>(to_int(v, ln, key));
    }
    if (cfg.model == Model::Tfi && !entries.count("scenarios"))
        cfg.scenarios = {"1", "2", "opt"};
    cfg.validate();
    return cfg;
}

SweepConfig load_config(const std::string& path, std::optional<Model> expected)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(f, expected);
}

std::vector<double> tf_grid(const SweepConfig& cfg)
{
    int n = cfg.tf_points;
    if (n == 0)
        n = std::max(2, static_cast<int>(std::lround(12.0 * std::log10(cfg.tf_max / cfg.tf_min))));
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        g[i] = cfg.tf_log ? cfg.tf_min * std::pow(cfg.tf_max / cfg.tf_min, u)
                          : cfg.tf_min + (cfg.tf_max - cfg.tf_min) * u;
    }
    g.front() = cfg.tf_min;
    g.back() = cfg.tf_max;
    return g;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    std::vector<SweepRow> rows;
    for (double tf : tf_grid(cfg)) {
        if (cfg.model == Model::Open) {
            for (double T : cfg.temperatures) {
                SweepRow r;
                r.t_f = tf;
                r.T = T;
                rows.push_back(r);
            }
        } else {
            SweepRow r;
            r.t_f = tf;
            rows.push_back(r);
        }
    }
    parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
        SweepRow& r = rows[i];
        try {
            switch (cfg.model) {
            case Model::Lz: compute_lz_row(cfg, r); break;
            case Model::Tfi: compute_tfi_row(cfg, r); break;
            case Model::Open: compute_open_row(cfg, r); break;
            }
        } catch (const std::exception& e) {
            r.values.fill(std::nullopt);
            r.err = sanitize(e.what());
        }
    });
    return rows;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows)
{
    out << "t_f";
    if (cfg.model == Model::Open)
        out << ",T";
    for (const char* c : kValueColumns)
        out << ',' << c;
    out << ",err\n";
    for (const auto& r : rows) {
        out << format_double(r.t_f);
        if (cfg.model == Model::Open)
            out << ',' << (r.T ? format_double(*r.T) : "");
        for (std::size_t c = 0; c < r.values.size(); ++c) {
            out << ',';
            // the first-order correction is only defined for the closed LZ model
            if (r.values[c] && (c != 1 || cfg.model == Model::Lz))
                out << format_double(*r.values[c]);
        }
        out << ',' << r.err << '\n';
    }
}

FitResult run_fit(const std::string& csv_path, const std::string& column, double tmin, double tmax,
                  std::optional<double> T)
{
    std::ifstream f(csv_path);
    if (!f)
        throw std::runtime_error("cannot open csv file '" + csv_path + "'");
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("empty csv file");
    const auto header = split(line, ',');
    auto index_of = [&](const std::string& name) -> long {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : it - header.begin();
    };
    const long it_f = index_of("t_f"), iT = index_of("T"), ic = index_of(column);
    if (it_f < 0)
        throw std::runtime_error("csv has no t_f column");
    if (ic < 0)
        throw std::runtime_error("csv has no column '" + column + "'");
    if (T && iT < 0)
        throw std::runtime_error("csv has no T column");
    std::vector<std::pair<double, double>> pts;
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (static_cast<long>(cells.size()) <= std::max(ic, it_f))
            continue;
        if (cells[ic].empty())
            continue;
        const double tf = std::strtod(cells[it_f].c_str(), nullptr);
        if (tf < tmin || tf > tmax)
            continue;
        if (T && std::abs(std::strtod(cells[iT].c_str(), nullptr) - *T) > 1e-12 * std::abs(*T))
            continue;
        pts.emplace_back(tf, std::strtod(cells[ic].c_str(), nullptr));
    }
    if (pts.size() < 3)
        throw std::runtime_error("fewer than 3 rows of '" + column + "' in the t_f window");
    return fit_power_law(pts);
}

std::string format_fit(const std::string& column, const FitResult& f)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "fit %s A=%.10g p=%.10g rms=%.6g", column.c_str(), f.amplitude,
                  f.exponent, f.residual);
    return buf;
}

std::vector<ScanPoint> run_dtau_scan(const SweepConfig& cfg, double t_f)
{
    cfg.validate();
    if (!(t_f > 0.0))
        throw ConfigError("t_f must be positive");
    const int n = cfg.dtau_points;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i)
        grid[i] = -t_f + 2.0 * t_f * i / (n - 1);
    if (n % 2 == 1)
        grid[n / 2] = 0.0;

    std::vector<ScanPoint> pts;
    auto scan = [&](std::optional<double> T, auto&& dist) {
        std::vector<double> d(n);
        parallel_for(n, cfg.threads, [&](std::size_t i) { d[i] = dist(grid[i]); });
        for (int i = 0; i < n; ++i)
            pts.push_back({T, grid[i], d[i]});
    };
    switch (cfg.model) {
    case Model::Lz: {
        LzParams p = cfg.lz;
        p.t_f = t_f;
        const StateVector exact = evolve_schrodinger(p, cfg.ode);
        scan(std::nullopt, [&](double dt) { return state_distance(exact, aia_state(p, symmetric_times(t_f, dt))); });
        break;
    }
    case Model::Tfi: {
        TfiParams p = cfg.tfi;
        p.t_f = t_f;
        const ModeRegister exact = evolve_register(p, cfg.ode, cfg.threads);
        scan(std::nullopt, [&](double dt) { return register_distance(exact, aia_register(p, symmetric_times(t_f, dt))); });
        break;
    }
    case Model::Open:
        for (double T : cfg.temperatures) {
            const OpenParams p = open_params(cfg, t_f, T);
            const CoherenceVector exact = evolve_master(p, cfg.ode);
            scan(T, [&](double dt) { return trace_distance(exact, aia_state_open(p, symmetric_times(t_f, dt))); });
        }
        break;
    }
    return pts;
}

void write_scan_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<ScanPoint>& pts)
{
    const bool open = cfg.model == Model::Open;
    out << (open ? "T,dtau,d\n" : "dtau,d\n");
    for (const auto& p : pts) {
        if (open)
            out << format_double(*p.T) << ',';
        out << format_double(p.dtau) << ',' << format_double(p.distance) << '\n';
    }
}

} // namespace aia
