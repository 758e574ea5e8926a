#pragma once

#include "aia/lindblad_open.hpp"
#include "aia/lz_closed.hpp"
#include "aia/numkit.hpp"
#include "aia/tfi.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aia {

enum class Model { Lz, Tfi, Open };

const char* model_name(Model m);
Model parse_model(const std::string& s);

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

struct SweepConfig {
    Model model = Model::Lz;
    LzParams lz;   // x, z_i, z_f (also used by the open model)
    TfiParams tfi; // L, h_i, h_f
    double g = 0.01;
    std::vector<double> temperatures{0.05, 0.1, 0.5, 1.0};
    double tf_min = 0.1;
    double tf_max = 1e4;
    int tf_points = 0; // 0: 60 points per 5 decades
    bool tf_log = true;
    std::vector<std::string> scenarios{"1", "2", "3", "4", "opt"};
    OdeOptions ode;
    unsigned threads = 1;
    std::string output;
    int dtau_points = 2001;

    void validate() const;
};

// `key = value` lines, `#` comments. An explicit `model` key, when present,
// must agree with `expected` if that is given.
SweepConfig parse_config(std::istream& in, std::optional<Model> expected = std::nullopt);
SweepConfig load_config(const std::string& path, std::optional<Model> expected = std::nullopt);

std::vector<double> tf_grid(const SweepConfig& cfg);

// Value columns following t_f (and T for the open model).
inline constexpr std::array<const char*, 12> kValueColumns = {
    "d_adi", "d_adi1", "d_aia1", "d_aia2", "d_aia3", "d_aia4", "d_aia_opt",
    "dtau1", "dtau2", "dtau3", "dtau4", "dtau_opt"};

struct SweepRow {
    double t_f = 0.0;
    std::optional<double> T;
    std::array<std::optional<double>, 12> values;
    std::string err;
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);
void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

// Rows of `column` with t_f in [tmin, tmax] (and T matching, if given).
FitResult run_fit(const std::string& csv_path, const std::string& column, double tmin, double tmax,
                  std::optional<double> T = std::nullopt);
std::string format_fit(const std::string& column, const FitResult& f);

struct ScanPoint {
    std::optional<double> T;
    double dtau;
    double distance;
};

std::vector<ScanPoint> run_dtau_scan(const SweepConfig& cfg, double t_f);
void write_scan_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<ScanPoint>& pts);

std::string format_double(double v); // %.17g

} // namespace aia
