#include "aia/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

int write_output(const std::string& path, const std::function<void(std::ostream&)>& emit)
{
    if (path.empty() || path == "-") {
        emit(std::cout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "aia: cannot write '" << path << "'\n";
        return kConfigError;
    }
    emit(f);
    return 0;
}

int cmd_sweep(aia::Model model, const std::string& config, std::string out, unsigned threads)
{
    aia::SweepConfig cfg = aia::load_config(config, model);
    if (threads > 0)
        cfg.threads = threads;
    if (out.empty())
        out = cfg.output;
    const auto rows = aia::run_sweep(cfg);
    std::size_t failed = 0;
    for (const auto& r : rows) {
        if (!r.err.empty()) {
            ++failed;
            std::cerr << "aia: t_f=" << aia::format_double(r.t_f) << ": " << r.err << '\n';
        }
    }
    if (const int rc = write_output(out, [&](std::ostream& os) { aia::write_csv(os, cfg, rows); }))
        return rc;
    return (!rows.empty() && failed == rows.size()) ? kNumericalFailure : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Adiabatic-impulse approximation sweeps for Landau-Zener, Ising and open-qubit models"};
    app.require_subcommand(1);

    std::string config, out, csv, column;
    unsigned threads = 0;
    double tmin = 0, tmax = 0, tf = 0, temp = 0;

    struct ModelCmd {
        const char* name;
        aia::Model model;
        const char* help;
    };
    const ModelCmd models[] = {
        {"lz", aia::Model::Lz, "Landau-Zener sweep"},
        {"tfi", aia::Model::Tfi, "transverse-field Ising sweep"},
        {"open", aia::Model::Open, "dissipative qubit sweep"},
    };
    std::vector<std::pair<CLI::App*, aia::Model>> model_cmds;
    for (const auto& m : models) {
        CLI::App* sub = app.add_subcommand(m.name, m.help);
        sub->add_option("--config", config, "config file")->required();
        sub->add_option("--out", out, "output CSV (default: config 'output' or stdout)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        model_cmds.emplace_back(sub, m.model);
    }

    CLI::App* fit = app.add_subcommand("fit", "power-law fit of a CSV column");
    fit->add_option("--csv", csv, "sweep CSV")->required();
    fit->add_option("--column", column, "column name")->required();
    fit->add_option("--tmin", tmin, "lower t_f bound")->required();
    fit->add_option("--tmax", tmax, "upper t_f bound")->required();
    CLI::Option* t_opt = fit->add_option("--T", temp, "restrict to one temperature (open model)");

    CLI::App* scan = app.add_subcommand("dtau-scan", "distance on a dense impulse-interval grid");
    scan->add_option("--config", config, "config file")->required();
    scan->add_option("--tf", tf, "final time")->required();
    scan->add_option("--out", out, "output CSV (default stdout)");
    scan->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        for (const auto& [sub, model] : model_cmds)
            if (sub->parsed())
                return cmd_sweep(model, config, out, threads);

        if (fit->parsed()) {
            std::optional<double> T;
            if (t_opt->count() > 0)
                T = temp;
            const aia::FitResult r = aia::run_fit(csv, column, tmin, tmax, T);
            std::cout << aia::format_fit(column, r) << '\n';
            return 0;
        }

        if (scan->parsed()) {
            aia::SweepConfig cfg = aia::load_config(config);
            if (threads > 0)
                cfg.threads = threads;
            const auto pts = aia::run_dtau_scan(cfg, tf);
            return write_output(out, [&](std::ostream& os) { aia::write_scan_csv(os, cfg, pts); });
        }
    } catch (const aia::ConfigError& e) {
        std::cerr << "aia: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const aia::IntegrationError& e) {
        std::cerr << "aia: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "aia: " << e.what() << '\n';
        return kConfigError;
    }
    return 0;
}
