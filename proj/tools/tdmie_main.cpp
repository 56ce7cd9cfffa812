#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "tdmie/pipeline.hpp"

// Subcommands: simulate, stability, compare, plot.
// Exit codes: 0 success, 1 usage error, 2 numerical failure.

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> modes;
    std::vector<std::string> kernels;
    double a = -1.0, f0 = -1.0, bandwidth = -1.0, dt = -1.0, amplitude = -1.0;
    int nt = -1, np = -1;
    std::string outdir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key=value config file");
    cmd->add_option("--a", o.a, "sphere radius (m)");
    cmd->add_option("--f0", o.f0, "center frequency (Hz)");
    cmd->add_option("--bandwidth", o.bandwidth, "bandwidth B (Hz)");
    cmd->add_option("--dt", o.dt, "time step (s)");
    cmd->add_option("--nt", o.nt, "number of steps");
    cmd->add_option("--np", o.np, "highest temporal Legendre order");
    cmd->add_option("--amplitude", o.amplitude, "incident field scale");
    cmd->add_option("--mode", o.modes, "mode n,m,psi|phi (repeatable)");
    cmd->add_option("--kernel", o.kernels, "kernel 1..4 (repeatable)");
    cmd->add_option("--outdir", o.outdir, "output directory");
}

tdmie::SimulationConfig build_config(const CommonOpts& o) {
    tdmie::SimulationConfig cfg;
    if (!o.config_path.empty()) cfg = tdmie::load_config(o.config_path);
    if (o.a > 0) cfg.a = o.a;
    if (o.f0 > 0) cfg.f0 = o.f0;
    if (o.bandwidth > 0) cfg.bandwidth = o.bandwidth;
    if (o.dt > 0) cfg.dt = o.dt;
    if (o.nt > 0) cfg.nt = o.nt;
    if (o.np >= 0) cfg.np = o.np;
    if (o.amplitude >= 0) cfg.amplitude = o.amplitude;
    if (!o.outdir.empty()) cfg.outdir = o.outdir;
    if (!o.modes.empty()) {
        cfg.modes.clear();
        std::string parsed = "mode=";
        for (const std::string& m : o.modes) {
            const tdmie::SimulationConfig one = tdmie::parse_config("mode=" + m);
            cfg.modes.push_back(one.modes.front());
        }
        (void)parsed;
    }
    if (!o.kernels.empty()) {
        std::string joined;
        for (const std::string& k : o.kernels) {
            if (!joined.empty()) joined += ",";
            joined += k;
        }
        cfg.kernels = tdmie::parse_config("kernels=" + joined).kernels;
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"time-dependent multipole solver for transient scattering from a PEC sphere"};
    app.require_subcommand(1);

    CommonOpts sim_o, stab_o, cmp_o;
    CLI::App* sim = app.add_subcommand("simulate", "march the requested (mode, kernel) pairs");
    add_common(sim, sim_o);
    CLI::App* stab = app.add_subcommand("stability", "companion-matrix eigen-spectra");
    add_common(stab, stab_o);
    CLI::App* cmp = app.add_subcommand("compare", "time-domain vs frequency-domain band error");
    add_common(cmp, cmp_o);
    bool reuse = false;
    cmp->add_flag("--reuse", reuse, "load coefficient CSVs instead of marching inline");

    std::string plot_csv, plot_kind = "timeseries", plot_out;
    CLI::App* plot = app.add_subcommand("plot", "render a CSV as a deterministic SVG");
    plot->add_option("--csv", plot_csv, "input CSV")->required();
    plot->add_option("--kind", plot_kind, "timeseries|spectrum|eigenmap");
    plot->add_option("--out", plot_out, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) tdmie::run_simulate(build_config(sim_o));
        else if (stab->parsed()) tdmie::run_stability(build_config(stab_o));
        else if (cmp->parsed()) tdmie::run_compare(build_config(cmp_o), reuse);
        else if (plot->parsed()) tdmie::emit_requested_plot(plot_csv, plot_kind, plot_out);
        return 0;
    } catch (const tdmie::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const tdmie::CsvParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
