#ifndef TDMIE_PIPELINE_HPP
#define TDMIE_PIPELINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdmie/fdmie.hpp"
#include "tdmie/mot.hpp"
#include "tdmie/stability.hpp"

// Front-end orchestration: configuration, the simulate / stability / compare
// pipelines, CSV emission, and the run manifest.

namespace tdmie {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulationConfig {
    double a = 1.0;
    double f0 = 0.4e9;
    double bandwidth = 0.3e9;
    std::optional<double> dt;  // default 1 / (20 (f0 + B))
    int nt = 100000;
    int np = 1;
    double c = 299792458.0;
    double amplitude = 1.0;
    std::string outdir = "out";
    std::vector<ModeIndex> modes = {{3, 1, VshFamily::Psi}, {3, 1, VshFamily::Phi}};
    std::vector<KernelKind> kernels = {KernelKind::K1, KernelKind::K2, KernelKind::K3,
                                       KernelKind::K4};

    double mu() const { return 4.0e-7 * 3.14159265358979323846; }
    double eta() const { return mu() * c; }
    double step() const { return dt ? *dt : 1.0 / (20.0 * (f0 + bandwidth)); }
    double k_max() const { return 2.0 * 3.14159265358979323846 * (f0 + bandwidth) / c; }
    int n_limit() const { return static_cast<int>(std::ceil(2.0 * k_max() * a)); }
    IncidentConfig incident() const;
    BandSpec band() const; // [f0 - B, f0 + B], 21 samples
    TemporalBasisConfig basis() const;
};

// Flat key=value config text.
SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::string& path);
std::string serialize_config(const SimulationConfig& cfg);

// Rejects invalid modes (n < 1, |m| > n) and degrees beyond the band limit
// N_m = ceil(2 k_max a).
void validate_config(const SimulationConfig& cfg);

const char* family_name(VshFamily family);

// Solve one (mode, kernel) pair end to end.
CoefficientSeries solve_pair(const SimulationConfig& cfg, const ModeIndex& mode,
                             KernelKind kind);

struct RunResult {
    std::vector<std::string> files; // outdir-relative
};

RunResult run_simulate(const SimulationConfig& cfg);
RunResult run_stability(const SimulationConfig& cfg);
RunResult run_compare(const SimulationConfig& cfg, bool reuse_series = false);

void emit_requested_plot(const std::string& csv, const std::string& kind,
                         const std::string& out_svg);

// Coefficient CSV round trip (step,t_start,order,re,im).
void write_coefficients_csv(const CoefficientSeries& series, const std::string& path);
CoefficientSeries read_coefficients_csv(const std::string& path);

std::uint64_t fnv1a_file(const std::string& path);
std::uint64_t fnv1a_bytes(const std::string& bytes);

} // namespace tdmie

#endif
