#include "tdmie/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tdmie/svg_plot.hpp"

namespace fs = std::filesystem;

namespace tdmie {

IncidentConfig SimulationConfig::incident() const {
    IncidentConfig inc;
    inc.f0 = f0;
    inc.bandwidth = bandwidth;
    inc.c = c;
    inc.eta = eta();
    inc.amplitude = amplitude;
    return inc;
}

BandSpec SimulationConfig::band() const {
    BandSpec b;
    b.f_lo = f0 - bandwidth;
    b.f_hi = f0 + bandwidth;
    b.count = 21;
    return b;
}

TemporalBasisConfig SimulationConfig::basis() const {
    return TemporalBasisConfig{step(), np, nt};
}

const char* family_name(VshFamily family) {
    return family == VshFamily::Psi ? "psi" : "phi";
}

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

VshFamily parse_family(const std::string& s) {
    if (s == "psi") return VshFamily::Psi;
    if (s == "phi") return VshFamily::Phi;
    throw UsageError("unknown mode family '" + s + "' (expected psi|phi)");
}

ModeIndex parse_mode(const std::string& s) {
    std::stringstream ss(s);
    std::string n_str, m_str, fam;
    if (!std::getline(ss, n_str, ',') || !std::getline(ss, m_str, ',') || !std::getline(ss, fam))
        throw UsageError("mode must be n,m,psi|phi: '" + s + "'");
    try {
        return ModeIndex{std::stoi(n_str), std::stoi(m_str), parse_family(fam)};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("mode must be n,m,psi|phi: '" + s + "'");
    }
}

KernelKind parse_kernel(const std::string& s) {
    if (s == "1") return KernelKind::K1;
    if (s == "2") return KernelKind::K2;
    if (s == "3") return KernelKind::K3;
    if (s == "4") return KernelKind::K4;
    throw UsageError("kernel must be one of 1..4: '" + s + "'");
}

std::string pair_stem(const ModeIndex& mode, KernelKind kind) {
    std::ostringstream os;
    os << family_name(mode.family) << "_n" << mode.n << "_m" << mode.m << "_k"
       << static_cast<int>(kind);
    return os.str();
}

void write_manifest(const SimulationConfig& cfg, const RunResult& result) {
    const std::string serialized = serialize_config(cfg);
    std::ofstream out(fs::path(cfg.outdir) / "manifest.txt");
    out << "config_hash=" << fnv1a_bytes(serialized) << "\n";
    std::istringstream lines(serialized);
    std::string line;
    while (std::getline(lines, line)) out << "config " << line << "\n";
    for (const std::string& f : result.files)
        out << "file " << f << " fnv1a=" << fnv1a_file((fs::path(cfg.outdir) / f).string()) << "\n";
}

void check_finite(const CoefficientSeries& series, const ModeIndex& mode, KernelKind kind) {
    for (const CoefficientVec& v : series.values)
        for (const complexd& cval : v)
            if (!std::isfinite(cval.real()) || !std::isfinite(cval.imag()))
                throw NumericalError(std::string("non-finite coefficient in ") +
                                     pair_stem(mode, kind));
}

} // namespace

SimulationConfig parse_config(const std::string& text) {
    SimulationConfig cfg;
    cfg.modes.clear();
    cfg.kernels.clear();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        try {
            if (key == "a") cfg.a = std::stod(val);
            else if (key == "f0") cfg.f0 = std::stod(val);
            else if (key == "bandwidth") cfg.bandwidth = std::stod(val);
            else if (key == "dt") cfg.dt = std::stod(val);
            else if (key == "nt") cfg.nt = std::stoi(val);
            else if (key == "np") cfg.np = std::stoi(val);
            else if (key == "c") cfg.c = std::stod(val);
            else if (key == "amplitude") cfg.amplitude = std::stod(val);
            else if (key == "outdir") cfg.outdir = val;
            else if (key == "mode") cfg.modes.push_back(parse_mode(val));
            else if (key == "kernels") {
                std::stringstream ks(val);
                std::string k;
                while (std::getline(ks, k, ',')) cfg.kernels.push_back(parse_kernel(k));
            } else
                throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("config line " + std::to_string(lineno) + ": bad value '" + val + "'");
        }
    }
    if (cfg.modes.empty()) cfg.modes = SimulationConfig{}.modes;
    if (cfg.kernels.empty()) cfg.kernels = SimulationConfig{}.kernels;
    return cfg;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const SimulationConfig& cfg) {
    std::ostringstream out;
    out << "a=" << g17(cfg.a) << "\n";
    out << "f0=" << g17(cfg.f0) << "\n";
    out << "bandwidth=" << g17(cfg.bandwidth) << "\n";
    out << "dt=" << g17(cfg.step()) << "\n";
    out << "nt=" << cfg.nt << "\n";
    out << "np=" << cfg.np << "\n";
    out << "c=" << g17(cfg.c) << "\n";
    out << "amplitude=" << g17(cfg.amplitude) << "\n";
    out << "outdir=" << cfg.outdir << "\n";
    for (const ModeIndex& m : cfg.modes)
        out << "mode=" << m.n << "," << m.m << "," << family_name(m.family) << "\n";
    out << "kernels=";
    for (std::size_t i = 0; i < cfg.kernels.size(); ++i) {
        if (i) out << ",";
        out << static_cast<int>(cfg.kernels[i]);
    }
    out << "\n";
    return out.str();
}

void validate_config(const SimulationConfig& cfg) {
    if (cfg.a <= 0.0 || cfg.f0 <= 0.0 || cfg.bandwidth <= 0.0 || cfg.bandwidth >= cfg.f0)
        throw UsageError("need a > 0 and 0 < bandwidth < f0");
    if (cfg.step() <= 0.0 || cfg.nt < 1 || cfg.np < 0)
        throw UsageError("need dt > 0, nt >= 1, np >= 0");
    const int nm = cfg.n_limit();
    for (const ModeIndex& m : cfg.modes) {
        if (m.n < 1) throw UsageError("mode degree n must be >= 1 (n=0 carries no tangential current)");
        if (std::abs(m.m) > m.n) throw UsageError("mode order |m| must not exceed n");
        if (m.n > nm)
            throw UsageError("mode degree n=" + std::to_string(m.n) +
                             " exceeds the band limit N_m=" + std::to_string(nm));
    }
    if (cfg.kernels.empty()) throw UsageError("at least one kernel required");
}

CoefficientSeries solve_pair(const SimulationConfig& cfg, const ModeIndex& mode,
                             KernelKind kind) {
    const IncidentConfig inc = cfg.incident();
    const TemporalBasisConfig basis = cfg.basis();
    const PiecewiseKernel kernel = build_kernel(kind, mode.n, cfg.a, cfg.c, cfg.mu());
    const SurfaceRule rule = SurfaceRule::for_degree(mode.n);
    const IncidentProjector proj(inc, mode, equation_for_kind(kind), cfg.a, rule);
    const auto rhs = assemble_rhs_all([&proj](double t) { return proj(t); }, basis);

    CoefficientSeries series;
    if (kind == KernelKind::K1) {
        const MotBlocks blocks = assemble_blocks(kernel, basis, BlockVariant::differenced, 0.0);
        series = march_with_charge(blocks, rhs);
    } else {
        const MotBlocks blocks = assemble_blocks(kernel, basis, BlockVariant::plain,
                                                 mfie_identity_weight(kind, cfg.a));
        series = march(blocks, rhs);
    }
    series.mode = mode;
    series.kind = kind;
    check_finite(series, mode, kind);
    return series;
}

void write_coefficients_csv(const CoefficientSeries& series, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "step,t_start,order,re,im\n";
    for (std::size_t q = 0; q < series.values.size(); ++q)
        for (int j = 0; j <= series.np; ++j) {
            const complexd v = series.values[q][j];
            out << q << ',' << g17(q * series.dt) << ',' << j << ',' << g17(v.real()) << ','
                << g17(v.imag()) << "\n";
        }
}

CoefficientSeries read_coefficients_csv(const std::string& path) {
    const CsvTable table = read_csv(path);
    if (table.columns.size() != 5)
        throw CsvParseError(path + ": expected 5 columns step,t_start,order,re,im");
    CoefficientSeries series;
    int np = 0, nt = 0;
    for (const auto& row : table.rows) {
        np = std::max(np, static_cast<int>(row[2]));
        nt = std::max(nt, static_cast<int>(row[0]) + 1);
    }
    series.np = np;
    series.values.assign(nt, CoefficientVec(np + 1, complexd{0.0, 0.0}));
    for (const auto& row : table.rows) {
        const int q = static_cast<int>(row[0]);
        if (q == 1 && series.dt == 0.0) series.dt = row[1];
        series.values[q][static_cast<int>(row[2])] = complexd{row[3], row[4]};
    }
    return series;
}

RunResult run_simulate(const SimulationConfig& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.outdir);
    RunResult result;
    for (const ModeIndex& mode : cfg.modes)
        for (KernelKind kind : cfg.kernels) {
            if (family_for_kind(kind) != mode.family) continue;
            const CoefficientSeries series = solve_pair(cfg, mode, kind);
            const std::string stem = pair_stem(mode, kind);
            write_coefficients_csv(series, (fs::path(cfg.outdir) / ("coeff_" + stem + ".csv")).string());
            result.files.push_back("coeff_" + stem + ".csv");

            // Oversampled reconstruction, 4 samples per step.
            std::ofstream trace(fs::path(cfg.outdir) / ("trace_" + stem + ".csv"));
            trace << "t,re,im\n";
            const int oversample = 4;
            for (std::size_t q = 0; q < series.values.size(); ++q)
                for (int s = 0; s < oversample; ++s) {
                    const double t = (q + s / static_cast<double>(oversample)) * series.dt;
                    const complexd v = series.evaluate(t);
                    trace << g17(t) << ',' << g17(v.real()) << ',' << g17(v.imag()) << "\n";
                }
            result.files.push_back("trace_" + stem + ".csv");
            std::cout << "simulate " << stem << ": peak=" << series.peak_abs()
                      << " late/peak=" << series_decay_ratio(series) << "\n";
        }
    write_manifest(cfg, result);
    return result;
}

RunResult run_stability(const SimulationConfig& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.outdir);
    RunResult result;
    std::vector<int> degrees;
    for (const ModeIndex& m : cfg.modes)
        if (std::find(degrees.begin(), degrees.end(), m.n) == degrees.end())
            degrees.push_back(m.n);
    const TemporalBasisConfig basis = cfg.basis();
    for (KernelKind kind : cfg.kernels)
        for (int n : degrees) {
            const PiecewiseKernel kernel = build_kernel(kind, n, cfg.a, cfg.c, cfg.mu());
            const MotBlocks blocks =
                kind == KernelKind::K1
                    ? assemble_blocks(kernel, basis, BlockVariant::differenced, 0.0)
                    : assemble_blocks(kernel, basis, BlockVariant::plain,
                                      mfie_identity_weight(kind, cfg.a));
            const CompanionSystem sys = build_companion(blocks);
            const SpectrumReport report = eigen_spectrum(sys);
            std::ostringstream name;
            name << "eig_k" << static_cast<int>(kind) << "_n" << n << "_np" << cfg.np << ".csv";
            write_spectrum_csv(report, (fs::path(cfg.outdir) / name.str()).string());
            result.files.push_back(name.str());
            std::cout << "stability k" << static_cast<int>(kind) << " n=" << n
                      << " dim=" << sys.dim << " rho=" << g17(report.rho)
                      << " on_circle=" << report.on_circle_count << "\n";
        }
    write_manifest(cfg, result);
    return result;
}

RunResult run_compare(const SimulationConfig& cfg, bool reuse_series) {
    validate_config(cfg);
    fs::create_directories(cfg.outdir);
    RunResult result;
    const BandSpec band = cfg.band();
    const IncidentConfig inc = cfg.incident();
    std::vector<std::pair<int, double>> degree_peaks;

    for (const ModeIndex& mode : cfg.modes)
        for (KernelKind kind : cfg.kernels) {
            if (family_for_kind(kind) != mode.family) continue;
            const std::string stem = pair_stem(mode, kind);
            CoefficientSeries series;
            if (reuse_series) {
                const fs::path src = fs::path(cfg.outdir) / ("coeff_" + stem + ".csv");
                if (!fs::exists(src))
                    throw UsageError("compare: missing series file " + src.string() +
                                     " (run simulate first or drop --reuse)");
                series = read_coefficients_csv(src.string());
                series.mode = mode;
                series.kind = kind;
            } else {
                series = solve_pair(cfg, mode, kind);
            }
            const double decay = series_decay_ratio(series);
            if (decay > 1e-8)
                std::cout << "warning: " << stem << " late-time content not decayed (ratio="
                          << decay << ")\n";
            const std::vector<complexd> td = td_to_fd(series, band);
            const FdModeSolution fd = fd_mode_solution(mode, kind, band, inc, cfg.a, cfg.mu());
            const double err = band_compare(td, fd.values);

            std::ofstream out(fs::path(cfg.outdir) / ("compare_" + stem + ".csv"));
            out << "f_hz,td_re,td_im,fd_re,fd_im,abs_err\n";
            const std::vector<double> freqs = band.frequencies();
            for (std::size_t i = 0; i < freqs.size(); ++i)
                out << g17(freqs[i]) << ',' << g17(td[i].real()) << ',' << g17(td[i].imag()) << ','
                    << g17(fd.values[i].real()) << ',' << g17(fd.values[i].imag()) << ','
                    << g17(std::abs(td[i] - fd.values[i])) << "\n";
            result.files.push_back("compare_" + stem + ".csv");
            std::cout << "compare " << stem << ": band_rel_l2=" << g17(err) << "\n";

            double fd_peak = 0.0;
            for (const complexd& v : fd.values) fd_peak = std::max(fd_peak, std::abs(v));
            degree_peaks.emplace_back(mode.n, fd_peak);

            // Temporal-order sweep 1..np for the convergence table.
            if (cfg.np >= 1 && !reuse_series) {
                std::ofstream sweep(fs::path(cfg.outdir) / ("sweep_" + stem + ".csv"));
                sweep << "np,band_rel_l2\n";
                for (int p = 1; p <= cfg.np; ++p) {
                    SimulationConfig sub = cfg;
                    sub.np = p;
                    const CoefficientSeries s = solve_pair(sub, mode, kind);
                    sweep << p << ',' << g17(band_compare(td_to_fd(s, band), fd.values)) << "\n";
                }
                result.files.push_back("sweep_" + stem + ".csv");
            }
        }

    // Degree hierarchy note (largest vs smallest requested degree).
    if (degree_peaks.size() >= 2) {
        auto lo = *std::min_element(degree_peaks.begin(), degree_peaks.end());
        auto hi = *std::max_element(degree_peaks.begin(), degree_peaks.end());
        if (lo.first != hi.first && lo.second > 0.0)
            std::cout << "peak |J| ratio degree " << hi.first << " / degree " << lo.first << " = "
                      << g17(hi.second / lo.second) << " (n=" << lo.first << " peak "
                      << g17(lo.second) << ", n=" << hi.first << " peak " << g17(hi.second)
                      << ")\n";
    }
    write_manifest(cfg, result);
    return result;
}

void emit_requested_plot(const std::string& csv, const std::string& kind,
                         const std::string& out_svg) {
    PlotKind pk;
    if (kind == "timeseries") pk = PlotKind::timeseries;
    else if (kind == "spectrum") pk = PlotKind::spectrum;
    else if (kind == "eigenmap") pk = PlotKind::eigenmap;
    else throw UsageError("plot kind must be timeseries|spectrum|eigenmap");
    emit_plot(csv, pk, out_svg);
}

std::uint64_t fnv1a_bytes(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("fnv1a_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_bytes(ss.str());
}

} // namespace tdmie
