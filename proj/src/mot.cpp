#include "tdmie/mot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tdmie {

double temporal_basis(int j, double tau) {
    if (tau < 0.0 || tau >= 1.0) throw DomainError("temporal_basis: tau outside [0,1)");
    return legendre(j, 2.0 * tau - 1.0).p;
}

Mat MotBlocks::tail_block() const {
    Mat t(np + 1, np + 1);
    t(0, 0) = tail_constant * dt * dt;
    return t;
}

namespace {

// Cross-correlation X_ij(v) = int P~_i(s) P~_j(s - v) ds over the overlap of
// the two unit steps; piecewise polynomial of degree i+j+1 with a kink at 0.
double basis_cross(int i, int j, double v, double dt, const QuadratureRule& rule) {
    const double lo = std::max(0.0, v);
    const double hi = std::min(dt, dt + v);
    if (hi <= lo) return 0.0;
    return gauss_integrate(rule, lo, hi, [&](double s) {
        return temporal_basis(i, s / dt) * temporal_basis(j, (s - v) / dt);
    });
}

} // namespace

MotBlocks assemble_blocks(const PiecewiseKernel& kernel, const TemporalBasisConfig& basis,
                          BlockVariant variant, double identity_weight) {
    if (basis.dt <= 0.0) throw DomainError("assemble_blocks: dt must be positive");
    const double dt = basis.dt;
    const int np = basis.np;
    const double beta = kernel.support_end;
    const int nk = static_cast<int>(std::ceil(beta / dt)) + 1;

    MotBlocks out;
    out.nk = nk;
    out.dt = dt;
    out.np = np;
    out.variant = BlockVariant::plain;
    out.tail_constant = kernel.tail;
    out.identity_weight = identity_weight;
    out.kind = kernel.kind;
    out.n = kernel.n;

    const QuadratureRule& xrule = cached_gauss(np + 1);
    const QuadratureRule& prule = cached_gauss(kernel.n + np + 2);
    const bool has_tail = kernel.tail != 0.0;

    out.blocks.reserve(nk + 1);
    for (int k = 0; k <= nk; ++k) {
        Mat z(np + 1, np + 1);
        const double center = k * dt;

        // Impulse contributions: w * X_ij(tau - k dt).
        for (const DeltaTerm& d : kernel.deltas) {
            const double v = d.time - center;
            if (std::abs(v) >= dt) continue;
            for (int i = 0; i <= np; ++i)
                for (int j = 0; j <= np; ++j)
                    z(i, j) += d.weight * basis_cross(i, j, v, dt, xrule);
        }

        // Smooth (and tail) contribution over the lag window
        // [k dt - dt, k dt + dt], split at 0, k dt, and the support end.
        const double wlo = std::max(center - dt, 0.0);
        const double whi = has_tail ? center + dt : std::min(center + dt, beta);
        if (whi > wlo) {
            std::vector<double> cuts{wlo, whi};
            if (center > wlo && center < whi) cuts.push_back(center);
            if (beta > wlo && beta < whi) cuts.push_back(beta);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
                const double lo = cuts[p], hi = cuts[p + 1];
                if (hi - lo < 1e-300) continue;
                for (int i = 0; i <= np; ++i)
                    for (int j = 0; j <= np; ++j) {
                        const double val = gauss_integrate(prule, lo, hi, [&](double th) {
                            return kernel.value_at(th) * basis_cross(i, j, th - center, dt, xrule);
                        });
                        z(i, j) += val;
                    }
            }
        }

        if (k == 0 && identity_weight != 0.0)
            for (int i = 0; i <= np; ++i)
                z(i, i) += identity_weight * dt / (2.0 * i + 1.0);

        out.blocks.push_back(std::move(z));
    }

    if (variant == BlockVariant::plain) return out;

    // Z^I_k = Z_k - Z_{k-1}; one extra block past nk (exactly zero once the
    // plain blocks have reached the tail constant).
    MotBlocks diff = out;
    diff.variant = BlockVariant::differenced;
    diff.blocks.clear();
    diff.blocks.reserve(nk + 2);
    const Mat tail_blk = out.tail_block();
    for (int k = 0; k <= nk + 1; ++k) {
        const Mat& zk = (k <= nk) ? out.blocks[k] : tail_blk;
        Mat zi = zk;
        if (k > 0) zi -= (k - 1 <= nk) ? out.blocks[k - 1] : tail_blk;
        diff.blocks.push_back(std::move(zi));
    }
    return diff;
}

double CoefficientSeries::peak_abs() const {
    double peak = 0.0;
    for (const CoefficientVec& v : values)
        for (const complexd& c : v) peak = std::max(peak, std::abs(c));
    return peak;
}

double CoefficientSeries::late_time_ratio(int window) const {
    const double peak = peak_abs();
    if (peak == 0.0) return 0.0;
    double late = 0.0;
    const int start = std::max<int>(0, static_cast<int>(values.size()) - window);
    for (std::size_t q = start; q < values.size(); ++q)
        for (const complexd& c : values[q]) late = std::max(late, std::abs(c));
    return late / peak;
}

complexd CoefficientSeries::evaluate(double t) const {
    if (t < 0.0) return {0.0, 0.0};
    const int q = static_cast<int>(std::floor(t / dt));
    if (q < 0 || q >= static_cast<int>(values.size())) return {0.0, 0.0};
    const double tau = t / dt - q;
    complexd acc{0.0, 0.0};
    for (int j = 0; j <= np; ++j) acc += values[q][j] * temporal_basis(j, tau);
    return acc;
}

namespace {

void mat_mac(CoefficientVec& acc, const Mat& m, const CoefficientVec& x) {
    const int n = m.rows();
    for (int i = 0; i < n; ++i) {
        complexd s{0.0, 0.0};
        for (int j = 0; j < n; ++j) s += m(i, j) * x[j];
        acc[i] += s;
    }
}

LuFactor factor_leading_block(const MotBlocks& blocks) {
    try {
        return LuFactor(blocks.blocks.at(0));
    } catch (const NumericalError&) {
        throw NumericalError(std::string("march: singular Z_0 for kernel ") +
                             kernel_kind_name(blocks.kind) + " at n=" + std::to_string(blocks.n));
    }
}

} // namespace

CoefficientSeries march(const MotBlocks& blocks, const std::vector<CoefficientVec>& rhs) {
    if (blocks.variant != BlockVariant::plain)
        throw DomainError("march: expects plain blocks");
    const int np = blocks.np;
    const int nt = static_cast<int>(rhs.size());
    const int nk = static_cast<int>(blocks.blocks.size()) - 1;
    const LuFactor z0 = factor_leading_block(blocks);

    CoefficientSeries series;
    series.kind = blocks.kind;
    series.dt = blocks.dt;
    series.np = np;
    series.values.assign(nt, CoefficientVec(np + 1, complexd{0.0, 0.0}));
    CoefficientVec h(np + 1);
    for (int q = 0; q < nt; ++q) {
        h = rhs[q];
        const int kmax = std::min(q, nk);
        for (int k = 1; k <= kmax; ++k) {
            CoefficientVec tmp(np + 1, complexd{0.0, 0.0});
            mat_mac(tmp, blocks.blocks[k], series.values[q - k]);
            for (int i = 0; i <= np; ++i) h[i] -= tmp[i];
        }
        series.values[q] = z0.solve(h);
    }
    return series;
}

CoefficientSeries march_with_charge(const MotBlocks& blocks, const std::vector<CoefficientVec>& rhs) {
    if (blocks.variant != BlockVariant::differenced)
        throw DomainError("march_with_charge: expects differenced blocks");
    const int np = blocks.np;
    const int nt = static_cast<int>(rhs.size());
    const int nki = static_cast<int>(blocks.blocks.size()) - 1;
    const LuFactor z0 = factor_leading_block(blocks);

    CoefficientSeries series;
    series.kind = blocks.kind;
    series.dt = blocks.dt;
    series.np = np;
    series.values.assign(nt, CoefficientVec(np + 1, complexd{0.0, 0.0}));
    CoefficientVec charge(np + 1, complexd{0.0, 0.0});
    CoefficientVec h(np + 1), tmp(np + 1);
    for (int q = 0; q < nt; ++q) {
        h = rhs[q];
        for (int i = 0; i <= np; ++i) h[i] -= charge[i];
        const int kmax = std::min(q, nki);
        for (int k = 1; k <= kmax; ++k) {
            std::fill(tmp.begin(), tmp.end(), complexd{0.0, 0.0});
            mat_mac(tmp, blocks.blocks[k], series.values[q - k]);
            for (int i = 0; i <= np; ++i) h[i] -= tmp[i];
        }
        series.values[q] = z0.solve(h);
        // C_q = C_{q-1} + sum_{k=max(0,q-Nk)}^{q} Z^I_{q-k} I_k
        for (int lag = 0; lag <= std::min(q, nki); ++lag)
            mat_mac(charge, blocks.blocks[lag], series.values[q - lag]);
    }
    return series;
}

CoefficientVec assemble_rhs(const std::function<complexd(double)>& f,
                            const TemporalBasisConfig& basis, int q) {
    const int np = basis.np;
    const QuadratureRule& rule = cached_gauss(np + 6);
    CoefficientVec v(np + 1, complexd{0.0, 0.0});
    const double t0 = q * basis.dt;
    const double half = 0.5 * basis.dt;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        const double tau = 0.5 * (1.0 + rule.nodes[g]);
        const complexd fv = f(t0 + tau * basis.dt) * (rule.weights[g] * half);
        for (int i = 0; i <= np; ++i) v[i] += fv * temporal_basis(i, tau);
    }
    return v;
}

std::vector<CoefficientVec> assemble_rhs_all(const std::function<complexd(double)>& f,
                                             const TemporalBasisConfig& basis) {
    std::vector<CoefficientVec> all;
    all.reserve(basis.nt);
    for (int q = 0; q < basis.nt; ++q) all.push_back(assemble_rhs(f, basis, q));
    return all;
}

std::vector<complexd> volterra_oracle(const PiecewiseKernel& kernel, double identity_weight,
                                      const std::function<complexd(double)>& f,
                                      double dt_fine, int nt_fine) {
    const double h = dt_fine;
    const double beta = kernel.support_end;
    if (beta > 0.0 && beta < 4.0 * h)
        throw DomainError("volterra_oracle: dt_fine too coarse for the kernel support");
    std::vector<complexd> J(nt_fine, complexd{0.0, 0.0});
    if (nt_fine == 0) return J;

    double w0 = 0.0, wbeta = 0.0;
    for (const DeltaTerm& d : kernel.deltas) {
        if (d.time == 0.0) w0 += d.weight;
        else wbeta += d.weight;
    }
    const bool has_support = beta > 0.0;
    const double ks_zero = has_support ? kernel.smooth(0.0) : 0.0;
    const double ks_beta = has_support ? kernel.smooth(beta) : 0.0;

    // Kernel smooth values on the lag grid (inside the support only).
    const int lag_max = has_support ? static_cast<int>(std::floor(beta / h)) : 0;
    std::vector<double> klag(std::min(lag_max, nt_fine) + 1, 0.0);
    for (int l = 0; l < static_cast<int>(klag.size()); ++l)
        klag[l] = (l * h < beta) ? kernel.smooth(l * h) : ks_beta;

    std::vector<complexd> cumJ(nt_fine, complexd{0.0, 0.0}); // trapezoid prefix of J

    for (int m = 0; m < nt_fine; ++m) {
        const double tm = m * h;
        complexd known{0.0, 0.0};
        double denom = identity_weight + w0;

        // Impulse at the support end: w_beta * J(tm - beta), J taken by
        // linear interpolation (the upper node may be the unknown J_m).
        if (wbeta != 0.0 && has_support && tm >= beta) {
            const double tp = tm - beta;
            const int i = std::min(static_cast<int>(std::floor(tp / h)), m - 1);
            const double frac = tp / h - i;
            known += wbeta * (1.0 - frac) * J[i];
            if (i + 1 < m) known += wbeta * frac * J[i + 1];
            else if (frac != 0.0) denom += wbeta * frac;
        }

        // Smooth convolution over s in [max(0, tm - beta), tm].
        if (has_support && m >= 1) {
            const double L = std::max(0.0, tm - beta);
            const int iL = static_cast<int>(std::floor(L / h + 1e-12));
            // Full panels [t_i, t_{i+1}] for i >= iL with t_i >= L.
            int first_full = iL;
            if (L > iL * h + 1e-14 * std::max(1.0, tm / h)) {
                first_full = iL + 1;
                // Partial panel [L, t_{first_full}]; J(L) by interpolation of
                // already-known values (guaranteed past by beta >= 4h).
                const double hw = first_full * h - L;
                const double fracL = L / h - iL;
                const complexd JL = (1.0 - fracL) * J[iL] + fracL * J[iL + 1];
                const double kfar = klag[std::min<std::size_t>(m - first_full, klag.size() - 1)];
                known += 0.5 * hw * (ks_beta * JL + kfar * J[first_full]);
            }
            for (int i = first_full; i < m; ++i) {
                const int lag_near = m - i;         // kernel at t_m - t_i
                const int lag_far = m - (i + 1);    // kernel at t_m - t_{i+1}
                const double knear = klag[lag_near];
                const double kfar2 = (lag_far == 0) ? ks_zero : klag[lag_far];
                known += 0.5 * h * knear * J[i];
                if (i + 1 < m) known += 0.5 * h * kfar2 * J[i + 1];
                else denom += 0.5 * h * ks_zero;
            }
        }

        // Constant tail: tail * int_0^{tm - beta} J.
        if (kernel.tail != 0.0 && tm > beta) {
            const double tp = tm - beta;
            const int i = static_cast<int>(std::floor(tp / h));
            const double frac = tp - i * h;
            complexd integral = cumJ[std::min(i, m - 1)];
            if (frac > 0.0 && i + 1 <= m - 1) {
                const complexd Ji = J[i], Jn = J[i + 1];
                const complexd Jt = Ji + (Jn - Ji) * (frac / h);
                integral += 0.5 * frac * (Ji + Jt);
            }
            known += kernel.tail * integral;
        }

        if (denom == 0.0) throw NumericalError("volterra_oracle: vanishing diagonal weight");
        J[m] = (f(tm) - known) / denom;
        if (m >= 1) cumJ[m] = cumJ[m - 1] + 0.5 * h * (J[m - 1] + J[m]);
    }
    return J;
}

double relative_l2_vs_oracle(const CoefficientSeries& series,
                             const std::vector<complexd>& oracle, double dt_fine) {
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < oracle.size(); ++m) {
        const complexd s = series.evaluate(m * dt_fine);
        num += std::norm(s - oracle[m]);
        den += std::norm(oracle[m]);
    }
    if (den == 0.0) throw NumericalError("relative_l2_vs_oracle: zero reference norm");
    return std::sqrt(num / den);
}

} // namespace tdmie
