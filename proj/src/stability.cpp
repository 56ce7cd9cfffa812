#include "tdmie/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace tdmie {

namespace {

void place_block(Mat& dst, const Mat& src, int row_block, int col_block, int bs, double scale) {
    for (int i = 0; i < bs; ++i)
        for (int j = 0; j < bs; ++j)
            dst(row_block * bs + i, col_block * bs + j) += scale * src(i, j);
}

void place_identity(Mat& dst, int row_block, int col_block, int bs, double scale) {
    for (int i = 0; i < bs; ++i)
        dst(row_block * bs + i, col_block * bs + i) += scale;
}

} // namespace

CompanionSystem build_companion(const MotBlocks& blocks) {
    const int bs = blocks.np + 1;
    const int nk = static_cast<int>(blocks.blocks.size()) - 1;
    const int hist = nk + 1;
    CompanionSystem sys;
    sys.block = bs;
    sys.history = hist;
    sys.charged = blocks.variant == BlockVariant::differenced;
    sys.dim = (sys.charged ? 2 : 1) * hist * bs;
    sys.a = Mat(sys.dim, sys.dim);
    sys.b = Mat(sys.dim, sys.dim);

    // Current rows: Z_0 I_{j+1} = F - sum_{k>=1} Z_k I_{j+1-k} [- C_j].
    place_block(sys.a, blocks.blocks[0], 0, 0, bs, 1.0);
    for (int k = 1; k <= nk; ++k) place_block(sys.b, blocks.blocks[k], 0, k - 1, bs, 1.0);
    for (int m = 1; m < hist; ++m) { // shift I_{j+1-m} <- I_{j-(m-1)}
        place_identity(sys.a, m, m, bs, 1.0);
        place_identity(sys.b, m, m - 1, bs, -1.0);
    }

    if (sys.charged) {
        const int coff = hist; // first charge block row/column
        place_identity(sys.b, 0, coff, bs, 1.0); // - C_j in the current row
        // Charge update C_{j+1} = C_j + sum_{k=0}^{nk} Z^I_k I_{j+1-k}:
        // the k = 0 term couples to the freshly solved current through A.
        place_identity(sys.a, coff, coff, bs, 1.0);
        place_block(sys.a, blocks.blocks[0], coff, 0, bs, -1.0);
        for (int k = 1; k <= nk; ++k) place_block(sys.b, blocks.blocks[k], coff, k - 1, bs, -1.0);
        place_identity(sys.b, coff, coff, bs, -1.0); // + C_j
        for (int m = 1; m < hist; ++m) { // charge history shift
            place_identity(sys.a, coff + m, coff + m, bs, 1.0);
            place_identity(sys.b, coff + m, coff + m - 1, bs, -1.0);
        }
    }
    return sys;
}

std::vector<double> CompanionSystem::step(const std::vector<double>& x,
                                          const std::vector<double>& forcing) const {
    std::vector<double> rhs(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += b(i, j) * x[j];
        rhs[i] = -s;
    }
    for (std::size_t i = 0; i < forcing.size(); ++i) rhs[i] += forcing[i];
    return LuFactor(a).solve(rhs);
}

SpectrumReport eigen_spectrum(const CompanionSystem& system, double tol) {
    const Mat m = LuFactor(system.a).solve(system.b);
    SpectrumReport report;
    report.tol = tol;
    report.eigenvalues = eigenvalues_dense(m);
    for (const auto& ev : report.eigenvalues) {
        const double mag = std::abs(ev);
        report.rho = std::max(report.rho, mag);
        if (mag >= 1.0 - tol && mag <= 1.0 + tol) ++report.on_circle_count;
    }
    return report;
}

void write_spectrum_csv(const SpectrumReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_spectrum_csv: cannot open " + path);
    out << "re,im,abs\n";
    char buf[128];
    for (const auto& ev : report.eigenvalues) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", ev.real(), ev.imag(), std::abs(ev));
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "# rho=%.17g on_circle=%d\n", report.rho, report.on_circle_count);
    out << buf;
}

} // namespace tdmie
