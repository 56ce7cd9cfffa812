#ifndef TDMIE_STABILITY_HPP
#define TDMIE_STABILITY_HPP

#include <complex>
#include <string>
#include <vector>

#include "tdmie/linalg.hpp"
#include "tdmie/mot.hpp"

// Block companion form of the marching recursion and its eigen-spectrum.
// The one-step update is A x_{j+1} = F_{j+1} - B x_j; stability is governed
// by the spectrum of A^{-1} B.

namespace tdmie {

struct CompanionSystem {
    Mat a;
    Mat b;
    int dim = 0;
    int block = 0;     // Np + 1
    int history = 0;   // Nk + 1 current vectors kept in the state
    bool charged = false; // true for the kernel-1 charge-augmented form

    // Advance one step: returns x_{j+1} given x_j and the forcing entry
    // (placed in the leading block of F).
    std::vector<double> step(const std::vector<double>& x,
                             const std::vector<double>& forcing) const;
};

// Plain kernels map onto state [I_j, ..., I_{j-Nk}]; kernel 1 augments with
// the charge history [C_j, ..., C_{j-Nk}] and couples the charge update to
// the fresh current inside A (block lower-triangular).
CompanionSystem build_companion(const MotBlocks& blocks);

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    double rho = 0.0;       // spectral radius
    int on_circle_count = 0; // |lambda| within [1 - tol, 1 + tol]
    double tol = 1e-8;
};

SpectrumReport eigen_spectrum(const CompanionSystem& system, double tol = 1e-8);

void write_spectrum_csv(const SpectrumReport& report, const std::string& path);

} // namespace tdmie

#endif
