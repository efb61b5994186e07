#ifndef RYDLAT_LATTICE_HPP
#define RYDLAT_LATTICE_HPP

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "rydlat/numerics.hpp"

namespace rydlat::lattice {

using numerics::Complex;
using numerics::MatrixXcd;
using numerics::VectorXcd;
using numerics::VectorXd;

/// Superlattice V(x) = V0 cos^2(kx + phi) + V1 cos^2(2kx).
///
/// Units: lengths in 1/k_ref, energies in the recoil E_R = hbar^2 k_ref^2 / 2m
/// of the reference wavevector, so the kinetic plane-wave diagonal is
/// (q/k + 2n)^2 k^2 E_R. For a lattice at its own wavevector, k = 1.
struct LatticeParams {
    double V0 = 100.0;    // E_R
    double V1 = 0.0;      // E_R
    double phi = 0.0;     // rad
    double k = 1.0;       // units of the reference wavevector
    double recoil_khz = 3.5; // E_R in kHz (87Rb at 810 nm)
};

void validate(const LatticeParams& p);

/// Bloch problem solved by plane-wave truncation u_q(x) = sum_n c_n e^{2inkx},
/// n in [-N_max, N_max]. q is stored in units of k, restricted to the first
/// Brillouin zone (-1, 1].
struct BandStructure {
    LatticeParams params;
    int N_max = 10;
    VectorXd q_grid;                       // q/k values
    Eigen::MatrixXd energies;              // [band, q], E_R
    std::vector<MatrixXcd> coefficients;   // per q: column j = band-j c-vector
};

/// Central-equation matrix at quasi-momentum q (units of k): dimension 2N+1,
/// diagonal (q + 2n)^2 k^2 E_R + (V0+V1)/2, first off-diagonals V0/4 e^{-+2i phi},
/// second off-diagonals V1/4.
MatrixXcd central_matrix(const LatticeParams& p, double q_over_k, int N_max);

BandStructure solve_bands(const LatticeParams& p, int n_bands, int q_points,
                          int N_max = 10);

/// Wannier functions of the two lowest bands at one cell, plus the left/right
/// generalized combinations psiL = (w1 - w2)/sqrt(2), psiR = (w1 + w2)/sqrt(2).
/// x_grid is in units of 1/k (i.e. kx values); all functions unit L2 norm on it.
struct WannierSet {
    VectorXd x_grid;
    VectorXcd w1, w2;
    VectorXcd psiL, psiR;
    double cell_center = 0.0; // kx of the chosen cell's center
};

/// Points per lattice period used for real-space quadrature.
inline constexpr int kGridPointsPerPeriod = 512;

WannierSet wannier(const BandStructure& bs, int cell_index);

/// Trapezoid quadrature of |f|^2 over [a, b] on a uniform grid.
double probability_weight(const VectorXd& x, const VectorXcd& f, double a, double b);

/// RMS spatial width sqrt(2 <(x - <x>)^2>) of |f|^2; equals the Gaussian
/// width parameter a for exp(-x^2 / 2a^2).
double rms_width(const VectorXd& x, const VectorXcd& f);

/// Positions (k x_min) of the two minima of the n = 0 double-well cell:
/// (arcsin(V0/4V1)/2 + pi/4, -arcsin(V0/4V1)/2 + 3pi/4).
/// Requires 0 < V0 <= 4 V1; beyond that the cell is single-well.
std::pair<double, double> double_well_minima(const LatticeParams& p);

/// Vector light shift V_v at a double-well minimum, in E_R:
/// (alpha_v/alpha_s) sqrt(V0 V1 (1 - V0/4V1)/2) * V0/(2V1) * m_F.
/// The relative left-right qubit shift is Delta_vec = 2 |V_v|.
double vector_shift(const LatticeParams& p, double alpha_ratio, double m_F);

/// Harmonic ground-state width a = (E_R/V0)^{1/4} / k for a site of depth V0.
double harmonic_width(const LatticeParams& p);

} // namespace rydlat::lattice

#endif
