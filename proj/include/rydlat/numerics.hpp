#ifndef RYDLAT_NUMERICS_HPP
#define RYDLAT_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "rydlat/errors.hpp"

namespace rydlat::numerics {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues ascending; column j of `eigenvectors` pairs with eigenvalue j.
/// Each eigenvector is unit-norm with its largest-magnitude entry rotated to
/// the real positive axis, so repeated calls give identical vectors.
struct HermitianSpectrum {
    VectorXd eigenvalues;
    MatrixXcd eigenvectors;
};

/// Diagonalize a Hermitian matrix. Throws ParamError if H is not square or
/// not Hermitian to within 1e-12 relative asymmetry.
HermitianSpectrum eigh(const MatrixXcd& H);

/// Result of integrating i dpsi/dt = H(t) psi.
struct EvolutionResult {
    VectorXcd final_state;
    std::vector<double> norm_history; // sampled ||psi|| including endpoints
    long step_count = 0;
};

/// Time-dependent generator: fills H (preallocated, correct size) at time t.
using GeneratorFn = std::function<void(double t, MatrixXcd& H)>;

/// Classical fixed-step RK4 for i dpsi/dt = H(t) psi. H may be non-Hermitian
/// (decay terms). Throws NumericalError on non-finite generator entries.
EvolutionResult evolve(const GeneratorFn& H_of_t, const VectorXcd& psi0,
                       double t_start, double t_end, double dt,
                       int norm_samples = 128);

/// Step heuristic: 1/200 of the fastest period among the matrix-element
/// magnitudes of H, i.e. 2*pi / (200 * max|H_ij|).
double default_step(const MatrixXcd& H);

/// Exact propagation psi(T) = exp(-i H T) psi0 for a constant, possibly
/// non-Hermitian generator, via spectral decomposition.
VectorXcd propagate_constant(const MatrixXcd& H, const VectorXcd& psi0, double T);

} // namespace rydlat::numerics

#endif
