#include "rydlat/lattice.hpp"

#include <cmath>

namespace rydlat::lattice {

void validate(const LatticeParams& p) {
    if (p.V0 < 0.0 || p.V1 < 0.0)
        throw ParamError("lattice: V0 and V1 must be non-negative");
    if (p.recoil_khz <= 0.0)
        throw ParamError("lattice: recoil energy must be positive");
    if (p.k <= 0.0)
        throw ParamError("lattice: wavevector must be positive");
}

MatrixXcd central_matrix(const LatticeParams& p, double q_over_k, int N_max) {
    const int dim = 2 * N_max + 1;
    MatrixXcd H = MatrixXcd::Zero(dim, dim);
    const Complex vphase = 0.25 * p.V0 * std::exp(Complex(0.0, 2.0 * p.phi));
    for (int i = 0; i < dim; ++i) {
        const double n = static_cast<double>(i - N_max);
        const double kin = (q_over_k + 2.0 * n) * p.k;
        H(i, i) = kin * kin + 0.5 * (p.V0 + p.V1);
        if (i + 1 < dim) {
            H(i + 1, i) = vphase;            // e^{+2ikx} Fourier component
            H(i, i + 1) = std::conj(vphase); // e^{-2ikx}
        }
        if (i + 2 < dim) {
            H(i + 2, i) = 0.25 * p.V1;
            H(i, i + 2) = 0.25 * p.V1;
        }
    }
    return H;
}

BandStructure solve_bands(const LatticeParams& p, int n_bands, int q_points,
                          int N_max) {
    validate(p);
    if (N_max < 1)
        throw ParamError("solve_bands: N_max must be >= 1");
    if (n_bands < 1 || n_bands > 2 * N_max)
        throw ParamError("solve_bands: n_bands must be in [1, 2*N_max]");
    if (q_points < 1)
        throw ParamError("solve_bands: q_points must be >= 1");

    BandStructure bs;
    bs.params = p;
    bs.N_max = N_max;
    bs.q_grid.resize(q_points);
    bs.energies.resize(n_bands, q_points);
    bs.coefficients.reserve(q_points);

    const int dim = 2 * N_max + 1;
    for (int j = 0; j < q_points; ++j) {
        // Cell-centered BZ sampling; q_points = 1 gives exactly q = 0.
        bs.q_grid[j] = -1.0 + (2.0 * j + 1.0) / q_points;
        const auto spec = numerics::eigh(central_matrix(p, bs.q_grid[j], N_max));
        bs.energies.col(j) = spec.eigenvalues.head(n_bands);
        bs.coefficients.push_back(spec.eigenvectors.leftCols(std::min(n_bands, dim)));
    }
    return bs;
}

namespace {

// Bloch function psi_q(x) = e^{iqx} sum_n c_n e^{2inx} on kx-grid values.
VectorXcd bloch_on_grid(const VectorXd& x, double q, const VectorXcd& c, int N_max) {
    VectorXcd psi = VectorXcd::Zero(x.size());
    for (int n = -N_max; n <= N_max; ++n) {
        const Complex cn = c[n + N_max];
        if (std::abs(cn) == 0.0)
            continue;
        const double kx_factor = q + 2.0 * n;
        for (Eigen::Index i = 0; i < x.size(); ++i)
            psi[i] += cn * std::exp(Complex(0.0, kx_factor * x[i]));
    }
    return psi;
}

double grid_norm(const VectorXd& x, const VectorXcd& f) {
    const double dx = x[1] - x[0];
    return std::sqrt(f.squaredNorm() * dx);
}

// kx of the right-hand potential minimum within cell 0, used to orient signs.
double right_minimum(const LatticeParams& p) {
    if (p.V1 > 0.0 && p.V0 <= 4.0 * p.V1)
        return 3.0 * M_PI / 4.0 - 0.5 * std::asin(p.V0 / (4.0 * p.V1));
    return M_PI / 2.0; // single-well cell
}

} // namespace

WannierSet wannier(const BandStructure& bs, int cell_index) {
    if (bs.energies.rows() < 2)
        throw ParamError("wannier: need at least 2 bands");
    const int Q = static_cast<int>(bs.q_grid.size());
    const int N_max = bs.N_max;
    const double period = M_PI;
    // the phase translates the superlattice pattern by -phi/k
    const double center = (cell_index + 0.5) * period - bs.params.phi;

    WannierSet ws;
    ws.cell_center = center;
    const Eigen::Index npts = static_cast<Eigen::Index>(kGridPointsPerPeriod) * Q;
    ws.x_grid.resize(npts);
    const double x0 = center - 0.5 * Q * period;
    const double dx = period / kGridPointsPerPeriod;
    for (Eigen::Index i = 0; i < npts; ++i)
        ws.x_grid[i] = x0 + dx * i;

    VectorXcd w[2] = {VectorXcd::Zero(npts), VectorXcd::Zero(npts)};
    for (int band = 0; band < 2; ++band) {
        // The per-q eigenvector phases are arbitrary; chain them by overlap
        // continuity so the q-sum localizes instead of cancelling.
        VectorXcd prev;
        for (int j = 0; j < Q; ++j) {
            VectorXcd c = bs.coefficients[j].col(band);
            if (j > 0) {
                const Complex ip = prev.dot(c); // conj(prev) . c
                if (std::abs(ip) > 1e-12)
                    c *= std::conj(ip) / std::abs(ip);
            }
            prev = c;
            const double q = bs.q_grid[j];
            const Complex site_phase = std::exp(Complex(0.0, -q * center));
            w[band] += site_phase * bloch_on_grid(ws.x_grid, q, c, N_max);
        }
    }

    // Sign rule: rotate each band's global phase so its value at the cell's
    // right minimum is real positive, which pins psiL/psiR to the left/right
    // wells. If that point is a node (single-well cells), use the global
    // maximum instead.
    const double xr = cell_index * period + right_minimum(bs.params) - bs.params.phi;
    Eigen::Index ir = static_cast<Eigen::Index>(std::lround((xr - x0) / dx));
    ir = std::min(std::max<Eigen::Index>(ir, 0), npts - 1);
    for (auto& wb : w) {
        wb /= grid_norm(ws.x_grid, wb);
        Eigen::Index ipin = ir;
        if (std::abs(wb[ir]) < 1e-6)
            wb.cwiseAbs().maxCoeff(&ipin);
        const Complex pin = wb[ipin];
        if (std::abs(pin) > 0.0)
            wb *= std::conj(pin) / std::abs(pin);
    }

    ws.w1 = w[0];
    ws.w2 = w[1];
    ws.psiL = (ws.w1 - ws.w2) / std::sqrt(2.0);
    ws.psiR = (ws.w1 + ws.w2) / std::sqrt(2.0);
    return ws;
}

double probability_weight(const VectorXd& x, const VectorXcd& f, double a, double b) {
    if (x.size() != f.size() || x.size() < 2)
        throw ParamError("probability_weight: bad grid");
    const double dx = x[1] - x[0];
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        if (x[i] >= a && x[i + 1] <= b)
            acc += 0.5 * (std::norm(f[i]) + std::norm(f[i + 1])) * dx;
    }
    return acc;
}

double rms_width(const VectorXd& x, const VectorXcd& f) {
    if (x.size() != f.size() || x.size() < 2)
        throw ParamError("rms_width: bad grid");
    const double dx = x[1] - x[0];
    double p = 0.0, m1 = 0.0, m2 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double w = std::norm(f[i]) * dx;
        p += w;
        m1 += w * x[i];
        m2 += w * x[i] * x[i];
    }
    m1 /= p;
    m2 /= p;
    return std::sqrt(2.0 * (m2 - m1 * m1));
}

std::pair<double, double> double_well_minima(const LatticeParams& p) {
    validate(p);
    if (p.V1 <= 0.0 || p.V0 > 4.0 * p.V1)
        throw ParamError("double_well_minima: V0 > 4*V1, single-well regime");
    const double half = 0.5 * std::asin(p.V0 / (4.0 * p.V1));
    return {half + M_PI / 4.0, -half + 3.0 * M_PI / 4.0};
}

double vector_shift(const LatticeParams& p, double alpha_ratio, double m_F) {
    validate(p);
    if (alpha_ratio <= 0.0 || alpha_ratio > 1.0)
        throw ParamError("vector_shift: alpha_v/alpha_s must be in (0, 1]");
    if (p.V1 <= 0.0 || p.V0 > 4.0 * p.V1)
        throw ParamError("vector_shift: V0 > 4*V1, single-well regime");
    return alpha_ratio * std::sqrt(0.5 * p.V0 * p.V1 * (1.0 - p.V0 / (4.0 * p.V1))) *
           p.V0 / (2.0 * p.V1) * m_F;
}

double harmonic_width(const LatticeParams& p) {
    validate(p);
    if (p.V0 <= 0.0)
        throw ParamError("harmonic_width: V0 must be positive");
    return std::pow(1.0 / p.V0, 0.25) / p.k;
}

} // namespace rydlat::lattice
