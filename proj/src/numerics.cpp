#include "rydlat/numerics.hpp"

#include <cmath>

namespace rydlat::numerics {

namespace {

void fix_column_phases(MatrixXcd& V) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        Eigen::Index imax = 0;
        V.col(j).cwiseAbs().maxCoeff(&imax);
        const Complex pivot = V(imax, j);
        if (std::abs(pivot) > 0.0)
            V.col(j) *= std::conj(pivot) / std::abs(pivot);
        V.col(j).normalize();
    }
}

} // namespace

HermitianSpectrum eigh(const MatrixXcd& H) {
    if (H.rows() != H.cols())
        throw ParamError("eigh: matrix must be square");
    const double scale = H.cwiseAbs().maxCoeff();
    const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (scale > 0.0 && asym > 1e-12 * scale)
        throw ParamError("eigh: matrix is not Hermitian (relative asymmetry " +
                         std::to_string(asym / scale) + ")");

    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigh: eigensolver failed to converge");

    HermitianSpectrum spec;
    spec.eigenvalues = solver.eigenvalues();
    spec.eigenvectors = solver.eigenvectors();
    fix_column_phases(spec.eigenvectors);
    return spec;
}

double default_step(const MatrixXcd& H) {
    const double hmax = H.cwiseAbs().maxCoeff();
    if (hmax <= 0.0)
        throw ParamError("default_step: zero generator");
    return 2.0 * M_PI / (200.0 * hmax);
}

EvolutionResult evolve(const GeneratorFn& H_of_t, const VectorXcd& psi0,
                       double t_start, double t_end, double dt,
                       int norm_samples) {
    if (dt <= 0.0)
        throw ParamError("evolve: dt must be positive");
    if (t_end < t_start)
        throw ParamError("evolve: t_end < t_start");

    const Eigen::Index n = psi0.size();
    const double span = t_end - t_start;
    const long nsteps = span > 0.0 ? std::max<long>(1, std::lround(std::ceil(span / dt))) : 0;
    const double h = nsteps > 0 ? span / static_cast<double>(nsteps) : 0.0;

    MatrixXcd H(n, n), Hmid(n, n), Hnext(n, n);
    VectorXcd psi = psi0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    const Complex mi(0.0, -1.0);

    EvolutionResult out;
    out.norm_history.reserve(norm_samples + 2);
    out.norm_history.push_back(psi.norm());
    const long sample_every = std::max<long>(1, nsteps / std::max(1, norm_samples));

    H_of_t(t_start, H);
    if (!H.allFinite())
        throw NumericalError("evolve: non-finite generator entries at t=" + std::to_string(t_start));

    for (long s = 0; s < nsteps; ++s) {
        const double t = t_start + h * static_cast<double>(s);
        H_of_t(t + 0.5 * h, Hmid);
        H_of_t(t + h, Hnext);
        if (!Hmid.allFinite() || !Hnext.allFinite())
            throw NumericalError("evolve: non-finite generator entries at t=" + std::to_string(t + h));

        k1.noalias() = mi * (H * psi);
        tmp = psi + (0.5 * h) * k1;
        k2.noalias() = mi * (Hmid * tmp);
        tmp = psi + (0.5 * h) * k2;
        k3.noalias() = mi * (Hmid * tmp);
        tmp = psi + h * k3;
        k4.noalias() = mi * (Hnext * tmp);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        H.swap(Hnext);
        if ((s + 1) % sample_every == 0 || s + 1 == nsteps)
            out.norm_history.push_back(psi.norm());
    }

    out.final_state = std::move(psi);
    out.step_count = nsteps;
    return out;
}

VectorXcd propagate_constant(const MatrixXcd& H, const VectorXcd& psi0, double T) {
    if (H.rows() != H.cols() || H.rows() != psi0.size())
        throw ParamError("propagate_constant: dimension mismatch");
    if (!H.allFinite())
        throw NumericalError("propagate_constant: non-finite generator entries");
    if (T == 0.0)
        return psi0;

    const double scale = H.cwiseAbs().maxCoeff();
    if (scale > 0.0 && (H - H.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale) {
        // Hermitian path: unitary, numerically cleanest.
        Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(H);
        if (solver.info() != Eigen::Success)
            throw NumericalError("propagate_constant: eigensolver failed");
        const VectorXcd proj = solver.eigenvectors().adjoint() * psi0;
        VectorXcd phased(proj.size());
        for (Eigen::Index j = 0; j < proj.size(); ++j)
            phased[j] = proj[j] * std::exp(Complex(0.0, -solver.eigenvalues()[j] * T));
        return solver.eigenvectors() * phased;
    }

    Eigen::ComplexEigenSolver<MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw NumericalError("propagate_constant: eigensolver failed");
    const VectorXcd proj = solver.eigenvectors().partialPivLu().solve(psi0);
    VectorXcd phased(proj.size());
    for (Eigen::Index j = 0; j < proj.size(); ++j)
        phased[j] = proj[j] * std::exp(Complex(0.0, -1.0) * solver.eigenvalues()[j] * T);
    return solver.eigenvectors() * phased;
}

} // namespace rydlat::numerics
