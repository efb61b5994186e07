// Numerical kernel checks against closed-form quantum mechanics:
//   - 2x2 benchmarks with hand-computable spectra
//   - resonant Rabi flopping: P_excited(t) = sin^2(Omega t / 2)
//   - three-level ladder (two-photon ladder with interaction shift V on the
//     doubly excited state): perturbative eigenvalues for V << coupling
//       l1 = -2w + V/2 - V^3/(32 w^2)
//       l2 =  V/4 + 5V^2/(64 w)
//       l3 = -4w + V/4 - 5V^2/(64 w)
//     where w is the two-photon Rabi frequency.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "rydlat/numerics.hpp"

using namespace rydlat;
using numerics::Complex;
using numerics::MatrixXcd;
using numerics::VectorXcd;

namespace {

MatrixXcd ladder3(double w, double V) {
    MatrixXcd H(3, 3);
    const double c = std::sqrt(2.0) * w;
    H << -2.0 * w, -c, 0.0,
         -c, -2.0 * w, -c,
         0.0, -c, V - 2.0 * w;
    return H;
}

MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = Complex(g(rng), g(rng));
    return 0.5 * (A + A.adjoint()).eval();
}

} // namespace

TEST_CASE("eigh: diagonal matrix is returned as-is") {
    MatrixXcd H = MatrixXcd::Zero(2, 2);
    H(1, 1) = 1.0;
    const auto s = numerics::eigh(H);
    CHECK(s.eigenvalues[0] == doctest::Approx(0.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(std::abs(s.eigenvectors(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(s.eigenvectors(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("eigh: sigma_x eigenpairs (+-1, (1,+-1)/sqrt2)") {
    MatrixXcd H(2, 2);
    H << 0.0, 1.0, 1.0, 0.0;
    const auto s = numerics::eigh(H);
    CHECK(s.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    // phase convention: largest-magnitude entry real positive
    CHECK(std::abs(s.eigenvectors(0, 0) - r) < 1e-12);
    CHECK(std::abs(s.eigenvectors(1, 0) + r) < 1e-12);
    CHECK(std::abs(s.eigenvectors(0, 1) - r) < 1e-12);
    CHECK(std::abs(s.eigenvectors(1, 1) - r) < 1e-12);
}

TEST_CASE("eigh: three-level ladder matches perturbative eigenvalues to O(ratio^3)") {
    const double w = 1.0;
    auto series = [&](double V) {
        return std::array<double, 3>{
            -2.0 * w + 0.5 * V - V * V * V / (32.0 * w * w),
            0.25 * V + 5.0 * V * V / (64.0 * w),
            -4.0 * w + 0.25 * V - 5.0 * V * V / (64.0 * w)};
    };
    auto max_dev = [&](double V) {
        const auto s = numerics::eigh(ladder3(w, V));
        const auto lam = series(V);
        // ascending order of the series values: l3 < l1 < l2 for small V
        double d = std::abs(s.eigenvalues[0] - lam[2]);
        d = std::max(d, std::abs(s.eigenvalues[1] - lam[0]));
        d = std::max(d, std::abs(s.eigenvalues[2] - lam[1]));
        return d;
    };
    const double dev1 = max_dev(0.1);
    const double dev2 = max_dev(0.05);
    CHECK(dev1 < 2.0 * std::pow(0.1, 3));
    // truncation error drops like the cube of the small parameter
    CHECK(dev1 / dev2 > 5.0);
    CHECK(dev1 / dev2 < 11.0);
}

TEST_CASE("eigh: residual, reconstruction and phase convention on random matrices") {
    for (int n : {3, 8, 17, 64}) {
        const MatrixXcd H = random_hermitian(n, 1234 + n);
        const auto s = numerics::eigh(H);
        const double hnorm = H.norm();
        for (int j = 0; j < n; ++j) {
            const VectorXcd v = s.eigenvectors.col(j);
            CHECK((H * v - s.eigenvalues[j] * v).norm() <= 1e-10 * hnorm);
            CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
            Eigen::Index imax = 0;
            v.cwiseAbs().maxCoeff(&imax);
            CHECK(v[imax].imag() == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(v[imax].real() > 0.0);
        }
        for (int j = 1; j < n; ++j)
            CHECK(s.eigenvalues[j] >= s.eigenvalues[j - 1]);
        const MatrixXcd rec = s.eigenvectors * s.eigenvalues.asDiagonal() *
                              s.eigenvectors.adjoint();
        CHECK((H - rec).norm() <= 1e-9 * hnorm);
    }
}

TEST_CASE("eigh: rejects non-square and non-Hermitian input") {
    CHECK_THROWS_AS(numerics::eigh(MatrixXcd::Zero(2, 3)), ParamError);
    MatrixXcd H(2, 2);
    H << 0.0, 1.0, 1.000001, 0.0;
    CHECK_THROWS_AS(numerics::eigh(H), ParamError);
}

TEST_CASE("evolve: constant diagonal generator gives exact phase") {
    const double omega = 0.7;
    MatrixXcd H = MatrixXcd::Zero(2, 2);
    H(0, 0) = omega;
    VectorXcd psi0(2);
    psi0 << 1.0, 0.0;
    const double T = 5.0;
    const auto r = numerics::evolve([&](double, MatrixXcd& M) { M = H; },
                                    psi0, 0.0, T, 1e-3);
    const Complex expected = std::exp(Complex(0.0, -omega * T));
    CHECK(std::abs(r.final_state[0] - expected) < 1e-10);
    CHECK(std::abs(r.final_state[1]) < 1e-12);
}

TEST_CASE("evolve: resonant Rabi pi-pulse transfers all population") {
    const double rabi = 2.0; // coupling Omega/2 = 1
    MatrixXcd H(2, 2);
    H << 0.0, 0.5 * rabi, 0.5 * rabi, 0.0;
    VectorXcd psi0(2);
    psi0 << 1.0, 0.0;
    const double T = M_PI / rabi; // pi pulse
    const auto r = numerics::evolve([&](double, MatrixXcd& M) { M = H; },
                                    psi0, 0.0, T, numerics::default_step(H));
    CHECK(std::norm(r.final_state[1]) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::norm(r.final_state[0]) < 1e-8);
}

TEST_CASE("evolve: two-photon ladder reaches the doubly excited state at w T = pi/2") {
    const double w = 1.0;
    const MatrixXcd H = ladder3(w, 0.0);
    VectorXcd psi0(3);
    psi0 << 1.0, 0.0, 0.0;
    const double T = 0.5 * M_PI / w;
    const auto r = numerics::evolve([&](double, MatrixXcd& M) { M = H; },
                                    psi0, 0.0, T, numerics::default_step(H));
    CHECK(std::abs(r.final_state[2]) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("evolve: norm preserved to 1e-8 over 1e5 steps (Hermitian generator)") {
    MatrixXcd H(2, 2);
    H << 0.3, Complex(0.2, 0.1), Complex(0.2, -0.1), -0.3;
    VectorXcd psi0(2);
    psi0 << std::sqrt(0.5), std::sqrt(0.5);
    const auto r = numerics::evolve([&](double, MatrixXcd& M) { M = H; },
                                    psi0, 0.0, 100.0, 1e-3, 16);
    CHECK(r.step_count == 100000);
    for (double nrm : r.norm_history)
        CHECK(std::abs(nrm - 1.0) < 1e-8);
}

TEST_CASE("evolve: observed convergence order >= 3.8 on the Rabi problem") {
    MatrixXcd H(2, 2);
    H << 0.0, 1.0, 1.0, 0.0;
    VectorXcd psi0(2);
    psi0 << 1.0, 0.0;
    const double T = 1.0; // partial rotation, generic point
    auto run = [&](double dt) {
        return numerics::evolve([&](double, MatrixXcd& M) { M = H; }, psi0,
                                0.0, T, dt).final_state;
    };
    const double dt = 0.02;
    const double e1 = (run(dt) - run(dt / 2)).norm();
    const double e2 = (run(dt / 2) - run(dt / 4)).norm();
    const double order = std::log2(e1 / e2);
    CHECK(order >= 3.8);
}

TEST_CASE("evolve: halving dt changes the final state below 1e-8") {
    const MatrixXcd H = ladder3(1.0, 0.1);
    VectorXcd psi0(3);
    psi0 << 1.0, 0.0, 0.0;
    // acceptance-scale step: the occupied eigenvalues are O(4) here, so this
    // matches the |lambda| dt ~ 4e-3 operating point of the ramp evolutions
    const double dt = 1.5e-3;
    auto run = [&](double step) {
        return numerics::evolve([&](double, MatrixXcd& M) { M = H; }, psi0,
                                0.0, M_PI, step).final_state;
    };
    CHECK((run(dt) - run(0.5 * dt)).norm() < 1e-8);
}

TEST_CASE("evolve: non-finite generator entries are a numerical-domain error") {
    VectorXcd psi0(1);
    psi0 << 1.0;
    auto bad = [](double, MatrixXcd& M) { M(0, 0) = std::nan(""); };
    CHECK_THROWS_AS(numerics::evolve(bad, psi0, 0.0, 1.0, 0.1), NumericalError);
}

TEST_CASE("propagate_constant agrees with RK4 for Hermitian and decaying generators") {
    VectorXcd psi0(3);
    psi0 << 1.0, 0.0, 0.0;
    MatrixXcd H = ladder3(1.0, 0.3);
    auto gen = [&](double, MatrixXcd& M) { M = H; };

    VectorXcd spectral = numerics::propagate_constant(H, psi0, 2.0);
    VectorXcd rk4 = numerics::evolve(gen, psi0, 0.0, 2.0, 1e-4).final_state;
    CHECK((spectral - rk4).norm() < 1e-9);

    // add amplitude decay on the excited states
    H(1, 1) -= Complex(0.0, 0.02);
    H(2, 2) -= Complex(0.0, 0.04);
    spectral = numerics::propagate_constant(H, psi0, 2.0);
    rk4 = numerics::evolve(gen, psi0, 0.0, 2.0, 1e-4).final_state;
    CHECK((spectral - rk4).norm() < 1e-9);
    CHECK(spectral.norm() <= 1.0 + 1e-8);
}
