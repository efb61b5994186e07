#include "rydlat/gate_noblockade.hpp"

#include <cmath>

namespace rydlat::noblockade {

using numerics::MatrixXcd;

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double wrap_phase(double phi) {
    phi = std::fmod(phi, kTwoPi);
    if (phi > M_PI)
        phi -= kTwoPi;
    if (phi <= -M_PI)
        phi += kTwoPi;
    return phi;
}
} // namespace

void validate(const PulseParams& p) {
    if (p.omega1_mhz < 0.0 || p.omega2_mhz < 0.0 || p.delta_mhz <= 0.0)
        throw ParamError("pulse: Rabi frequencies must be >= 0 and Delta > 0");
    if (p.drive_ratio < 0.0 || p.drive_ratio > 1.0)
        throw ParamError("pulse: drive_ratio must be in [0, 1]");
    if (p.photon_order != 1 && p.photon_order != 2 && p.photon_order != 4)
        throw ParamError("pulse: photon_order must be 1, 2 or 4");
    if (p.rabi_offset <= -1.0)
        throw ParamError("pulse: rabi_offset must exceed -1");
}

void validate(const InteractionParams& i) {
    if (i.V_int_mhz < 0.0)
        throw ParamError("interaction: V_int must be >= 0");
    if (i.gamma_per_s < 0.0)
        throw ParamError("interaction: gamma must be >= 0");
    if (i.power != 3 && i.power != 6)
        throw ParamError("interaction: power must be 3 or 6");
}

std::array<Complex, 4> GateOutcome::realized_diagonal() const {
    return {branches.at("00").overlap, branches.at("01").overlap,
            branches.at("10").overlap, branches.at("11").overlap};
}

namespace {

struct AngularRates {
    double w11, w22, w12; // Omega1^2/Delta, Omega2^2/Delta, Omega1*Omega2/Delta
    double ls0;           // Omega1^2/(Delta + Delta_hf)
    double V;             // interaction shift
    double g;             // amplitude decay rate per Rydberg excitation
    double T;             // pi-pulse duration (from nominal rates)
    double T_int;
};

AngularRates rates(const PulseParams& p, const InteractionParams& i) {
    const double nominal = kTwoPi * p.two_photon_rabi_mhz(); // rad/us
    if (nominal <= 0.0)
        throw ParamError("run_gate: zero Rabi frequency with nonzero pulse area");
    const double scale = p.drive_ratio * (1.0 + p.rabi_offset) * (1.0 + p.rabi_offset);
    AngularRates r;
    r.w11 = kTwoPi * p.omega1_mhz * p.omega1_mhz / p.delta_mhz * scale;
    r.w22 = kTwoPi * p.omega2_mhz * p.omega2_mhz / p.delta_mhz * scale;
    r.w12 = kTwoPi * p.two_photon_rabi_mhz() * scale;
    r.ls0 = kTwoPi * p.omega1_mhz * p.omega1_mhz / (p.delta_mhz + p.delta_hf_mhz) * scale;
    r.V = kTwoPi * i.V_int_mhz;
    r.g = i.gamma_per_s * 1e-6;
    r.T = (M_PI / 2.0) / nominal;
    r.T_int = i.V_int_mhz > 0.0 ? M_PI / r.V : 0.0;
    return r;
}

// |11> sector {11, (1r+r1)/sqrt2, rr}; drive off for the interaction hold.
MatrixXcd H11(const AngularRates& r, bool drive_on) {
    MatrixXcd H = MatrixXcd::Zero(3, 3);
    if (drive_on) {
        const double c = std::sqrt(2.0) * r.w12;
        H(0, 0) = -2.0 * r.w11;
        H(1, 1) = -(r.w11 + r.w22);
        H(2, 2) = -2.0 * r.w22;
        H(0, 1) = H(1, 0) = -c;
        H(1, 2) = H(2, 1) = -c;
    }
    H(2, 2) += r.V;
    H(1, 1) -= Complex(0.0, r.g);
    H(2, 2) -= Complex(0.0, 2.0 * r.g);
    return H;
}

// |01> sector {01, 0r} (identical system for |10>).
MatrixXcd H01(const AngularRates& r, bool drive_on) {
    MatrixXcd H = MatrixXcd::Zero(2, 2);
    if (drive_on) {
        H(0, 0) = -(r.w11 + r.ls0);
        H(1, 1) = -(r.w22 + r.ls0);
        H(0, 1) = H(1, 0) = -r.w12;
    }
    H(1, 1) -= Complex(0.0, r.g);
    return H;
}

VectorXcd sequence(const MatrixXcd& Hdrive, const MatrixXcd& Hhold,
                   const VectorXcd& psi0, double T, double T_int) {
    VectorXcd psi = numerics::propagate_constant(Hdrive, psi0, T);
    if (T_int > 0.0)
        psi = numerics::propagate_constant(Hhold, psi, T_int);
    return numerics::propagate_constant(Hdrive, psi, T);
}

BranchResult make_branch(std::vector<std::string> basis, VectorXcd amps) {
    BranchResult b;
    b.basis = std::move(basis);
    b.amplitudes = std::move(amps);
    b.overlap = b.amplitudes[0];
    b.leakage = 1.0 - std::norm(b.overlap);
    return b;
}

} // namespace

GateOutcome run_gate(const PulseParams& p, const InteractionParams& i) {
    validate(p);
    validate(i);
    const AngularRates r = rates(p, i);

    GateOutcome out;
    const double omega_max = kTwoPi * std::max(p.omega1_mhz, p.omega2_mhz);
    if (kTwoPi * p.delta_mhz < 10.0 * omega_max)
        out.warnings.push_back("Delta < 10 max(Omega): adiabatic elimination marginal");

    VectorXcd e3 = VectorXcd::Zero(3), e2 = VectorXcd::Zero(2);
    e3[0] = 1.0;
    e2[0] = 1.0;

    out.branches["11"] = make_branch(
        {"11", "+", "rr"},
        sequence(H11(r, true), H11(r, false), e3, r.T, r.T_int));
    out.branches["01"] = make_branch(
        {"01", "0r"}, sequence(H01(r, true), H01(r, false), e2, r.T, r.T_int));
    out.branches["10"] = make_branch(
        {"10", "r0"}, sequence(H01(r, true), H01(r, false), e2, r.T, r.T_int));

    // |00>: pure light-shift phase, both atoms on the hyperfine-shifted leg
    const Complex d00 = std::exp(Complex(0.0, 2.0 * r.ls0 * 2.0 * r.T));
    VectorXcd a00(1);
    a00[0] = d00;
    out.branches["00"] = make_branch({"00"}, a00);

    const auto d = out.realized_diagonal();
    out.fidelity_avg = 0.25 * (std::norm(d[0]) + std::norm(d[1]) +
                               std::norm(d[2]) + std::norm(d[3]));
    out.conditional_phase = wrap_phase(std::arg(d[3]) + std::arg(d[0]) -
                                       std::arg(d[1]) - std::arg(d[2]));
    out.leakage_avg = 1.0 - out.fidelity_avg;
    return out;
}

double run_inactive(const PulseParams& p) {
    validate(p);
    InteractionParams none;
    none.V_int_mhz = 0.0;
    none.gamma_per_s = 0.0;
    PulseParams q = p;
    const auto g = run_gate(q, none);
    const auto d = g.realized_diagonal();
    return 0.25 * (std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2]) +
                   std::norm(d[3]));
}

double inactive_drive_ratio(int photon_order) {
    if (photon_order < 1)
        throw ParamError("inactive_drive_ratio: photon_order must be >= 1");
    const double field_ratio = std::cos(3.0 * M_PI / 8.0) / std::cos(7.0 * M_PI / 8.0);
    return std::abs(std::pow(field_ratio, photon_order));
}

double inactive_closed_form(double r) {
    if (r < 0.0 || r > 1.0)
        throw ParamError("inactive_closed_form: ratio must be in [0, 1]");
    const double c = std::cos(M_PI * r);
    return 0.25 * (c * c * c * c + 2.0 * c * c + 1.0);
}

double inactive_closed_form_interaction(double r) {
    if (r < 0.0 || r > 1.0)
        throw ParamError("inactive_closed_form_interaction: ratio must be in [0, 1]");
    const double c = std::cos(M_PI * r);
    const double a11 = 0.5 * (c * c - 1.0 + 2.0 * c);
    return 0.25 * (a11 * a11 + 2.0 * c * c + 1.0);
}

PerturbationReport perturbation_check(const PulseParams& p,
                                      const InteractionParams& i) {
    validate(p);
    validate(i);
    const double w = kTwoPi * p.two_photon_rabi_mhz();
    if (w <= 0.0)
        throw ParamError("perturbation_check: zero Rabi frequency");
    const double V = kTwoPi * i.V_int_mhz;
    const double rho = V / w;

    PerturbationReport rep;
    rep.ratio = rho;
    rep.regime_ok = rho <= 0.2;

    rep.eigenvalues_series = {
        -2.0 * w + 0.5 * V - V * V * V / (32.0 * w * w),
        0.25 * V + 5.0 * V * V / (64.0 * w),
        -4.0 * w + 0.25 * V - 5.0 * V * V / (64.0 * w)};

    PulseParams ideal = p;
    ideal.rabi_offset = 0.0;
    ideal.drive_ratio = 1.0;
    InteractionParams nodecay = i;
    nodecay.gamma_per_s = 0.0;
    const AngularRates r = rates(ideal, nodecay);
    const auto spec = numerics::eigh(H11(r, true).real().cast<Complex>());
    // ascending spectrum maps to ladder labels {l1, l2, l3} as {1, 2, 0}
    rep.eigenvalues_exact = {spec.eigenvalues[1], spec.eigenvalues[2],
                             spec.eigenvalues[0]};
    rep.max_eigenvalue_dev = 0.0;
    for (int j = 0; j < 3; ++j)
        rep.max_eigenvalue_dev =
            std::max(rep.max_eigenvalue_dev,
                     std::abs(rep.eigenvalues_exact[j] - rep.eigenvalues_series[j]) / w);

    rep.overlap_numeric = run_gate(ideal, nodecay).branches.at("11").overlap;
    rep.overlap_series =
        Complex(-1.0 + (0.25 + 9.0 * M_PI * M_PI / 128.0) * rho * rho,
                3.0 * M_PI / 8.0 * rho);
    rep.overlap_dev = std::abs(rep.overlap_numeric - rep.overlap_series);
    return rep;
}

} // namespace rydlat::noblockade
