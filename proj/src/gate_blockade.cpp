#include "rydlat/gate_blockade.hpp"

#include <cmath>

namespace rydlat::blockade {

using numerics::MatrixXcd;
using numerics::VectorXcd;

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

struct Rates {
    double O2;    // Omega^2 (angular^2), including drive scale
    double D;     // Delta (angular)
    double Dhf;   // hyperfine splitting (angular)
    double dv;    // delta_vec (angular), sign of the control side
    double V;     // V_int (angular)
    double g;     // amplitude decay per Rydberg excitation
    double T;     // pi pulse duration, from nominal rates
    double T2;    // 2pi pulse duration
};

Rates rates(const PulseParams& p, double delta_vec_khz,
            const InteractionParams& i) {
    const double nominal = kTwoPi * p.two_photon_rabi_mhz();
    if (nominal <= 0.0)
        throw ParamError("run_blockade_gate: zero Rabi frequency");
    const double scale =
        p.drive_ratio * (1.0 + p.rabi_offset) * (1.0 + p.rabi_offset);
    Rates r;
    r.D = kTwoPi * p.delta_mhz;
    r.Dhf = kTwoPi * p.delta_hf_mhz;
    r.O2 = kTwoPi * kTwoPi * p.omega1_mhz * p.omega2_mhz * scale;
    r.dv = kTwoPi * delta_vec_khz * 1e-3;
    r.V = kTwoPi * i.V_int_mhz;
    r.g = i.gamma_per_s * 1e-6;
    r.T = (M_PI / 2.0) / nominal;
    r.T2 = M_PI / nominal;
    return r;
}

// Four-state manifold in the fixed basis {11, 1r, r1, rr}; slot 1 is the
// target-excited state, slot 2 the control-excited one. During a stage the
// non-addressed atom's excitation carries the detuning penalty: +delta_vec
// when the control is addressed, -delta_vec when the target is. Light-shift
// denominators Delta + d carry the non-addressed atom's leg detuning.
MatrixXcd stage_H4(const Rates& r, Target addressed) {
    const double d = addressed == Target::control ? r.dv : -r.dv;
    const double lw = r.O2 / (r.D + d); // leg of the non-addressed atom
    const double lr = r.O2 / r.D;       // resonant leg
    const int wrong = addressed == Target::control ? 1 : 2;
    const int reson = addressed == Target::control ? 2 : 1;

    MatrixXcd H = MatrixXcd::Zero(4, 4);
    H(0, 0) = -(lw + lr);
    H(wrong, wrong) = d - 2.0 * lw;
    H(reson, reson) = -(lw + lr);
    H(3, 3) = r.V + d - 2.0 * lw;
    H(0, wrong) = H(wrong, 0) = -lw;
    H(0, reson) = H(reson, 0) = -lr;
    H(wrong, 3) = H(3, wrong) = -lw;
    H(reson, 3) = H(3, reson) = -lw;
    H(1, 1) -= Complex(0.0, r.g);
    H(2, 2) -= Complex(0.0, r.g);
    H(3, 3) -= Complex(0.0, 2.0 * r.g);
    return H;
}

// {01, 0r}: the 0 atom is spectator (hyperfine-shifted leg); the 1 atom is
// the target, so it is Delta_vec-detuned during control pulses and resonant
// during the target pulse.
MatrixXcd stage_H01(const Rates& r, Target addressed) {
    MatrixXcd H = MatrixXcd::Zero(2, 2);
    if (addressed == Target::control) {
        H(0, 0) = -2.0 * r.O2 / (r.D + r.Dhf);
        H(1, 1) = r.dv - r.O2 / (r.D + r.Dhf + r.dv) - r.O2 / (r.D + r.dv);
        H(0, 1) = H(1, 0) = -r.O2 / (r.D + r.Dhf);
    } else {
        H(0, 0) = -r.O2 / (r.D + r.Dhf) - r.O2 / r.D;
        H(1, 1) = -r.O2 / (r.D + r.Dhf) - r.O2 / r.D;
        H(0, 1) = H(1, 0) = -r.O2 / r.D;
    }
    H(1, 1) -= Complex(0.0, r.g);
    return H;
}

// {10, r0}: the 1 atom is the control, resonant during control pulses and
// -Delta_vec-detuned during the target pulse.
MatrixXcd stage_H10(const Rates& r, Target addressed) {
    MatrixXcd H = MatrixXcd::Zero(2, 2);
    if (addressed == Target::control) {
        H(0, 0) = -(r.O2 / r.D + r.O2 / (r.D + r.Dhf));
        H(1, 1) = -(r.O2 / r.D + r.O2 / (r.D + r.Dhf));
        H(0, 1) = H(1, 0) = -r.O2 / r.D;
    } else {
        H(0, 0) = -(r.O2 / (r.D - r.dv) + r.O2 / (r.D + r.Dhf));
        H(1, 1) = -(r.dv + r.O2 / (r.D + r.Dhf - r.dv) + r.O2 / (r.D - r.dv));
        H(0, 1) = H(1, 0) = -r.O2 / (r.D - r.dv);
    }
    H(1, 1) -= Complex(0.0, r.g);
    return H;
}

noblockade::BranchResult make_branch(std::vector<std::string> basis,
                                     VectorXcd amps) {
    noblockade::BranchResult b;
    b.basis = std::move(basis);
    b.amplitudes = std::move(amps);
    b.overlap = b.amplitudes[0];
    b.leakage = 1.0 - std::norm(b.overlap);
    return b;
}

} // namespace

ThetaCondition theta_check(double o2d_khz, double delta_vec_khz, double tol) {
    if (o2d_khz <= 0.0 || delta_vec_khz <= 0.0)
        throw ParamError("theta_check: frequencies must be positive");
    ThetaCondition c;
    c.theta = M_PI * delta_vec_khz / o2d_khz;
    c.residue = wrap_phase(c.theta);
    c.satisfied = std::abs(c.residue) <= tol;
    const double n_exact = delta_vec_khz / (2.0 * o2d_khz);
    const long n_lo = std::max(1L, static_cast<long>(std::floor(n_exact)));
    const long n_hi = n_lo + 1;
    const double cand_lo = delta_vec_khz / (2.0 * n_lo);
    const double cand_hi = delta_vec_khz / (2.0 * n_hi);
    c.nearest_valid_o2d_khz =
        std::abs(cand_lo - o2d_khz) <= std::abs(cand_hi - o2d_khz) ? cand_lo
                                                                   : cand_hi;
    return c;
}

std::vector<BlockadePulse> gate_sequence(const BlockadeParams& p) {
    const Target c = p.swap_roles ? Target::target_atom : Target::control;
    const Target t = p.swap_roles ? Target::control : Target::target_atom;
    return {{p.pulse, p.delta_vec_khz, c, Area::pi},
            {p.pulse, p.delta_vec_khz, t, Area::two_pi},
            {p.pulse, p.delta_vec_khz, c, Area::pi}};
}

double pulse_duration_us(const BlockadePulse& pulse) {
    const double nominal = kTwoPi * pulse.pulse.two_photon_rabi_mhz();
    if (nominal <= 0.0)
        throw ParamError("pulse_duration_us: zero Rabi frequency");
    return (pulse.area == Area::pi ? M_PI / 2.0 : M_PI) / nominal;
}

GateOutcome run_blockade_gate(const BlockadeParams& p,
                              const InteractionParams& i) {
    if (p.swap_roles) {
        // pure relabeling of the atoms: the (01, 10) branch records exchange
        // and the excitation labels flip; every number is computed once
        BlockadeParams q = p;
        q.swap_roles = false;
        GateOutcome g = run_blockade_gate(q, i);
        std::swap(g.branches.at("01"), g.branches.at("10"));
        g.branches.at("01").basis = {"01", "0r"};
        g.branches.at("10").basis = {"10", "r0"};
        g.branches.at("11").basis = {"11", "r1", "1r", "rr"};
        return g;
    }

    noblockade::validate(p.pulse);
    noblockade::validate(i);
    if (p.delta_vec_khz == 0.0)
        throw ParamError("run_blockade_gate: Delta_vec = 0, no selectivity");

    const Rates r = rates(p.pulse, p.delta_vec_khz, i);

    GateOutcome out;
    const double o2d_khz = p.pulse.two_photon_rabi_mhz() * 1e3;
    const auto theta = theta_check(o2d_khz, std::abs(p.delta_vec_khz));
    if (!theta.satisfied)
        out.warnings.push_back("theta = pi Delta_vec/(Omega^2/Delta) is not 2 pi n");
    if (!(i.V_int_mhz * 1e3 > std::abs(p.delta_vec_khz) &&
          std::abs(p.delta_vec_khz) > o2d_khz))
        out.warnings.push_back("outside the regime V_int >> Delta_vec >> Omega^2/Delta");

    auto run_seq = [&](auto&& stage, const VectorXcd& psi0) {
        VectorXcd psi = numerics::propagate_constant(stage(Target::control), psi0, r.T);
        psi = numerics::propagate_constant(stage(Target::target_atom), psi, r.T2);
        return numerics::propagate_constant(stage(Target::control), psi, r.T).eval();
    };

    VectorXcd e4 = VectorXcd::Zero(4), e2 = VectorXcd::Zero(2);
    e4[0] = 1.0;
    e2[0] = 1.0;

    out.branches["11"] = make_branch(
        {"11", "1r", "r1", "rr"},
        run_seq([&](Target a) { return stage_H4(r, a); }, e4));
    out.branches["01"] = make_branch(
        {"01", "0r"}, run_seq([&](Target a) { return stage_H01(r, a); }, e2));
    out.branches["10"] = make_branch(
        {"10", "r0"}, run_seq([&](Target a) { return stage_H10(r, a); }, e2));

    const Complex d00 =
        std::exp(Complex(0.0, 2.0 * (r.O2 / (r.D + r.Dhf)) * (2.0 * r.T + r.T2)));
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

double standing_wave_ratio(double V0, double V1) {
    if (V0 <= 0.0 || V1 <= 0.0)
        throw ParamError("standing_wave_ratio: depths must be positive");
    const double s = std::sqrt((1.0 + V0 / (4.0 * V1)) / 2.0);
    return (1.0 - s) / (1.0 + s);
}

double inactive_closed_form(double r) {
    if (r < 0.0 || r > 1.0)
        throw ParamError("inactive_closed_form: ratio must be in [0, 1]");
    const double c = std::cos(M_PI * r);
    const double ch = std::cos(M_PI * r / 2.0);
    const double sh = std::sin(M_PI * r / 2.0);
    const double s = std::sin(M_PI * r);
    const double p11 = ch * ch * ch * ch * c * c + sh * sh * sh * sh -
                       0.5 * s * s * c * std::cos(4.0 * M_PI * r);
    return 0.25 * (p11 + 2.0 * c * c + 1.0);
}

double run_blockade_inactive(double ratio, int photon_order) {
    if (ratio < 0.0 || ratio > 1.0)
        throw ParamError("run_blockade_inactive: ratio must be in [0, 1]");
    if (photon_order == 1)
        return kOnePhotonInactiveP;
    const double r_eff = std::pow(ratio, photon_order);
    return inactive_closed_form(r_eff);
}

} // namespace rydlat::blockade
