// No-blockade phase gate against its perturbative closed forms:
//   - averaged infidelity -> (V/(Omega^2/Delta))^2/8 as V -> 0
//   - conditional phase pi - (3 pi/8) V/(Omega^2/Delta) + O(ratio^2)
//   - branch survival under Rydberg decay e^{-gamma pi/w - 2 gamma pi/V}
//     (w, V angular; gamma = 1/lifetime)
//   - inactive-site return probability (cos^4 + 2cos^2 + 1)/4 at drive ratio r
// Expected numbers cross-checked against an independent matrix-exponential
// integrator before being frozen here.

#include <doctest.h>

#include <cmath>

#include "rydlat/gate_noblockade.hpp"

using namespace rydlat;
using noblockade::InteractionParams;
using noblockade::PulseParams;

namespace {

PulseParams rb_pulse(double o2d_mhz = 30.0) {
    PulseParams p;
    p.omega1_mhz = p.omega2_mhz = std::sqrt(o2d_mhz * 40000.0);
    p.delta_mhz = 40000.0;
    return p;
}

} // namespace

TEST_CASE("no interaction: all states return, no entangling phase") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(0.0));
    CHECK(std::norm(g.branches.at("11").overlap) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::norm(g.branches.at("01").overlap) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::norm(g.branches.at("00").overlap) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(g.conditional_phase) < 1e-3);
    CHECK(g.fidelity_avg == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("V = 3 MHz, Omega^2/Delta = 30 MHz: infidelity near V^2/(8 w^2)") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0));
    const double infid = 1.0 - g.fidelity_avg;
    const double analytic = std::pow(3.0 / 30.0, 2) / 8.0; // 1.25e-3
    CHECK(infid > 0.5 * analytic);
    CHECK(infid < 2.0 * analytic);
    CHECK(infid == doctest::Approx(1.247e-3).epsilon(0.01));

    // conditional phase carries the first-order correction -(3 pi/8) ratio
    const double expected_phase = M_PI - 3.0 * M_PI / 8.0 * 0.1;
    CHECK(g.conditional_phase == doctest::Approx(expected_phase).epsilon(0.01));
}

TEST_CASE("infidelity converges to the analytic value as V -> 0") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(0.3));
    const double analytic = std::pow(0.3 / 30.0, 2) / 8.0;
    CHECK((1.0 - g.fidelity_avg) / analytic == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("conditional phase is pi to 0.01 rad deep in the perturbative regime") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(0.2));
    CHECK(std::abs(g.conditional_phase - M_PI) < 0.01);
}

TEST_CASE("fidelity symmetry: 01 and 10 branches identical bitwise") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0, 2000.0));
    const auto& a = g.branches.at("01");
    const auto& b = g.branches.at("10");
    REQUIRE(a.amplitudes.size() == b.amplitudes.size());
    for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i)
        CHECK(a.amplitudes[i] == b.amplitudes[i]);
}

TEST_CASE("norm is conserved exactly without decay") {
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0));
    for (const auto& [key, b] : g.branches)
        CHECK(b.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Rydberg decay: branch survivals match the closed-form exponents") {
    const double gamma = 2000.0; // 1/s, i.e. 500 us lifetime
    const auto g = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0, gamma));
    const double w = 2.0 * M_PI * 30.0;  // rad/us
    const double V = 2.0 * M_PI * 3.0;
    const double g_us = gamma * 1e-6;
    const double target11 = std::exp(-g_us * (M_PI / w + 2.0 * M_PI / V));

    const double raw11 = std::norm(g.branches.at("11").overlap);
    CHECK(raw11 / target11 == doctest::Approx(1.0).epsilon(0.01));

    // isolating the decay factor from the coherent V-imperfection makes the
    // agreement tight
    const auto g0 = noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0));
    const double isolated = raw11 / std::norm(g0.branches.at("11").overlap);
    CHECK(isolated / target11 == doctest::Approx(1.0).epsilon(1e-3));

    // averaged decay error agrees with gamma pi/w + 2 gamma pi/V
    const double avg_err = g0.fidelity_avg - g.fidelity_avg;
    const double analytic = g_us * (M_PI / w + 2.0 * M_PI / V);
    CHECK(avg_err / analytic == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("fidelity is monotone in gamma and |rabi offset|") {
    double prev = 1.0;
    for (double gamma : {0.0, 1000.0, 2000.0, 4000.0}) {
        const double f =
            noblockade::run_gate(rb_pulse(), InteractionParams::vdw(3.0, gamma))
                .fidelity_avg;
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
    prev = 1.0;
    for (double off : {0.0, 0.01, 0.02, 0.05}) {
        PulseParams p = rb_pulse();
        p.rabi_offset = off;
        const double f =
            noblockade::run_gate(p, InteractionParams::vdw(3.0)).fidelity_avg;
        CHECK(f <= prev + 1e-12);
        prev = f;
    }
}

TEST_CASE("inactive sites, two-photon: <P> ~ 0.75") {
    const double r = noblockade::inactive_drive_ratio(2);
    CHECK(r == doctest::Approx(0.171573).epsilon(1e-5));

    PulseParams p = rb_pulse();
    p.drive_ratio = r;
    const double P = noblockade::run_inactive(p);
    CHECK(P == doctest::Approx(noblockade::inactive_closed_form(r)).epsilon(1e-8));
    CHECK(P == doctest::Approx(0.75).epsilon(0.0134)); // 0.75 +- 0.01 absolute
    CHECK(std::abs(P - 0.75) < 0.01);

    // the variant that keeps the interaction phase on rr gives the same 0.75
    CHECK(noblockade::inactive_closed_form_interaction(r) ==
          doctest::Approx(0.7502).epsilon(1e-3));
}

TEST_CASE("inactive sites, four-photon: drive ratio 0.029, <P> = 0.9915") {
    const double r = noblockade::inactive_drive_ratio(4);
    CHECK(r == doctest::Approx(0.0294373).epsilon(1e-5));

    PulseParams p = rb_pulse();
    p.drive_ratio = r;
    const double P = noblockade::run_inactive(p);
    CHECK(P == doctest::Approx(noblockade::inactive_closed_form(r)).epsilon(1e-8));
    // evaluating the return-probability expressions exactly gives 0.9915; the
    // small-r approximation 1 - (3/4)(pi r)^2 = 0.9936 rounds to the ~0.994
    // usually quoted for four-photon drive
    CHECK(P == doctest::Approx(0.99149).epsilon(1e-3));
    CHECK(1.0 - 0.75 * std::pow(M_PI * r, 2) == doctest::Approx(0.9936).epsilon(1e-3));
}

TEST_CASE("inactive sites: zero drive returns everything") {
    PulseParams p = rb_pulse();
    p.drive_ratio = 0.0;
    CHECK(noblockade::run_inactive(p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(noblockade::inactive_closed_form(0.0) == 1.0);
}

TEST_CASE("perturbation check: series eigenvalues, cubic convergence") {
    const auto rep1 =
        noblockade::perturbation_check(rb_pulse(), InteractionParams::vdw(3.0));
    CHECK(rep1.regime_ok);
    CHECK(rep1.ratio == doctest::Approx(0.1));
    CHECK(rep1.max_eigenvalue_dev < 2.0 * std::pow(0.1, 3));

    const auto rep2 =
        noblockade::perturbation_check(rb_pulse(), InteractionParams::vdw(1.5));
    const double drop = rep1.max_eigenvalue_dev / rep2.max_eigenvalue_dev;
    CHECK(drop > 5.0);
    CHECK(drop < 11.0);

    CHECK(rep1.overlap_dev < 3.0 * std::pow(0.1, 3));
    const double overlap_drop = rep1.overlap_dev / rep2.overlap_dev;
    CHECK(overlap_drop > 4.0);
    CHECK(overlap_drop < 12.0);
}

TEST_CASE("perturbation check: V = 0 degeneracy pattern is exact") {
    const auto rep =
        noblockade::perturbation_check(rb_pulse(), InteractionParams::vdw(0.0));
    const double w = 2.0 * M_PI * 30.0;
    CHECK(std::abs(rep.eigenvalues_exact[0] - (-2.0 * w)) < 1e-9 * w);
    CHECK(std::abs(rep.eigenvalues_exact[1] - 0.0) < 1e-9 * w);
    CHECK(std::abs(rep.eigenvalues_exact[2] - (-4.0 * w)) < 1e-9 * w);
    CHECK(rep.max_eigenvalue_dev < 1e-12);
}

TEST_CASE("perturbation check flags the regime violation") {
    CHECK_FALSE(noblockade::perturbation_check(rb_pulse(),
                                               InteractionParams::vdw(9.0))
                    .regime_ok);
}

TEST_CASE("parameter validation") {
    PulseParams p = rb_pulse();
    p.drive_ratio = 1.5;
    CHECK_THROWS_AS(noblockade::run_gate(p, InteractionParams::vdw(3.0)), ParamError);

    PulseParams zero = rb_pulse();
    zero.omega1_mhz = zero.omega2_mhz = 0.0;
    CHECK_THROWS_AS(noblockade::run_gate(zero, InteractionParams::vdw(3.0)), ParamError);

    PulseParams marginal;
    marginal.omega1_mhz = marginal.omega2_mhz = 8000.0;
    marginal.delta_mhz = 40000.0;
    const auto g = noblockade::run_gate(marginal, InteractionParams::vdw(0.0));
    REQUIRE(!g.warnings.empty());
}
