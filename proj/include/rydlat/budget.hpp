#ifndef RYDLAT_BUDGET_HPP
#define RYDLAT_BUDGET_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rydlat/gate_blockade.hpp"

namespace rydlat::budget {

enum class Scheme { no_blockade, blockade };

/// Named error terms of one phase-gate configuration plus the Table totals.
/// The total follows the table's convention: it excludes eps_non_adiab,
/// eps_dif_pairs, p_se_intermediate and the inactive-site probability, which
/// are reported separately.
struct ErrorBudget {
    std::string preset;
    Scheme scheme = Scheme::no_blockade;
    int photon_order = 2;
    std::map<std::string, double> terms;
    double total = 0.0;
    double inactive_P = 1.0;
};

struct TimingBudget {
    std::vector<std::pair<std::string, double>> steps; // label, us
    double total_us = 0.0;
};

/// Rabi-variation error from the finite motional width a = (E_R/V0)^{1/4}/k.
/// No-blockade geometry: pi^2 (ka/4)^2 tan^2(k x_n/4 + pi/4) at k x_n = 5 pi/2.
/// Blockade geometry:    pi^2 (ka)^2 (1 - s)/(1 + s), s = sqrt((1+V0/4V1)/2).
/// Both quoted for two-photon excitation; other photon orders scale by
/// (photon_order/2)^2.
double omega_variation_error(Scheme scheme, int photon_order, double V0,
                             double V1 = 0.0);

/// Imperfect excitation of |rr>: (V_int/(Omega^2/Delta))^2 / 8.
double imperfect_excitation_error(double V_int, double two_photon_rabi);

/// Crosstalk between closest excited pairs:
/// (3 pi^2/16)(1/8 + 19 pi^2/256)(dV/V)(V/(Omega^2/Delta))^3.
double different_pairs_error(double V_int, double two_photon_rabi,
                             double delta_V_ratio);

std::pair<double, double> interaction_errors(
    const noblockade::PulseParams& p, const noblockade::InteractionParams& i);

/// Rydberg-decay errors; gamma in 1/s, frequencies as ordinary frequencies in
/// the same unit (the 2 pi conversions are internal).
/// No blockade: (2 pi gamma / V_int, pi gamma / (Omega^2/Delta)).
std::pair<double, double> decay_errors_no_blockade(double gamma_per_s,
                                                   double V_int_mhz,
                                                   double two_photon_rabi_mhz);
/// Blockade: 7 pi gamma / (4 Omega^2/Delta).
double decay_error_blockade(double gamma_per_s, double two_photon_rabi_khz);

/// Imperfect blockade selectivity: (Omega^2/Delta)^2 / (2 Delta_vec^2).
double imperfect_blockade_error(double two_photon_rabi_khz, double delta_vec_khz);

/// Non-adiabatic excitation-deexcitation error
/// (pi^2/4)(a/R)^2 - (pi^2/4)(a/R)^4 (V_int/omega)^2, clamped at >= 0.
/// Outside the derivation regime (V_int > omega) only the first term is
/// returned, as a lower bound. V_int and omega_trap in the same units.
double non_adiabatic_error(double a_over_R, double V_int, double omega_trap);

/// Magnetic-field dephasing (delta_omega T_PG)^2; delta_omega in 1/s, T in s.
double mf_fluctuation_error(double delta_omega_per_s, double T_pg_s);

/// Intermediate-state spontaneous emission pi gamma_p / Delta with
/// gamma_p = 1/tau_p (1/s) and Delta an ordinary frequency in Hz.
double intermediate_decay_probability(double gamma_p_per_s, double delta_hz);

std::pair<double, double> misc_errors(double delta_omega_per_s, double T_pg_s,
                                      double gamma_p_per_s, double delta_hz);

std::vector<std::string> preset_names();

/// Evaluate every applicable term for a named preset from its raw physical
/// parameters. Two quoted-only constants are stored rather than derived (the
/// blockade two-photon Rabi-variation 0.15 and the one-photon inactive-site
/// probability 0.87); their formula values are reported alongside under
/// *_formula keys.
ErrorBudget assemble_table(const std::string& preset);

/// Step-by-step generation times. dimension is 1 or 2.
TimingBudget timing(Scheme scheme, int dimension);

/// Text rendering of a budget in the layout of the error-summary table.
std::string format_table(const ErrorBudget& b);

} // namespace rydlat::budget

#endif
