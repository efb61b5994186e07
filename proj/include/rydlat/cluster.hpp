#ifndef RYDLAT_CLUSTER_HPP
#define RYDLAT_CLUSTER_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "rydlat/gate_noblockade.hpp"

namespace rydlat::cluster {

using numerics::Complex;
using numerics::VectorXcd;

/// 1D chain (rows = 1) or 2D grid, sites numbered 1..rows*cols row-major.
struct Geometry {
    int rows = 1;
    int cols = 2;

    static Geometry chain(int n) { return {1, n}; }
    static Geometry grid(int r, int c) { return {r, c}; }
    int sites() const { return rows * cols; }
    bool is_1d() const { return rows == 1 || cols == 1; }
};

using Pair = std::pair<int, int>; // 1-based site indices

struct Schedule {
    Geometry geometry;
    std::vector<std::vector<Pair>> rounds;
};

/// Four-round every-other-pair pattern for a chain; rows then columns for a
/// grid. Empty rounds are dropped; the union of rounds is exactly the
/// nearest-neighbor edge set, each edge once.
Schedule make_schedule(const Geometry& g);

/// Nearest-neighbor edges of the geometry, each once, first < second.
std::vector<Pair> edge_set(const Geometry& g);

/// Checks disjointness within rounds, the >= 2-site separation between pairs
/// on the same line, and the exact edge cover. Throws ParamError on violation.
void validate_schedule(const Schedule& s);

struct QubitState {
    int n = 0;
    VectorXcd amplitudes;
    std::vector<int> frame; // accumulated Z corrections per qubit, mod 2

    static QubitState plus_state(int n);
};

using Gate4 = Eigen::Matrix4cd;

Gate4 ideal_cz();

/// Diagonal map built from a simulated gate's per-branch overlaps
/// (d00, d01, d10, d11); leaked amplitude is dropped, so the map is
/// norm-decreasing.
Gate4 realized_from(const noblockade::GateOutcome& g);

/// Apply a two-qubit map to the pair (may be non-unitary; the norm is
/// tracked, not renormalized). When the map is diagonal with the
/// (+, -, -, -) sign pattern of (Z x Z) CZ, the pair's frame counters flip.
void apply_gate(QubitState& state, const Pair& pair, const Gate4& gate);

/// <K_a> = <X_a prod_nbr Z_b> for every site, relative to the state norm^2.
std::vector<double> stabilizer_expectations(const QubitState& state,
                                            const Geometry& g);

struct ProtocolResult {
    QubitState state;
    double fidelity_to_ideal = 0.0;   // |<ideal cluster|psi>|^2, leakage included
    double success_probability = 1.0; // final norm^2
    std::vector<double> stabilizers;
};

/// |+>^n, the scheduled rounds of two-qubit maps, accumulated frame
/// corrections, then stabilizers and fidelity against the ideal-CZ protocol.
ProtocolResult run_protocol(const Geometry& g, const Gate4& gate);

} // namespace rydlat::cluster

#endif
