#include "rydlat/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace rydlat::cluster {

namespace {

constexpr int kMaxQubits = 16;

void check_geometry(const Geometry& g) {
    if (g.rows < 1 || g.cols < 1 || g.sites() < 2)
        throw ParamError("geometry must have at least 2 sites");
    if (!g.is_1d() && (g.rows < 2 || g.cols < 2))
        throw ParamError("degenerate 2D geometry");
}

// four-round pattern on a line of n sites, mapped through `site`
std::vector<std::vector<Pair>> line_rounds(int n,
                                           const std::function<int(int)>& site) {
    std::vector<std::vector<Pair>> rounds(4);
    for (int a = 1; a + 1 <= n; a += 4)
        rounds[0].push_back({site(a), site(a + 1)});
    for (int a = 3; a + 1 <= n; a += 4)
        rounds[1].push_back({site(a), site(a + 1)});
    for (int a = 2; a + 1 <= n; a += 4)
        rounds[2].push_back({site(a), site(a + 1)});
    for (int a = 4; a + 1 <= n; a += 4)
        rounds[3].push_back({site(a), site(a + 1)});
    return rounds;
}

} // namespace

std::vector<Pair> edge_set(const Geometry& g) {
    check_geometry(g);
    std::vector<Pair> edges;
    auto idx = [&](int r, int c) { return r * g.cols + c + 1; };
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) {
            if (c + 1 < g.cols)
                edges.push_back({idx(r, c), idx(r, c + 1)});
            if (r + 1 < g.rows)
                edges.push_back({idx(r, c), idx(r + 1, c)});
        }
    return edges;
}

Schedule make_schedule(const Geometry& g) {
    check_geometry(g);
    Schedule s;
    s.geometry = g;

    std::vector<std::vector<Pair>> row_rounds(4), col_rounds(4);
    for (int r = 0; r < g.rows; ++r) {
        auto rr = line_rounds(g.cols,
                              [&](int c) { return r * g.cols + c; });
        for (int k = 0; k < 4; ++k)
            row_rounds[k].insert(row_rounds[k].end(), rr[k].begin(), rr[k].end());
    }
    for (int c = 1; c <= g.cols; ++c) {
        auto cr = line_rounds(g.rows,
                              [&](int r) { return (r - 1) * g.cols + c; });
        for (int k = 0; k < 4; ++k)
            col_rounds[k].insert(col_rounds[k].end(), cr[k].begin(), cr[k].end());
    }
    for (auto& round : row_rounds)
        if (!round.empty())
            s.rounds.push_back(std::move(round));
    for (auto& round : col_rounds)
        if (!round.empty())
            s.rounds.push_back(std::move(round));
    validate_schedule(s);
    return s;
}

void validate_schedule(const Schedule& s) {
    check_geometry(s.geometry);
    const int n = s.geometry.sites();
    std::map<Pair, int> seen;
    for (const auto& round : s.rounds) {
        std::vector<int> used;
        for (const auto& [a, b] : round) {
            if (a < 1 || b < 1 || a > n || b > n || a == b)
                throw ParamError("schedule pair out of range");
            used.push_back(a);
            used.push_back(b);
            Pair key{std::min(a, b), std::max(a, b)};
            ++seen[key];
        }
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) != used.end())
            throw ParamError("schedule round has overlapping pairs");
        // every-other-pair rule: along a row or column, consecutive pairs must
        // leave at least two untouched sites between them
        auto line_of = [&](const Pair& p) {
            const int cols = s.geometry.cols;
            const int ra = (p.first - 1) / cols, rb = (p.second - 1) / cols;
            const int ca = (p.first - 1) % cols, cb = (p.second - 1) % cols;
            if (ra == rb)
                return std::pair<int, int>{0, ra}; // horizontal pair in row ra
            if (ca == cb)
                return std::pair<int, int>{1, ca}; // vertical pair in col ca
            throw ParamError("schedule pair is not nearest-neighbor");
        };
        std::map<std::pair<int, int>, std::vector<Pair>> lines;
        for (const auto& p : round)
            lines[line_of(p)].push_back(p);
        for (auto& [line, pairs] : lines) {
            std::sort(pairs.begin(), pairs.end());
            for (size_t i = 1; i < pairs.size(); ++i) {
                const int cols = s.geometry.cols;
                auto coord = [&](int site) {
                    return line.first == 0 ? (site - 1) % cols
                                           : (site - 1) / cols;
                };
                const int gap = coord(pairs[i].first) - coord(pairs[i - 1].second) - 1;
                if (gap < 2)
                    throw ParamError("schedule violates the every-other-pair rule");
            }
        }
    }
    const auto edges = edge_set(s.geometry);
    if (seen.size() != edges.size())
        throw ParamError("schedule does not cover the edge set exactly");
    for (const auto& e : edges) {
        const auto it = seen.find(e);
        if (it == seen.end() || it->second != 1)
            throw ParamError("schedule misses or repeats an edge");
    }
}

QubitState QubitState::plus_state(int n) {
    if (n < 1 || n > kMaxQubits)
        throw ParamError("qubit count must be in [1, 16]");
    QubitState st;
    st.n = n;
    st.amplitudes = VectorXcd::Constant(1L << n, std::pow(2.0, -0.5 * n));
    st.frame.assign(n, 0);
    return st;
}

Gate4 ideal_cz() {
    Gate4 g = Gate4::Identity();
    g(3, 3) = -1.0;
    return g;
}

Gate4 realized_from(const noblockade::GateOutcome& g) {
    const auto d = g.realized_diagonal();
    Gate4 m = Gate4::Zero();
    for (int k = 0; k < 4; ++k)
        m(k, k) = d[k];
    return m;
}

namespace {

bool is_zzcz_pattern(const Gate4& g) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(g(i, j)) > 1e-9)
                return false;
    return g(0, 0).real() > 0.0 && g(1, 1).real() < 0.0 &&
           g(2, 2).real() < 0.0 && g(3, 3).real() < 0.0;
}

} // namespace

void apply_gate(QubitState& state, const Pair& pair, const Gate4& gate) {
    const int n = state.n;
    if (pair.first < 1 || pair.second < 1 || pair.first > n || pair.second > n ||
        pair.first == pair.second)
        throw ParamError("apply_gate: pair out of range");
    const long bit_a = 1L << (pair.first - 1);
    const long bit_b = 1L << (pair.second - 1);
    const long dim = state.amplitudes.size();

    for (long i = 0; i < dim; ++i) {
        if (i & (bit_a | bit_b))
            continue;
        const long idx[4] = {i, i | bit_b, i | bit_a, i | bit_a | bit_b};
        Eigen::Vector4cd v;
        for (int k = 0; k < 4; ++k)
            v[k] = state.amplitudes[idx[k]];
        v = gate * v;
        for (int k = 0; k < 4; ++k)
            state.amplitudes[idx[k]] = v[k];
    }
    if (is_zzcz_pattern(gate)) {
        state.frame[pair.first - 1] ^= 1;
        state.frame[pair.second - 1] ^= 1;
    }
}

std::vector<double> stabilizer_expectations(const QubitState& state,
                                            const Geometry& g) {
    check_geometry(g);
    if (g.sites() != state.n)
        throw ParamError("stabilizer_expectations: geometry does not match state");
    const double norm2 = state.amplitudes.squaredNorm();
    if (norm2 <= 0.0)
        throw ParamError("stabilizer_expectations: zero state");

    std::vector<std::vector<int>> nbrs(state.n);
    for (const auto& [a, b] : edge_set(g)) {
        nbrs[a - 1].push_back(b - 1);
        nbrs[b - 1].push_back(a - 1);
    }

    std::vector<double> out(state.n, 0.0);
    const long dim = state.amplitudes.size();
    for (int a = 0; a < state.n; ++a) {
        long zmask = 0;
        for (int b : nbrs[a])
            zmask |= 1L << b;
        const long xmask = 1L << a;
        Complex acc = 0.0;
        for (long i = 0; i < dim; ++i) {
            const double sign = __builtin_popcountll((i ^ xmask) & zmask) % 2 ? -1.0 : 1.0;
            acc += std::conj(state.amplitudes[i]) * sign *
                   state.amplitudes[i ^ xmask];
        }
        out[a] = acc.real() / norm2;
    }
    return out;
}

ProtocolResult run_protocol(const Geometry& g, const Gate4& gate) {
    check_geometry(g);
    if (g.sites() > kMaxQubits)
        throw ParamError("run_protocol: at most 16 qubits");
    const Schedule sched = make_schedule(g);

    auto run = [&](const Gate4& u, bool apply_frames) {
        QubitState st = QubitState::plus_state(g.sites());
        for (const auto& round : sched.rounds)
            for (const auto& p : round)
                apply_gate(st, p, u);
        if (apply_frames) {
            for (int q = 0; q < st.n; ++q) {
                if (!st.frame[q])
                    continue;
                const long bit = 1L << q;
                for (long i = 0; i < st.amplitudes.size(); ++i)
                    if (i & bit)
                        st.amplitudes[i] = -st.amplitudes[i];
            }
        }
        return st;
    };

    ProtocolResult res;
    res.state = run(gate, true);
    const QubitState ideal = run(ideal_cz(), true);
    res.success_probability = res.state.amplitudes.squaredNorm();
    res.fidelity_to_ideal =
        std::norm(ideal.amplitudes.dot(res.state.amplitudes));
    res.stabilizers = stabilizer_expectations(res.state, g);
    return res;
}

} // namespace rydlat::cluster
