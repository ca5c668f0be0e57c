#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zf/conditions.hpp"
#include "zf/exact.hpp"
#include "zf/model.hpp"
#include "zf/rng.hpp"

namespace zf {

// Systematic scan over variables 0..n-1: time t updates variable t mod n.
// Times run over the window [-T+1, 0].
struct ScanSchedule {
    int n = 0;

    int var_at(long long t) const { return static_cast<int>(((t % n) + n) % n); }
    long long pred(int u, long long t) const {
        long long d = ((t - u) % n + n) % n;
        return t - d;
    }
    std::vector<long long> timestamps(const std::vector<int>& vars, long long t) const {
        std::vector<long long> ts;
        ts.reserve(vars.size());
        for (int v : vars) ts.push_back(pred(v, t));
        return ts;
    }
};

// Constraints lifted to the projected alphabet: a constraint is unsatisfied
// under a full bucket assignment iff the restriction matches one of its
// forbidden bucket patterns. Atomized constraints sharing a variable tuple
// are regrouped so a hyperedge behaves as one constraint again.
struct ProjectedCsp {
    struct Group {
        std::vector<int> vars;
        std::vector<std::vector<int>> patterns;  // forbidden bucket rows
    };
    std::vector<Group> groups;
    int var_count = 0;

    static ProjectedCsp from_atomic(const AtomicCsp& csp, const ProjectionScheme& proj,
                                    bool group_by_support = true);

    bool group_unsatisfied_by(const Group& g, const std::vector<int>& full_buckets) const;
    // r values may be kBot; a pattern is excluded only by a committed non-bot symbol
    bool group_satisfied_by_record(const Group& g, const std::vector<int>& r_at_ts) const;
    std::vector<std::vector<int>> adjacency() const;  // groups sharing a variable
};

inline constexpr int kBot = -1;

struct BadCluster {
    std::vector<int> groups;       // group indices, includes c_star when nonempty
    std::vector<int> tau;          // bucket per variable of the cluster, -1 elsewhere
    bool empty() const { return groups.empty(); }
};

// Maximal connected set of unsatisfied constraints around c_star under a full
// projected assignment; empty when c_star itself is satisfied.
BadCluster bad_cluster(const std::vector<int>& projected, const ProjectedCsp& csp, int c_star);

// Heat-bath dynamics targeting a fixed projected measure psi.
struct HeatBathDynamics {
    ComplexMeasure psi;
    ScanSchedule sched;

    // conditional row of variable var(t) given the rest of sigma; throws a
    // domain_error naming (v, class) when the denominator vanishes on a class
    // that carries psi mass
    std::vector<CD> kernel_row(const std::vector<int>& sigma, long long t) const;
    void step(ComplexMeasure& mu, long long t) const;
};

HeatBathDynamics make_dynamics(const AtomicCsp& csp, const ProjectionScheme& proj, CD lam,
                               std::size_t budget = kDefaultEnumBudget);

// mu after `sweeps` full scans (n steps each), ending at time 0
ComplexMeasure propagate(const ComplexMeasure& initial, const HeatBathDynamics& dyn, int sweeps);

ComplexMeasure point_mass(const MixedRadix& space, const std::vector<int>& sigma);

// One decomposed step: the measure evolves exactly as under the heat-bath
// kernel; the oblivious branch for the updated variable is returned, and the
// recomposition b + b_bot * adaptive == row is asserted per reachable row.
struct ObliviousRecord {
    int var = 0;
    std::vector<CD> b;
    CD b_bot;
    double max_recomposition_error = 0;
};
ObliviousRecord decomposed_step(ComplexMeasure& mu, const HeatBathDynamics& dyn,
                                const DecompositionScheme& scheme, long long t);

// A sampled trajectory of the decomposed dynamics over [-T+1, 0]; sampling is
// by |measure| with the exact complex weight carried alongside (diagnostic).
struct DecomposedTrace {
    long long T = 0;
    std::vector<int> r;  // index by t + T - 1; bucket or kBot
    std::vector<int> o;  // committed update values
    std::vector<int> sigma_init, sigma_final;
    CD weight{1, 0};
    double abs_weight = 1;
};
DecomposedTrace simulate_decomposed_run(const HeatBathDynamics& dyn,
                                        const DecompositionScheme& scheme, long long T,
                                        CounterRng& rng);

// --- witness structures -------------------------------------------------------

// Node of the witness graph: constraint c at update time t with var(t) in
// vbl(c); its timestamp set is TS(vbl(c), t).
struct WitnessNode {
    int group = 0;       // index into csp.groups, or -2 for the extra constraint
    long long t_max = 0; // newest timestamp of the node

    friend bool operator<(const WitnessNode& a, const WitnessNode& b) {
        return std::tie(a.group, a.t_max) < std::tie(b.group, b.t_max);
    }
    friend bool operator==(const WitnessNode& a, const WitnessNode& b) {
        return a.group == b.group && a.t_max == b.t_max;
    }
};

struct WitnessGraph {
    const ProjectedCsp* csp = nullptr;
    ScanSchedule sched;
    long long T = 0;  // window [-T+1, 0]
    int c_star = 0;   // group index of the distinguished constraint

    std::vector<long long> node_ts(const WitnessNode& x) const;
    bool in_window(const WitnessNode& x) const;
    WitnessNode root() const;  // (TS(vbl(c_star), 0), c_star)
    std::vector<WitnessNode> neighbors(const WitnessNode& x) const;
    std::vector<WitnessNode> all_nodes() const;
    int degree_bound() const;  // 2 delta k^2 - 2 for the grouped csp
};

struct BadComponent {
    std::vector<WitnessNode> nodes;  // contains the root when nonempty
    std::set<long long> timestamps;
    bool empty() const { return nodes.empty(); }
};

// Connected component of record-unsatisfied witness nodes around the root.
BadComponent bad_component(const DecomposedTrace& trace, const WitnessGraph& wg);

// Deterministic reconstruction of the resulting bad cluster from the bad
// component and the committed values on its timestamps.
BadCluster reconstruct_bad_cluster(const BadComponent& comp, const DecomposedTrace& trace,
                                   const WitnessGraph& wg);

// --- projection lifting ---------------------------------------------------------

// One (S, tau) event of the lifting partition, with its conditional verdicts.
struct LiftingEventCheck {
    std::vector<int> cluster_groups;  // empty = the "c_star satisfied" event
    std::vector<int> tau;             // buckets on vbl(cluster), cluster order
    CD mass{0, 0};                    // mu(S^bad = S and tau) = psi(...)
    CD conditional{0, 0};             // mu(c_star violated | event)
    bool zero_mass = false;
    bool zero_implication_ok = true;  // mass 0 forces violation mass 0
    bool real_in_unit = true;         // conditional real and in [0,1] to 1e-12
};

struct LiftingReport {
    std::vector<LiftingEventCheck> events;
    double sum_abs_psi = 0;   // over events with |S| >= 1
    double abs_marginal = 0;  // |mu(c_star violated)|
    bool triangle_ok = false;
    bool all_ok = false;
};

// Enumerates the lifting partition of the projected space by (bad cluster,
// assignment on it) for the measure of the instance without constraint group
// c_star, and checks every event's conditional plus the triangle bound.
LiftingReport projection_lifting_report(const AtomicCsp& csp, const ProjectionScheme& proj,
                                        CD lam, int c_star_group = -1,
                                        std::size_t budget = kDefaultEnumBudget);

// Single-event view of the same verification.
LiftingEventCheck verify_conditional_interval(const AtomicCsp& csp, const ProjectionScheme& proj,
                                              CD lam, const std::vector<int>& cluster_groups,
                                              const std::vector<int>& tau, int c_star_group = -1,
                                              std::size_t budget = kDefaultEnumBudget);

// --- 2-trees -------------------------------------------------------------------

struct SimpleGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;

    void add_edge(int u, int v);
    int max_degree() const;
    std::vector<int> component_of(int root) const;
};

// Greedy maximal 2-tree of the induced subgraph on `component`, rooted at
// `root`: repeatedly take the unused vertex closest to the tree (ties by
// vertex order) and drop its closed neighborhood.
std::vector<int> construct_2tree(const SimpleGraph& g, const std::vector<int>& component, int root);

// Exact count of 2-trees of size j containing root: independent in g,
// connected in the square graph.
long long count_2trees(const SimpleGraph& g, int root, int j);

}  // namespace zf
