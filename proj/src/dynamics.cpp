#include "zf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>

namespace zf {

ProjectedCsp ProjectedCsp::from_atomic(const AtomicCsp& csp, const ProjectionScheme& proj,
                                       bool group_by_support) {
    ProjectedCsp out;
    out.var_count = csp.var_count();
    std::map<std::vector<int>, int> index_of;
    for (const auto& c : csp.constraints) {
        std::vector<int> key = c.vars;
        if (!group_by_support) {
            key.push_back(static_cast<int>(out.groups.size()));  // unique key: no grouping
        }
        auto it = index_of.find(key);
        int gi;
        if (it == index_of.end()) {
            gi = static_cast<int>(out.groups.size());
            index_of[key] = gi;
            Group g;
            g.vars = c.vars;
            out.groups.push_back(std::move(g));
        } else {
            gi = it->second;
        }
        std::vector<int> pattern(c.vars.size());
        for (size_t i = 0; i < c.vars.size(); ++i)
            pattern[i] = proj.bucket_of[c.vars[i]][c.forbidden[i]];
        auto& pats = out.groups[gi].patterns;
        if (std::find(pats.begin(), pats.end(), pattern) == pats.end())
            pats.push_back(std::move(pattern));
    }
    return out;
}

bool ProjectedCsp::group_unsatisfied_by(const Group& g, const std::vector<int>& full) const {
    for (const auto& p : g.patterns) {
        bool match = true;
        for (size_t i = 0; i < g.vars.size(); ++i)
            if (full[g.vars[i]] != p[i]) {
                match = false;
                break;
            }
        if (match) return true;
    }
    return false;
}

bool ProjectedCsp::group_satisfied_by_record(const Group& g, const std::vector<int>& r) const {
    // satisfied iff every forbidden pattern is excluded by some committed symbol
    for (const auto& p : g.patterns) {
        bool excluded = false;
        for (size_t i = 0; i < g.vars.size(); ++i) {
            if (r[i] != kBot && r[i] != p[i]) {
                excluded = true;
                break;
            }
        }
        if (!excluded) return false;
    }
    return true;
}

std::vector<std::vector<int>> ProjectedCsp::adjacency() const {
    int m = static_cast<int>(groups.size());
    std::vector<std::vector<int>> var_groups(var_count);
    for (int g = 0; g < m; ++g)
        for (int v : groups[g].vars) var_groups[v].push_back(g);
    std::vector<std::set<int>> adj(m);
    for (int v = 0; v < var_count; ++v)
        for (int a : var_groups[v])
            for (int b : var_groups[v])
                if (a != b) adj[a].insert(b);
    std::vector<std::vector<int>> out(m);
    for (int g = 0; g < m; ++g) out[g] = {adj[g].begin(), adj[g].end()};
    return out;
}

BadCluster bad_cluster(const std::vector<int>& projected, const ProjectedCsp& csp, int c_star) {
    BadCluster out;
    out.tau.assign(projected.size(), -1);
    if (!csp.group_unsatisfied_by(csp.groups[c_star], projected)) return out;
    auto adj = csp.adjacency();
    std::vector<char> bad(csp.groups.size(), 0);
    for (size_t g = 0; g < csp.groups.size(); ++g)
        bad[g] = csp.group_unsatisfied_by(csp.groups[g], projected);
    std::vector<char> seen(csp.groups.size(), 0);
    std::queue<int> q;
    q.push(c_star);
    seen[c_star] = 1;
    while (!q.empty()) {
        int g = q.front();
        q.pop();
        out.groups.push_back(g);
        for (int h : adj[g])
            if (bad[h] && !seen[h]) {
                seen[h] = 1;
                q.push(h);
            }
    }
    std::sort(out.groups.begin(), out.groups.end());
    for (int g : out.groups)
        for (int v : csp.groups[g].vars) out.tau[v] = projected[v];
    return out;
}

std::vector<CD> HeatBathDynamics::kernel_row(const std::vector<int>& sigma, long long t) const {
    int v = sched.var_at(t);
    int bc = psi.space.radix[v];
    std::size_t stride = psi.space.stride[v];
    std::size_t base = psi.space.index(sigma) - sigma[v] * stride;
    CD denom = 0;
    double scale = 0;
    for (int y = 0; y < bc; ++y) {
        CD w = psi.w[base + y * stride];
        denom += w;
        scale += std::abs(w);
    }
    if (std::abs(denom) <= 1e-14 * std::max(scale, 1e-300))
        throw std::domain_error("heat-bath conditional undefined at variable " + std::to_string(v));
    std::vector<CD> row(bc);
    for (int y = 0; y < bc; ++y) row[y] = psi.w[base + y * stride] / denom;
    return row;
}

void HeatBathDynamics::step(ComplexMeasure& mu, long long t) const {
    int v = sched.var_at(t);
    int bc = psi.space.radix[v];
    std::size_t stride = psi.space.stride[v];
    std::size_t total = psi.space.total;
    // a scan step replaces the v-marginal of each rest-class by the target
    // conditional; iterate classes via indices whose v digit is zero
    for (std::size_t idx = 0; idx < total; ++idx) {
        if ((idx / stride) % bc != 0) continue;
        CD mass = 0;
        double mass_scale = 0;
        CD denom = 0;
        double psi_scale = 0;
        for (int y = 0; y < bc; ++y) {
            mass += mu.w[idx + y * stride];
            mass_scale += std::abs(mu.w[idx + y * stride]);
            denom += psi.w[idx + y * stride];
            psi_scale += std::abs(psi.w[idx + y * stride]);
        }
        if (mass_scale == 0) continue;
        if (std::abs(denom) <= 1e-14 * std::max(psi_scale, 1e-300)) {
            if (std::abs(mass) <= 1e-305) {
                for (int y = 0; y < bc; ++y) mu.w[idx + y * stride] = 0;
                continue;
            }
            std::vector<int> cls;
            psi.space.decode(idx, cls);
            std::string desc = "(";
            for (size_t i = 0; i < cls.size(); ++i)
                desc += (static_cast<int>(i) == v ? std::string("*") : std::to_string(cls[i])) +
                        (i + 1 < cls.size() ? "," : ")");
            throw std::domain_error("heat-bath conditional undefined at variable " +
                                    std::to_string(v) + ", pinning " + desc);
        }
        for (int y = 0; y < bc; ++y) mu.w[idx + y * stride] = mass * psi.w[idx + y * stride] / denom;
    }
}

HeatBathDynamics make_dynamics(const AtomicCsp& csp, const ProjectionScheme& proj, CD lam,
                               std::size_t budget) {
    HeatBathDynamics dyn;
    dyn.psi = projected_measure(csp, proj, lam, budget);
    dyn.sched.n = csp.var_count();
    return dyn;
}

ComplexMeasure point_mass(const MixedRadix& space, const std::vector<int>& sigma) {
    ComplexMeasure mu;
    mu.space = space;
    mu.w.assign(space.total, CD(0));
    mu.w[space.index(sigma)] = 1;
    return mu;
}

ComplexMeasure propagate(const ComplexMeasure& initial, const HeatBathDynamics& dyn, int sweeps) {
    ComplexMeasure mu = initial;
    long long n = dyn.sched.n;
    long long T = n * sweeps;
    for (long long t = -T + 1; t <= 0; ++t) dyn.step(mu, t);
    return mu;
}

ObliviousRecord decomposed_step(ComplexMeasure& mu, const HeatBathDynamics& dyn,
                                const DecompositionScheme& scheme, long long t) {
    int v = dyn.sched.var_at(t);
    int bc = dyn.psi.space.radix[v];
    ObliviousRecord rec;
    rec.var = v;
    rec.b.resize(bc);
    for (int y = 0; y < bc; ++y) rec.b[y] = scheme.b_cd(v, y);
    rec.b_bot = scheme.bot_cd(v);

    // verify the split against every reachable heat-bath row before stepping
    std::size_t stride = dyn.psi.space.stride[v];
    for (std::size_t idx = 0; idx < dyn.psi.space.total; ++idx) {
        if ((idx / stride) % bc != 0) continue;
        double mass_scale = 0;
        for (int y = 0; y < bc; ++y) mass_scale += std::abs(mu.w[idx + y * stride]);
        if (mass_scale == 0) continue;
        std::vector<int> sigma;
        dyn.psi.space.decode(idx, sigma);
        std::vector<CD> row = dyn.kernel_row(sigma, t);
        for (int y = 0; y < bc; ++y) {
            CD recomposed;
            if (std::abs(rec.b_bot) == 0) {
                recomposed = rec.b[y];  // 0 * adaptive = 0 by convention
            } else {
                CD adaptive = (row[y] - rec.b[y]) / rec.b_bot;
                recomposed = rec.b[y] + rec.b_bot * adaptive;
            }
            rec.max_recomposition_error =
                std::max(rec.max_recomposition_error, std::abs(recomposed - row[y]));
        }
    }
    dyn.step(mu, t);
    return rec;
}

namespace {

// sample index from weights by |w|; returns index and records the sign/phase
int sample_by_abs(const std::vector<CD>& w, CounterRng& rng, CD& weight_factor, double& abs_factor) {
    double total = 0;
    for (CD x : w) total += std::abs(x);
    if (total <= 0) throw std::domain_error("simulate: branch has no support");
    double u = rng.next_double() * total;
    int pick = 0;
    double acc = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        acc += std::abs(w[i]);
        if (u <= acc || i + 1 == w.size()) {
            pick = static_cast<int>(i);
            break;
        }
    }
    double p = std::abs(w[pick]) / total;
    weight_factor = w[pick] / p;
    abs_factor = p;
    return pick;
}

}  // namespace

DecomposedTrace simulate_decomposed_run(const HeatBathDynamics& dyn,
                                        const DecompositionScheme& scheme, long long T,
                                        CounterRng& rng) {
    DecomposedTrace tr;
    tr.T = T;

    // initial state from |psi|
    std::vector<CD> init_w = dyn.psi.w;
    CD wf;
    double af;
    std::size_t init_idx = sample_by_abs(init_w, rng, wf, af);
    tr.weight *= wf;
    tr.abs_weight *= af;
    std::vector<int> sigma;
    dyn.psi.space.decode(init_idx, sigma);
    tr.sigma_init = sigma;

    tr.r.assign(T, kBot);
    tr.o.assign(T, 0);
    for (long long t = -T + 1; t <= 0; ++t) {
        int v = dyn.sched.var_at(t);
        int bc = dyn.psi.space.radix[v];
        // oblivious branch over buckets + bot
        std::vector<CD> branch(bc + 1);
        for (int y = 0; y < bc; ++y) branch[y] = scheme.b_cd(v, y);
        branch[bc] = scheme.bot_cd(v);
        int pick = sample_by_abs(branch, rng, wf, af);
        tr.weight *= wf;
        tr.abs_weight *= af;
        std::size_t pos = t + T - 1;
        if (pick < bc) {
            tr.r[pos] = pick;
            tr.o[pos] = pick;
            sigma[v] = pick;
        } else {
            tr.r[pos] = kBot;
            std::vector<CD> row = dyn.kernel_row(sigma, t);
            CD bot = scheme.bot_cd(v);
            std::vector<CD> adaptive(bc);
            for (int y = 0; y < bc; ++y) adaptive[y] = (row[y] - scheme.b_cd(v, y)) / bot;
            int oy = sample_by_abs(adaptive, rng, wf, af);
            tr.weight *= wf;
            tr.abs_weight *= af;
            tr.o[pos] = oy;
            sigma[v] = oy;
        }
    }
    tr.sigma_final = sigma;
    return tr;
}

// --- witness structures --------------------------------------------------------

std::vector<long long> WitnessGraph::node_ts(const WitnessNode& x) const {
    const std::vector<int>& vars =
        (x.group == -2) ? csp->groups[c_star].vars : csp->groups[x.group].vars;
    return sched.timestamps(vars, x.t_max);
}

bool WitnessGraph::in_window(const WitnessNode& x) const {
    auto ts = node_ts(x);
    for (long long t : ts)
        if (t < -T + 1 || t > 0) return false;
    return true;
}

WitnessNode WitnessGraph::root() const {
    const auto& vars = csp->groups[c_star].vars;
    long long tmax = -T;
    for (int v : vars) tmax = std::max(tmax, sched.pred(v, 0));
    return WitnessNode{-2, tmax};
}

std::vector<WitnessNode> WitnessGraph::all_nodes() const {
    // the distinguished constraint contributes only the single root node
    std::vector<WitnessNode> nodes;
    for (int g = 0; g < static_cast<int>(csp->groups.size()); ++g) {
        if (g == c_star) continue;
        for (long long t = -T + 1; t <= 0; ++t) {
            int v = sched.var_at(t);
            if (std::find(csp->groups[g].vars.begin(), csp->groups[g].vars.end(), v) ==
                csp->groups[g].vars.end())
                continue;
            WitnessNode x{g, t};
            if (in_window(x)) nodes.push_back(x);
        }
    }
    WitnessNode r = root();
    if (in_window(r)) nodes.push_back(r);
    return nodes;
}

std::vector<WitnessNode> WitnessGraph::neighbors(const WitnessNode& x) const {
    std::set<WitnessNode> out;
    auto ts = node_ts(x);
    std::set<long long> ts_set(ts.begin(), ts.end());
    for (long long s : ts) {
        int u = sched.var_at(s);
        for (int g = 0; g < static_cast<int>(csp->groups.size()); ++g) {
            if (g == c_star) continue;
            const auto& vars = csp->groups[g].vars;
            if (std::find(vars.begin(), vars.end(), u) == vars.end()) continue;
            // nodes (g, t') whose timestamp set contains s: t' in [s, s+n) and
            // t' must itself be an update time of a variable of g
            for (long long t2 = s; t2 < s + sched.n; ++t2) {
                if (t2 > 0) break;
                int w = sched.var_at(t2);
                if (std::find(vars.begin(), vars.end(), w) == vars.end()) continue;
                WitnessNode y{g, t2};
                if (y == x) continue;
                if (!in_window(y)) continue;
                out.insert(y);
            }
        }
        // the root node also neighbors anything sharing its timestamps
        WitnessNode r = root();
        if (!(r == x) && in_window(r)) {
            auto rts = node_ts(r);
            for (long long t : rts)
                if (ts_set.count(t)) {
                    out.insert(r);
                    break;
                }
        }
    }
    // drop nodes that merely coincide in (group,t) but share no timestamp
    std::vector<WitnessNode> res;
    for (const auto& y : out) {
        auto yts = node_ts(y);
        bool shares = false;
        for (long long t : yts)
            if (ts_set.count(t)) shares = true;
        if (shares) res.push_back(y);
    }
    return res;
}

int WitnessGraph::degree_bound() const {
    int k = 0, delta = 0;
    std::vector<int> deg(csp->var_count, 0);
    for (const auto& g : csp->groups) {
        k = std::max<int>(k, g.vars.size());
        for (int v : g.vars) ++deg[v];
    }
    for (int d : deg) delta = std::max(delta, d);
    return 2 * delta * k * k - 2;
}

namespace {

bool node_unsatisfied_by_record(const WitnessGraph& wg, const WitnessNode& x,
                                const DecomposedTrace& trace) {
    const ProjectedCsp::Group& g =
        (x.group == -2) ? wg.csp->groups[wg.c_star] : wg.csp->groups[x.group];
    auto ts = wg.node_ts(x);
    std::vector<int> r(g.vars.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        long long t = ts[i];
        r[i] = trace.r[t + trace.T - 1];
    }
    return !wg.csp->group_satisfied_by_record(g, r);
}

}  // namespace

BadComponent bad_component(const DecomposedTrace& trace, const WitnessGraph& wg) {
    BadComponent comp;
    WitnessNode r = wg.root();
    if (!wg.in_window(r)) return comp;
    if (!node_unsatisfied_by_record(wg, r, trace)) return comp;
    std::set<WitnessNode> seen;
    std::queue<WitnessNode> q;
    q.push(r);
    seen.insert(r);
    while (!q.empty()) {
        WitnessNode x = q.front();
        q.pop();
        comp.nodes.push_back(x);
        for (long long t : wg.node_ts(x)) comp.timestamps.insert(t);
        for (const auto& y : wg.neighbors(x)) {
            if (seen.count(y)) continue;
            if (!node_unsatisfied_by_record(wg, y, trace)) continue;
            seen.insert(y);
            q.push(y);
        }
    }
    return comp;
}

BadCluster reconstruct_bad_cluster(const BadComponent& comp, const DecomposedTrace& trace,
                                   const WitnessGraph& wg) {
    BadCluster out;
    out.tau.assign(wg.csp->var_count, -1);
    if (comp.empty()) return out;

    auto o_at = [&](long long t) { return trace.o[t + trace.T - 1]; };
    auto group_unsat_by_o = [&](const ProjectedCsp::Group& g) {
        std::vector<int> vals(g.vars.size());
        for (size_t i = 0; i < g.vars.size(); ++i) vals[i] = o_at(wg.sched.pred(g.vars[i], 0));
        for (const auto& p : g.patterns)
            if (p == vals) return true;
        return false;
    };
    auto node_in_comp = [&](const WitnessNode& x) {
        return std::find(comp.nodes.begin(), comp.nodes.end(), x) != comp.nodes.end();
    };

    // step 1: seed with c_star if its final-time node is in the component and
    // unsatisfied by the committed values
    WitnessNode rootnode = wg.root();
    if (!node_in_comp(rootnode)) return out;
    if (!group_unsat_by_o(wg.csp->groups[wg.c_star])) return out;
    std::set<int> B = {wg.c_star};

    // step 2: grow by constraints adjacent to B whose final-time node lies in
    // the component and is unsatisfied by the committed values
    bool changed = true;
    while (changed) {
        changed = false;
        for (int g = 0; g < static_cast<int>(wg.csp->groups.size()); ++g) {
            if (B.count(g)) continue;
            const auto& vars = wg.csp->groups[g].vars;
            bool touches = false;
            for (int v : vars) {
                for (int gb : B) {
                    const auto& bv = wg.csp->groups[gb].vars;
                    if (std::find(bv.begin(), bv.end(), v) != bv.end()) touches = true;
                }
            }
            if (!touches) continue;
            long long tmax = -trace.T;
            for (int v : vars) tmax = std::max(tmax, wg.sched.pred(v, 0));
            if (!node_in_comp(WitnessNode{g, tmax})) continue;
            if (!group_unsat_by_o(wg.csp->groups[g])) continue;
            B.insert(g);
            changed = true;
        }
    }
    out.groups = {B.begin(), B.end()};
    for (int g : out.groups)
        for (int v : wg.csp->groups[g].vars) out.tau[v] = o_at(wg.sched.pred(v, 0));
    return out;
}

LiftingReport projection_lifting_report(const AtomicCsp& csp, const ProjectionScheme& proj,
                                        CD lam, int c_star_group, std::size_t budget) {
    ProjectedCsp pcsp = ProjectedCsp::from_atomic(csp, proj);
    if (c_star_group < 0) c_star_group = static_cast<int>(pcsp.groups.size()) - 1;
    if (pcsp.groups.empty()) throw std::invalid_argument("lifting: no constraints");

    // the measure belongs to the instance without c_star's constraints
    AtomicCsp minus;
    minus.domains = csp.domains;
    for (const auto& con : csp.constraints)
        if (con.vars != pcsp.groups[c_star_group].vars) minus.constraints.push_back(con);

    std::size_t total = state_space_size(minus);
    if (total > budget) throw ResourceError("lifting: state space exceeds budget");

    struct Acc {
        CD mass{0, 0};
        CD viol{0, 0};
    };
    std::map<std::pair<std::vector<int>, std::vector<int>>, Acc> events;
    MixedRadix space(minus.domains);
    CD z = 0, total_viol = 0;
    std::vector<int> a(minus.var_count(), 0), buckets(minus.var_count());
    const auto& star_vars = pcsp.groups[c_star_group].vars;
    const auto& star_group = pcsp.groups[c_star_group];
    for (std::size_t idx = 0; idx < space.total; ++idx) {
        if (satisfies_all(minus, a)) {
            int specials = 0;
            for (int v = 0; v < minus.var_count(); ++v) {
                buckets[v] = proj.bucket_of[v][a[v]];
                if (proj.special[v] >= 0 && buckets[v] == proj.special[v]) ++specials;
            }
            CD w = std::pow(lam, specials);
            BadCluster cl = bad_cluster(buckets, pcsp, c_star_group);
            std::vector<int> tau;
            for (int gi : cl.groups)
                for (int v : pcsp.groups[gi].vars) tau.push_back(buckets[v]);
            auto& acc = events[{cl.groups, tau}];
            acc.mass += w;
            z += w;
            // c_star violated at the original level: a matches a forbidden row
            bool violated = false;
            for (const auto& con : csp.constraints) {
                if (con.vars != star_vars) continue;
                bool hit = true;
                for (size_t i = 0; i < con.vars.size(); ++i)
                    if (a[con.vars[i]] != con.forbidden[i]) hit = false;
                if (hit) violated = true;
            }
            if (violated) {
                acc.viol += w;
                total_viol += w;
            }
        }
        for (int v = minus.var_count() - 1; v >= 0; --v) {
            if (++a[v] < minus.domains[v]) break;
            a[v] = 0;
        }
    }
    (void)star_group;
    if (std::abs(z) < 1e-300) throw std::domain_error("lifting: Z vanished");

    LiftingReport rep;
    rep.all_ok = true;
    for (auto& [key, acc] : events) {
        LiftingEventCheck ev;
        ev.cluster_groups = key.first;
        ev.tau = key.second;
        ev.mass = acc.mass / z;
        CD v = acc.viol / z;
        if (std::abs(ev.mass) <= 1e-12) {
            ev.zero_mass = true;
            ev.zero_implication_ok = std::abs(v) <= 1e-10;
            if (!ev.zero_implication_ok) rep.all_ok = false;
        } else {
            ev.conditional = v / ev.mass;
            ev.real_in_unit = std::abs(ev.conditional.imag()) <= 1e-12 &&
                              ev.conditional.real() >= -1e-12 &&
                              ev.conditional.real() <= 1 + 1e-12;
            if (!ev.real_in_unit) rep.all_ok = false;
        }
        if (!key.first.empty()) rep.sum_abs_psi += std::abs(ev.mass);
        rep.events.push_back(std::move(ev));
    }
    rep.abs_marginal = std::abs(total_viol / z);
    rep.triangle_ok = rep.abs_marginal <= rep.sum_abs_psi + 1e-12;
    if (!rep.triangle_ok) rep.all_ok = false;
    return rep;
}

LiftingEventCheck verify_conditional_interval(const AtomicCsp& csp, const ProjectionScheme& proj,
                                              CD lam, const std::vector<int>& cluster_groups,
                                              const std::vector<int>& tau, int c_star_group,
                                              std::size_t budget) {
    LiftingReport rep = projection_lifting_report(csp, proj, lam, c_star_group, budget);
    for (auto& ev : rep.events)
        if (ev.cluster_groups == cluster_groups && ev.tau == tau) return ev;
    // an event never realized has zero measure and vacuously passes
    LiftingEventCheck ev;
    ev.cluster_groups = cluster_groups;
    ev.tau = tau;
    ev.zero_mass = true;
    return ev;
}

// --- 2-trees --------------------------------------------------------------------

void SimpleGraph::add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
}

int SimpleGraph::max_degree() const {
    int d = 0;
    for (const auto& a : adj) d = std::max<int>(d, a.size());
    return d;
}

std::vector<int> SimpleGraph::component_of(int root) const {
    std::vector<char> seen(n, 0);
    std::vector<int> out;
    std::queue<int> q;
    q.push(root);
    seen[root] = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        out.push_back(v);
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                q.push(u);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> construct_2tree(const SimpleGraph& g, const std::vector<int>& component,
                                 int root) {
    if (std::find(component.begin(), component.end(), root) == component.end())
        throw std::invalid_argument("construct_2tree: root outside component");
    std::vector<char> in_comp(g.n, 0);
    for (int v : component) in_comp[v] = 1;

    std::set<int> tree = {root};
    std::set<int> unused(component.begin(), component.end());
    unused.erase(root);
    for (int u : g.adj[root])
        if (in_comp[u]) unused.erase(u);

    while (!unused.empty()) {
        // BFS distances from the current tree inside the induced subgraph
        std::vector<int> dist(g.n, -1);
        std::queue<int> q;
        for (int v : tree) {
            dist[v] = 0;
            q.push(v);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : g.adj[v]) {
                if (!in_comp[u] || dist[u] >= 0) continue;
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
        int pick = -1, best = -1;
        for (int v : unused) {
            if (dist[v] < 0) continue;
            if (best < 0 || dist[v] < best || (dist[v] == best && v < pick)) {
                best = dist[v];
                pick = v;
            }
        }
        if (pick < 0) break;  // disconnected remainder
        tree.insert(pick);
        unused.erase(pick);
        for (int u : g.adj[pick])
            if (in_comp[u]) unused.erase(u);
    }
    return {tree.begin(), tree.end()};
}

long long count_2trees(const SimpleGraph& g, int root, int j) {
    if (j < 2) throw std::invalid_argument("count_2trees: j >= 2 required");
    // exhaustive DFS over subsets of size j containing root, then the
    // independence and square-graph-connectivity checks; j stays small here
    long long count = 0;
    std::vector<int> chosen = {root};
    std::function<void(int)> rec = [&](int min_next) {
        if (static_cast<int>(chosen.size()) == j) {
            // verify: independent in g and connected in g^2
            for (size_t a = 0; a < chosen.size(); ++a)
                for (size_t b = a + 1; b < chosen.size(); ++b) {
                    int u = chosen[a], v = chosen[b];
                    if (std::find(g.adj[u].begin(), g.adj[u].end(), v) != g.adj[u].end()) return;
                }
            // connectivity in square graph restricted to chosen
            std::vector<char> in_set(g.n, 0);
            for (int v : chosen) in_set[v] = 1;
            std::vector<int> stack = {chosen[0]};
            std::vector<char> seen(g.n, 0);
            seen[chosen[0]] = 1;
            int reached = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                std::set<int> two_ball;
                for (int u : g.adj[v]) {
                    two_ball.insert(u);
                    for (int w : g.adj[u]) two_ball.insert(w);
                }
                for (int u : two_ball) {
                    if (u == v || !in_set[u] || seen[u]) continue;
                    seen[u] = 1;
                    ++reached;
                    stack.push_back(u);
                }
            }
            if (reached == j) ++count;
            return;
        }
        for (int v = min_next; v < g.n; ++v) {
            if (v == root) continue;
            chosen.push_back(v);
            rec(v + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return count;
}

}  // namespace zf
