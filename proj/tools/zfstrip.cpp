// zfstrip: exact partition polynomials, certified zero-free strips, complex
// scan dynamics, and the statistics experiments around them.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zf/acceptance.hpp"
#include "zf/conditions.hpp"
#include "zf/corpus.hpp"
#include "zf/dynamics.hpp"
#include "zf/exact.hpp"
#include "zf/interpolate.hpp"
#include "zf/model.hpp"
#include "zf/stats.hpp"
#include "zf/zerofree.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        f << text << "\n";
    }
}

json report_header(std::uint64_t seed, int precision_bits) {
    json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["precision_bits"] = precision_bits;
    return j;
}

zf::CD parse_complex(const std::string& s) {
    // "re" or "re,im"
    auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

zf::Rat parse_rational(const std::string& s) {
    if (s.find('/') != std::string::npos) return zf::Rat(s);
    mpq_t tmp;
    mpq_init(tmp);
    mpq_set_d(tmp, std::stod(s));
    zf::Rat r{mpq_class(tmp)};
    mpq_clear(tmp);
    return r;
}

struct InstanceArgs {
    std::string path;
    int B = 2;

    zf::Instance load() const { return zf::load_instance(path); }
    zf::ProjectionScheme projection_for(const zf::Instance& inst) const {
        if (inst.kind == zf::Instance::Kind::Hypergraph)
            return zf::make_coloring_projection(inst.q, B, inst.graph.n);
        std::vector<std::uint8_t> marked(inst.cnf.n, 1);
        return zf::make_cnf_projection(inst.cnf, marked);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zfstrip: partition-function zeros, complex dynamics, exact statistics"};
    app.require_subcommand(1);

    std::string out_path;
    std::uint64_t seed = 0;
    int precision_bits = 256;
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--seed", seed, "seed for stochastic commands");
    app.add_option("--precision-bits", precision_bits, "working precision for root finding");

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    std::string gen_kind = "disjoint-edges";
    int gen_k = 3, gen_m = 2, gen_n = 8, gen_q = 3, gen_delta = 2, gen_overlap = 1;
    gen->add_option("--kind", gen_kind,
                    "disjoint-edges|chain|hypertree|random-hypergraph|random-cnf|single-edge");
    gen->add_option("-k", gen_k);
    gen->add_option("-m", gen_m);
    gen->add_option("-n", gen_n);
    gen->add_option("-q", gen_q);
    gen->add_option("--max-delta", gen_delta);
    gen->add_option("--overlap", gen_overlap);

    // --- instance-based commands ---
    InstanceArgs inst_args;
    auto add_instance_opts = [&](CLI::App* cmd) {
        cmd->add_option("--instance", inst_args.path, "instance JSON")->required();
        cmd->add_option("-B", inst_args.B, "bucket count for the coloring projection");
    };

    auto* partition = app.add_subcommand("partition", "exact partition polynomial");
    add_instance_opts(partition);
    bool partition_brute_only = false;
    partition->add_flag("--brute-only", partition_brute_only);

    auto* roots_cmd = app.add_subcommand("roots", "certified roots of the partition polynomial");
    add_instance_opts(roots_cmd);

    auto* strip = app.add_subcommand("verify-strip", "zero-free strip verdict");
    add_instance_opts(strip);
    std::string strip_gamma = "auto";
    strip->add_option("--gamma", strip_gamma, "strip radius (rational or 'auto')");

    auto* selfred = app.add_subcommand("self-reduce", "self-reduction ratio chain");
    add_instance_opts(selfred);
    std::string sr_lambda = "1";
    selfred->add_option("--lambda", sr_lambda, "complex field re[,im]");

    auto* check = app.add_subcommand("check-conditions", "numeric condition checkers");
    std::string cond_name = "coloring";
    std::string params_path;
    check->add_option("--cond", cond_name, "coloring|cnf|chebyshev|clt|lclt");
    check->add_option("--params", params_path, "JSON parameter file")->required();

    auto* decomp = app.add_subcommand("decomp-bounds", "closed-form induction bounds");
    decomp->add_option("--params", params_path, "JSON parameter file")->required();
    std::string decomp_kind = "coloring";
    decomp->add_option("--kind", decomp_kind, "coloring|cnf");

    auto* glauber = app.add_subcommand("glauber", "complex scan dynamics diagnostics");
    add_instance_opts(glauber);
    std::string gl_lambda = "1";
    int gl_sweeps = 100;
    glauber->add_option("--lambda", gl_lambda);
    glauber->add_option("--sweeps", gl_sweeps);
    glauber->add_option("--report", out_path, "report path (same as --out)");

    auto* lifting = app.add_subcommand("lifting", "projection-lifting report");
    add_instance_opts(lifting);
    std::string lift_lambda = "1";
    lifting->add_option("--lambda", lift_lambda);

    auto* witness = app.add_subcommand("witness", "witness-graph degree audit");
    add_instance_opts(witness);
    int witness_sweeps = 3;
    witness->add_option("--sweeps", witness_sweeps);

    auto* twotrees = app.add_subcommand("two-trees", "2-tree counts and greedy size");
    int tt_n = 8, tt_j = 3;
    std::uint64_t tt_graphs = 20;
    twotrees->add_option("-n", tt_n);
    twotrees->add_option("-j", tt_j);
    twotrees->add_option("--graphs", tt_graphs);

    auto* fisher = app.add_subcommand("fisher", "Fisher series and truncated counting");
    add_instance_opts(fisher);
    int fisher_J = 6;
    fisher->add_option("--order", fisher_J);

    auto* clt_cmd = app.add_subcommand("clt", "CLT statistics over disjoint-edge families");
    auto* lclt_cmd = app.add_subcommand("lclt", "local CLT statistics");
    std::vector<int> family_ms = {16, 64, 256};
    int fam_k = 3, fam_q = 3;
    for (auto* cmd : {clt_cmd, lclt_cmd}) {
        cmd->add_option("-m", family_ms, "family sizes");
        cmd->add_option("-k", fam_k);
        cmd->add_option("-q", fam_q);
    }

    auto* cheb = app.add_subcommand("chebyshev", "tail bounds on exact laws");
    int cheb_k = 6, cheb_q = 1000;
    std::vector<int> cheb_ms = {10, 100};
    cheb->add_option("-k", cheb_k);
    cheb->add_option("-q", cheb_q);
    cheb->add_option("-m", cheb_ms);

    auto* infl = app.add_subcommand("influence", "exact total influence");
    add_instance_opts(infl);
    int infl_var = 0, infl_value = 0;
    infl->add_option("--var", infl_var);
    infl->add_option("--value", infl_value);

    auto* mark = app.add_subcommand("mark-cnf", "Moser-Tardos marking");
    add_instance_opts(mark);
    double mark_alpha = 0.171562, mark_beta = 0.257342;
    mark->add_option("--alpha", mark_alpha);
    mark->add_option("--beta", mark_beta);

    auto* accept = app.add_subcommand("acceptance", "run the full acceptance suite");

    // global options (--out, --seed, --precision-bits) may follow a subcommand
    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto finish = [&](json j) {
            auto t1 = std::chrono::steady_clock::now();
            j["wall_seconds"] = std::chrono::duration<double>(t1 - t0).count();
            emit(j.dump(2), out_path);
        };

        if (*gen) {
            zf::Instance inst;
            if (gen_kind == "disjoint-edges") {
                inst.kind = zf::Instance::Kind::Hypergraph;
                inst.graph = zf::make_disjoint_edges(gen_k, gen_m);
                inst.q = gen_q;
            } else if (gen_kind == "single-edge") {
                inst.kind = zf::Instance::Kind::Hypergraph;
                inst.graph = zf::make_single_edge(gen_k);
                inst.q = gen_q;
            } else if (gen_kind == "chain") {
                inst.kind = zf::Instance::Kind::Hypergraph;
                inst.graph = zf::make_edge_chain(gen_k, gen_m, gen_overlap);
                inst.q = gen_q;
            } else if (gen_kind == "random-hypergraph") {
                inst.kind = zf::Instance::Kind::Hypergraph;
                inst.graph = zf::random_hypergraph(gen_n, gen_k, gen_m, gen_delta, seed);
                inst.q = gen_q;
            } else if (gen_kind == "random-cnf") {
                inst.kind = zf::Instance::Kind::Cnf;
                inst.cnf = zf::random_cnf(gen_n, gen_k, gen_m, gen_delta, seed);
            } else if (gen_kind == "hypertree") {
                inst.kind = zf::Instance::Kind::Hypergraph;
                inst.graph = zf::random_hypertree(gen_k, gen_m, seed);
                inst.q = gen_q;
            } else {
                throw std::invalid_argument("unknown generator kind " + gen_kind);
            }
            inst.name = gen_kind + "-seed" + std::to_string(seed);
            emit(zf::instance_to_json(inst), out_path);
            return 0;
        }

        if (*partition) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            zf::PartitionPolynomial p = partition_brute_only
                                            ? zf::brute_force_partition_poly(csp, proj)
                                            : zf::factorized_partition_poly(csp, proj);
            json j = report_header(seed, precision_bits);
            j["variable"] = "lambda";
            j["coefficients"] = json::parse(p.to_json());
            j["value_at_1"] = p.eval_rat(zf::Rat(1)).get_str();
            finish(j);
            return 0;
        }

        if (*roots_cmd) {
            zf::Instance inst = inst_args.load();
            zf::PartitionPolynomial p =
                zf::factorized_partition_poly(inst.to_atomic(), inst_args.projection_for(inst));
            zf::RootSet rs = zf::find_roots(p, precision_bits);
            json j = report_header(seed, precision_bits);
            json arr = json::array();
            for (const auto& r : rs.roots) {
                arr.push_back({{"re", r.value.re.convert_to<double>()},
                               {"im", r.value.im.convert_to<double>()},
                               {"radius", r.radius.convert_to<double>()},
                               {"multiplicity", r.multiplicity}});
            }
            j["roots"] = arr;
            j["converged"] = rs.converged;
            finish(j);
            return 0;
        }

        if (*strip) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::PartitionPolynomial p =
                zf::factorized_partition_poly(csp, inst_args.projection_for(inst));
            zf::Rat gamma;
            if (strip_gamma == "auto") {
                int k = std::max(csp.max_arity(), 2);
                int delta = inst.kind == zf::Instance::Kind::Hypergraph
                                ? std::max(inst.graph.max_degree(), 1)
                                : std::max(inst.cnf.max_degree(), 1);
                gamma = zf::Rat(1) / zf::Rat(zf::Int(16) * zf::Int(delta) * zf::Int(delta) *
                                             zf::int_pow(zf::Int(k), 5));
            } else {
                gamma = parse_rational(strip_gamma);
            }
            zf::StripVerdict v = zf::verify_strip(p, gamma, precision_bits);
            json j = json::parse(v.to_json());
            j.update(report_header(seed, precision_bits));
            finish(j);
            return 0;
        }

        if (*selfred) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            std::vector<int> order(csp.constraints.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
            zf::SelfReductionChain chain =
                zf::self_reduction_chain(csp, proj, parse_complex(sr_lambda), order);
            json j = report_header(seed, precision_bits);
            json steps = json::array();
            for (const auto& s : chain.steps) {
                steps.push_back({{"by_poly_re", s.ratio_by_poly.real()},
                                 {"by_poly_im", s.ratio_by_poly.imag()},
                                 {"by_marginal_re", s.ratio_by_marginal.real()},
                                 {"by_marginal_im", s.ratio_by_marginal.imag()},
                                 {"disagreement", s.disagreement},
                                 {"marginal_norm_ge_one", s.marginal_norm_ge_one}});
            }
            j["steps"] = steps;
            j["zero_index"] = chain.zero_index;
            j["telescoping_error"] = chain.telescoping_error;
            finish(j);
            return 0;
        }

        if (*check) {
            std::ifstream f(params_path);
            if (!f) throw std::runtime_error("cannot open " + params_path);
            json pj = json::parse(f);
            zf::ConditionReport rep;
            if (cond_name == "coloring") {
                zf::ColoringParams p = zf::ColoringParams::make(
                    pj.at("k"), pj.at("delta"), pj.at("q"), pj.at("B"),
                    pj.contains("lambda_c") ? std::optional<zf::Rat>(parse_rational(
                                                  pj["lambda_c"].get<std::string>()))
                                            : std::nullopt);
                rep = zf::check_coloring_condition(p);
            } else if (cond_name == "cnf") {
                zf::CnfParams p = zf::CnfParams::make(
                    pj.at("k"), pj.at("delta"), pj.at("alpha"), pj.at("beta"),
                    pj.contains("lambda_c") ? std::optional<zf::Rat>(parse_rational(
                                                  pj["lambda_c"].get<std::string>()))
                                            : std::nullopt);
                rep = zf::check_cnf_condition(p);
            } else if (cond_name == "chebyshev") {
                rep = zf::check_chebyshev_condition(pj.at("k"), pj.at("delta"), pj.at("q"),
                                                    parse_rational(pj.at("lambda")));
            } else if (cond_name == "clt") {
                rep = zf::check_clt_condition(pj.at("k"), pj.at("delta"), pj.at("q"),
                                              pj.at("q_star"), parse_rational(pj.at("lambda")));
            } else if (cond_name == "lclt") {
                rep = zf::check_lclt_condition(pj.at("k"), pj.at("delta"), pj.at("q"),
                                               pj.at("q_star"), parse_rational(pj.at("lambda")),
                                               pj.at("B1"), pj.at("B2"));
            } else {
                throw std::invalid_argument("unknown condition " + cond_name);
            }
            json j = json::parse(rep.to_json());
            j.update(report_header(seed, precision_bits));
            finish(j);
            return 0;  // a negative verdict is a result, not an error
        }

        if (*decomp) {
            std::ifstream f(params_path);
            if (!f) throw std::runtime_error("cannot open " + params_path);
            json pj = json::parse(f);
            zf::InductionBounds b;
            if (decomp_kind == "coloring") {
                zf::ColoringParams p =
                    zf::ColoringParams::make(pj.at("k"), pj.at("delta"), pj.at("q"), pj.at("B"));
                b = zf::closed_form_bounds(p);
            } else {
                zf::CnfParams p =
                    zf::CnfParams::make(pj.at("k"), pj.at("delta"), pj.at("alpha"), pj.at("beta"));
                b = zf::closed_form_bounds(p);
            }
            json j = report_header(seed, precision_bits);
            j["n_hat_bound"] = b.n_hat;
            j["m_hat_bound"] = b.m_hat;
            j["product_log"] = b.product_log;
            j["product_le_quarter"] = b.product_le_quarter;
            finish(j);
            return 0;
        }

        if (*glauber) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            zf::CD lam = parse_complex(gl_lambda);
            zf::HeatBathDynamics dyn = zf::make_dynamics(csp, proj, lam);
            double worst_stat = 0;
            for (long long t = 1; t <= dyn.sched.n; ++t) {
                zf::ComplexMeasure mu = dyn.psi;
                dyn.step(mu, t);
                worst_stat = std::max(worst_stat, mu.l1_diff(dyn.psi));
            }
            std::size_t best = 0;
            for (std::size_t i = 0; i < dyn.psi.w.size(); ++i)
                if (std::abs(dyn.psi.w[i]) > std::abs(dyn.psi.w[best])) best = i;
            std::vector<int> sigma;
            dyn.psi.space.decode(best, sigma);
            zf::ComplexMeasure mu = zf::point_mass(dyn.psi.space, sigma);
            mu = zf::propagate(mu, dyn, gl_sweeps);
            json j = report_header(seed, precision_bits);
            j["stationarity_residual"] = worst_stat;
            j["convergence_residual"] = mu.l1_diff(dyn.psi);
            j["sweeps"] = gl_sweeps;
            finish(j);
            return 0;
        }

        if (*lifting) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            zf::LiftingReport rep =
                zf::projection_lifting_report(csp, proj, parse_complex(lift_lambda));
            json j = report_header(seed, precision_bits);
            j["events"] = rep.events.size();
            j["sum_abs_psi"] = rep.sum_abs_psi;
            j["abs_marginal"] = rep.abs_marginal;
            j["triangle_ok"] = rep.triangle_ok;
            j["all_ok"] = rep.all_ok;
            double worst_imag = 0, worst_range = 0;
            for (const auto& ev : rep.events) {
                if (ev.zero_mass) continue;
                worst_imag = std::max(worst_imag, std::abs(ev.conditional.imag()));
                worst_range = std::max({worst_range, -ev.conditional.real(),
                                        ev.conditional.real() - 1.0});
            }
            j["max_conditional_imag"] = worst_imag;
            j["max_conditional_range_excess"] = worst_range;
            finish(j);
            return rep.all_ok ? 0 : 1;
        }

        if (*witness) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            zf::ProjectedCsp pcsp = zf::ProjectedCsp::from_atomic(csp, proj);
            zf::WitnessGraph wg;
            wg.csp = &pcsp;
            wg.sched.n = csp.var_count();
            wg.T = static_cast<long long>(witness_sweeps) * wg.sched.n;
            wg.c_star = static_cast<int>(pcsp.groups.size()) - 1;
            int max_deg = 0;
            auto nodes = wg.all_nodes();
            for (const auto& x : nodes)
                max_deg = std::max(max_deg, static_cast<int>(wg.neighbors(x).size()));
            json j = report_header(seed, precision_bits);
            j["nodes"] = nodes.size();
            j["max_degree"] = max_deg;
            j["degree_bound"] = wg.degree_bound();
            j["within_bound"] = max_deg <= wg.degree_bound();
            finish(j);
            return 0;
        }

        if (*twotrees) {
            zf::CounterRng rng(seed);
            json rows = json::array();
            for (std::uint64_t i = 0; i < tt_graphs; ++i) {
                zf::SimpleGraph g;
                g.n = tt_n;
                g.adj.assign(tt_n, {});
                std::vector<int> deg(tt_n, 0);
                for (int v = 1; v < tt_n; ++v) {
                    int u = static_cast<int>(rng.next_below(v));
                    g.add_edge(u, v);
                    ++deg[u];
                    ++deg[v];
                }
                int D = g.max_degree();
                long long cnt = zf::count_2trees(g, 0, tt_j);
                auto tree = zf::construct_2tree(g, g.component_of(0), 0);
                rows.push_back({{"count", cnt},
                                {"bound", std::pow(std::exp(1.0) * D * D, tt_j - 1) / 2.0},
                                {"greedy_size", tree.size()},
                                {"size_floor", tt_n / (D + 1)}});
            }
            json j = report_header(seed, precision_bits);
            j["rows"] = rows;
            finish(j);
            return 0;
        }

        if (*fisher) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ClusterSeries series = zf::cluster_series(csp, fisher_J);
            zf::PartitionPolynomial fp = zf::fisher_partition_poly(csp);
            zf::Int omega = fp.coeff.empty() ? zf::Int(0) : fp.coeff[0];
            zf::TruncatedLogCount t = zf::truncated_log_count(series, fisher_J, &omega);
            json j = report_header(seed, precision_bits);
            json a = json::array();
            for (const auto& x : series.a) a.push_back(x.get_str());
            j["series"] = a;
            j["estimates"] = t.estimates;
            if (t.exact_known) {
                j["exact_log_count"] = t.exact;
                j["errors"] = t.errors();
            }
            finish(j);
            return 0;
        }

        if (*clt_cmd || *lclt_cmd) {
            std::ostringstream csv;
            csv << "m,n,statistic,scaled\n";
            zf::PartitionPolynomial edge = zf::single_edge_closed_form(fam_k, fam_q);
            for (int m : family_ms) {
                zf::PartitionPolynomial p = zf::poly_pow(edge, m);
                zf::ExactDistribution dist = zf::exact_law_of_special_count(p, zf::Rat(1));
                long n = static_cast<long>(fam_k) * m;
                if (*clt_cmd) {
                    zf::CltReport r = zf::clt_report(dist, n);
                    csv << m << "," << n << "," << r.d_kolmogorov << "," << r.scaled << "\n";
                } else {
                    zf::LcltReport r = zf::lclt_report(dist, n);
                    csv << m << "," << n << "," << r.sup_error << "," << r.scaled << "\n";
                }
            }
            emit(csv.str(), out_path);
            return 0;
        }

        if (*cheb) {
            std::ostringstream csv;
            csv << "m,n,delta,tail,bound,vacuous,ok\n";
            zf::PartitionPolynomial edge = zf::single_edge_closed_form(cheb_k, cheb_q);
            for (int m : cheb_ms) {
                zf::PartitionPolynomial p = zf::poly_pow(edge, m);
                zf::ExactDistribution dist = zf::exact_law_of_special_count(p, zf::Rat(1));
                long n = static_cast<long>(cheb_k) * m;
                zf::ChebyshevReport rep =
                    zf::chebyshev_verify(dist, n, cheb_k, cheb_q, cheb_q, zf::Rat(1), {0.1, 0.2, 0.5});
                for (const auto& row : rep.rows)
                    csv << m << "," << n << "," << row.delta_rel << "," << row.tail << ","
                        << row.bound << "," << row.vacuous << "," << row.ok << "\n";
            }
            emit(csv.str(), out_path);
            return 0;
        }

        if (*infl) {
            zf::Instance inst = inst_args.load();
            zf::AtomicCsp csp = inst.to_atomic();
            zf::ProjectionScheme proj = inst_args.projection_for(inst);
            double infl_total =
                zf::total_influence_exact(csp, proj, zf::Rat(1), infl_var, infl_value);
            json j = report_header(seed, precision_bits);
            j["variable"] = infl_var;
            j["value"] = infl_value;
            j["total_influence"] = infl_total;
            finish(j);
            return 0;
        }

        if (*mark) {
            zf::Instance inst = inst_args.load();
            if (inst.kind != zf::Instance::Kind::Cnf)
                throw std::invalid_argument("mark-cnf expects a CNF instance");
            zf::CnfParams params =
                zf::CnfParams::make(inst.cnf.k, std::max(inst.cnf.max_degree(), 1), mark_alpha,
                                    mark_beta);
            zf::MarkingResult res = zf::moser_tardos_marking(inst.cnf, params, seed);
            json j = report_header(seed, precision_bits);
            j["success"] = res.success;
            j["attempts"] = res.attempts_used;
            j["resample_steps"] = res.resample_steps;
            j["marked_total"] = res.marked_total;
            j["unmarked_total"] = res.unmarked_total;
            j["min_marked_per_clause"] = res.min_marked_per_clause;
            j["min_unmarked_per_clause"] = res.min_unmarked_per_clause;
            j["verified"] = res.success && zf::verify_marking(inst.cnf, params, res.marked);
            finish(j);
            return res.success ? 0 : 1;
        }

        if (*accept) {
            int failures = zf::run_acceptance(std::cout);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
