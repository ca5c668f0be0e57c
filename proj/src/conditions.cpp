#include "zf/conditions.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

namespace zf {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr mpfr_prec_t kPrecCap = 2048;

RInterval ln_int(long v, mpfr_prec_t prec) { return log(RInterval(v, prec)); }

std::string item_json_verdict(Verdict v) { return verdict_name(v); }

void push_item(ConditionReport& rep, const std::string& name, Verdict v, const RInterval& lhs,
               const RInterval& rhs) {
    rep.items.push_back({name, v, lhs.str(12), rhs.str(12)});
}

}  // namespace

std::string ConditionReport::to_json() const {
    nlohmann::json j;
    j["condition"] = condition_id;
    j["pass"] = pass;
    j["indeterminate"] = indeterminate;
    nlohmann::json items_j = nlohmann::json::array();
    for (const auto& it : items) {
        nlohmann::json e;
        e["name"] = it.name;
        e["verdict"] = item_json_verdict(it.verdict);
        e["lhs"] = it.lhs;
        e["rhs"] = it.rhs;
        items_j.push_back(e);
    }
    j["items"] = items_j;
    j["quantities"] = quantities;
    return j.dump(2);
}

ColoringParams ColoringParams::make(int k, int delta, int q, int B, std::optional<Rat> lambda_c) {
    if (k < 2 || delta < 1 || q < 2 || B < 1 || q <= B)
        throw std::invalid_argument("ColoringParams: need k>=2, delta>=1, q>=B+1");
    ColoringParams p;
    p.k = k;
    p.delta = delta;
    p.q = q;
    p.B = B;
    p.s = coloring_projection_s(q, B);
    p.lambda_c = lambda_c.value_or(Rat(1));
    Int dk5 = Int(16) * Int(delta) * Int(delta) * int_pow(Int(k), 5);
    p.gamma = Rat(1) / Rat(dk5);
    p.rho = Int(608) * Int(q) * Int(delta) * Int(delta) * int_pow(Int(k), 5);
    return p;
}

CnfParams CnfParams::make(int k, int delta, double alpha, double beta_frac,
                          std::optional<Rat> lambda_c) {
    if (k < 2 || delta < 1 || alpha <= 0 || beta_frac <= 0 || alpha >= 1 || beta_frac >= 1)
        throw std::invalid_argument("CnfParams: need k>=2, delta>=1, alpha,beta in (0,1)");
    CnfParams p;
    p.k = k;
    p.delta = delta;
    p.alpha = alpha;
    p.beta_frac = beta_frac;
    p.k_mk = static_cast<int>(std::ceil(alpha * k));
    p.k_umk = static_cast<int>(std::ceil(beta_frac * k));
    if (p.k_mk + p.k_umk > k) throw std::invalid_argument("CnfParams: k_mk + k_umk > k");
    p.lambda_c = lambda_c.value_or(Rat(1));
    Int dk5 = Int(2000) * Int(delta) * Int(delta) * int_pow(Int(k), 5);
    p.gamma = Rat(1) / Rat(dk5);
    p.s_cnf = dk5;
    return p;
}

namespace {

// item 3 of both main conditions: lambda_c in [0,1] (coloring) or >= 0 (cnf),
// plus disk membership when a concrete lambda is supplied
Verdict lambda_item(const Rat& lambda_c, const Rat& gamma, std::optional<CD> lambda,
                    bool require_unit_interval, std::string& desc) {
    if (lambda_c < 0 || (require_unit_interval && lambda_c > 1)) {
        desc = "lambda_c outside " + std::string(require_unit_interval ? "[0,1]" : "[0,inf)");
        return Verdict::Fail;
    }
    if (lambda) {
        double dx = lambda->real() - lambda_c.get_d();
        double dy = lambda->imag();
        double g = gamma.get_d();
        desc = "lambda in disk";
        if (dx * dx + dy * dy > g * g * (1 + 1e-12)) return Verdict::Fail;
    } else {
        desc = "lambda_c admissible";
    }
    return Verdict::Pass;
}

}  // namespace

ConditionReport check_coloring_condition(const ColoringParams& p, std::optional<CD> lambda) {
    ConditionReport rep;
    rep.condition_id = "coloring-main";
    if (p.k <= 0 || p.delta <= 0 || p.q <= 0 || p.s <= 0)
        throw std::invalid_argument("check_coloring_condition: parameters must be positive");

    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        rep.items.clear();
        bool unresolved = false;

        // item 1: k ln s >= ln(608 e q^2 d^3 k^5)
        RInterval lhs1 = RInterval(long(p.k), prec) * ln_int(p.s, prec);
        RInterval rhs1 = ln_int(608, prec) + RInterval(1L, prec) +
                         RInterval(2L, prec) * ln_int(p.q, prec) +
                         RInterval(3L, prec) * ln_int(p.delta, prec) +
                         RInterval(5L, prec) * ln_int(p.k, prec);
        Verdict v1 = verdict_ge(lhs1, rhs1);
        push_item(rep, "s^k >= 608 e q^2 delta^3 k^5 (log domain)", v1, lhs1, rhs1);

        // item 2: ln(16 e^2 d^2 k^4 q) + k ln(4s/q) <= 0
        RInterval lhs2 = ln_int(16, prec) + RInterval(2L, prec) +
                         RInterval(2L, prec) * ln_int(p.delta, prec) +
                         RInterval(4L, prec) * ln_int(p.k, prec) + ln_int(p.q, prec) +
                         RInterval(long(p.k), prec) *
                             (ln_int(4, prec) + ln_int(p.s, prec) - ln_int(p.q, prec));
        RInterval zero(0L, prec);
        Verdict v2 = verdict_le(lhs2, zero);
        push_item(rep, "16 e^2 delta^2 k^4 q (4s/q)^k <= 1 (log domain)", v2, lhs2, zero);

        std::string desc;
        Verdict v3 = lambda_item(p.lambda_c, p.gamma, lambda, /*unit interval*/ true, desc);
        rep.items.push_back({"lambda window: " + desc, v3, "", ""});

        unresolved = (v1 == Verdict::Indeterminate) || (v2 == Verdict::Indeterminate);
        if (!unresolved) {
            rep.pass = v1 == Verdict::Pass && v2 == Verdict::Pass && v3 == Verdict::Pass;
            rep.indeterminate = false;
            break;
        }
        rep.indeterminate = true;
        rep.pass = false;
    }
    rep.quantities["s"] = std::to_string(p.s);
    rep.quantities["gamma"] = p.gamma.get_str();
    rep.quantities["rho"] = p.rho.get_str();
    return rep;
}

ColoringParams derive_coloring_params(int k, int delta) {
    if (k < 50) throw std::invalid_argument("derive_coloring_params: requires k >= 50");
    if (delta < 1) throw std::invalid_argument("derive_coloring_params: requires delta >= 1");

    // q = ceil(700 * delta^(5/(k-10))), settled rigorously in interval arithmetic
    long q = -1;
    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        RInterval expo = RInterval(5L, prec) / RInterval(long(k - 10), prec);
        RInterval val = RInterval(700L, prec) * exp(expo * ln_int(delta, prec));
        mpfr_t c_lo, c_hi;
        mpfr_init2(c_lo, prec);
        mpfr_init2(c_hi, prec);
        mpfr_ceil(c_lo, val.lo());
        mpfr_ceil(c_hi, val.hi());
        bool settled = mpfr_cmp(c_lo, c_hi) == 0;
        long res = mpfr_get_si(c_hi, MPFR_RNDN);
        mpfr_clear(c_lo);
        mpfr_clear(c_hi);
        if (settled) {
            q = res;
            break;
        }
    }
    if (q < 0)
        throw std::runtime_error("derive_coloring_params: ceiling not settled at precision cap");

    // B = floor(q^(2/5)) = floor((q^2)^(1/5)), exact integer root
    Int B = int_root(Int(q) * Int(q), 5);
    ColoringParams p = ColoringParams::make(k, delta, static_cast<int>(q), static_cast<int>(B.get_si()));
    ConditionReport rep = check_coloring_condition(p);
    if (!rep.pass)
        throw std::runtime_error("derive_coloring_params: derived parameters fail the condition");
    return p;
}

ConditionReport check_cnf_condition(const CnfParams& p, std::optional<CD> lambda) {
    ConditionReport rep;
    rep.condition_id = "cnf-main";
    if (p.k <= 0 || p.delta <= 0 || p.k_mk <= 0 || p.k_umk <= 0)
        throw std::invalid_argument("check_cnf_condition: parameters must be positive");
    if (p.k_mk + p.k_umk > p.k)
        throw std::invalid_argument("check_cnf_condition: k_mk + k_umk > k");

    Rat lc = p.lambda_c, g = p.gamma;
    Rat num = (lc + g > 1) ? Rat(lc + g) : Rat(1);  // max(1, lambda_c + gamma)
    Rat den = 1 + lc - g;

    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        rep.items.clear();

        // item 2a: k ln 2 >= (6 ln2 (1+a-b)/(1-a-b)^2) ln(4 e d k)
        RInterval a(p.alpha, prec), b(p.beta_frac, prec), one(1L, prec);
        RInterval expo = RInterval(6L, prec) * log(RInterval(2L, prec)) * (one + a - b) /
                         ((one - a - b) * (one - a - b));
        RInterval lhs_a = RInterval(long(p.k), prec) * log(RInterval(2L, prec));
        RInterval rhs_a =
            expo * (ln_int(4, prec) + one + ln_int(p.delta, prec) + ln_int(p.k, prec));
        Verdict v2a = verdict_ge(lhs_a, rhs_a);
        push_item(rep, "2^k >= (4 e delta k)^(6 ln2 (1+a-b)/(1-a-b)^2)", v2a, lhs_a, rhs_a);

        // item 2b: k_mk ln(max(1, l_c+g)/(1+l_c-g)) <= -ln(16 e^3 d^2 k^4)
        RInterval lhs_b = RInterval(long(p.k_mk), prec) *
                          (log(RInterval(num, prec)) - log(RInterval(den, prec)));
        RInterval rhs_b = -(ln_int(16, prec) + RInterval(3L, prec) +
                            RInterval(2L, prec) * ln_int(p.delta, prec) +
                            RInterval(4L, prec) * ln_int(p.k, prec));
        Verdict v2b = verdict_le(lhs_b, rhs_b);
        push_item(rep, "(max(1,l_c+g)/(1+l_c-g))^k_mk <= 1/(16 e^3 delta^2 k^4)", v2b, lhs_b, rhs_b);

        // item 2c: k_umk ln 2 >= ln(4000 e d^3 k^5)
        RInterval lhs_c = RInterval(long(p.k_umk), prec) * log(RInterval(2L, prec));
        RInterval rhs_c = ln_int(4000, prec) + one + RInterval(3L, prec) * ln_int(p.delta, prec) +
                          RInterval(5L, prec) * ln_int(p.k, prec);
        Verdict v2c = verdict_ge(lhs_c, rhs_c);
        push_item(rep, "2^k_umk >= 4000 e delta^3 k^5", v2c, lhs_c, rhs_c);

        std::string desc;
        Verdict v3 = lambda_item(p.lambda_c, p.gamma, lambda, /*unit interval*/ false, desc);
        rep.items.push_back({"lambda window: " + desc, v3, "", ""});

        // separate closed form: k >= 12 log2(delta) + 24 log2(k) + 57
        RInterval lg2 = log(RInterval(2L, prec));
        RInterval lhs_k(long(p.k), prec);
        RInterval rhs_k = RInterval(12L, prec) * ln_int(p.delta, prec) / lg2 +
                          RInterval(24L, prec) * ln_int(p.k, prec) / lg2 + RInterval(57L, prec);
        Verdict vk = verdict_ge(lhs_k, rhs_k);
        push_item(rep, "closed form: k >= 12 log2(delta) + 24 log2(k) + 57", vk, lhs_k, rhs_k);

        bool unresolved = v2a == Verdict::Indeterminate || v2b == Verdict::Indeterminate ||
                          v2c == Verdict::Indeterminate || vk == Verdict::Indeterminate;
        if (!unresolved) {
            // the closed-form item is informational, not part of the conjunction
            rep.pass = v2a == Verdict::Pass && v2b == Verdict::Pass && v2c == Verdict::Pass &&
                       v3 == Verdict::Pass;
            rep.indeterminate = false;
            break;
        }
        rep.indeterminate = true;
        rep.pass = false;
    }
    rep.quantities["k_mk"] = std::to_string(p.k_mk);
    rep.quantities["k_umk"] = std::to_string(p.k_umk);
    rep.quantities["gamma"] = p.gamma.get_str();
    return rep;
}

double zeta(double r_max) {
    if (!(r_max > 0 && r_max < 1)) throw std::domain_error("zeta: need r_max in (0,1)");
    return 2 * std::log(2 - r_max) / (std::log(1 / r_max) - std::log(2 - r_max));
}

RInterval zeta_interval(const RInterval& r_max, mpfr_prec_t prec) {
    RInterval two(2L, prec), one(1L, prec);
    RInterval t = log(two - r_max);
    return two * t / (log(one / r_max) - t);
}

ConditionReport check_chebyshev_condition(int k, int delta, int q, const Rat& lam) {
    ConditionReport rep;
    rep.condition_id = "chebyshev";
    if (k < 2 || delta < 1 || q < 2) throw std::invalid_argument("chebyshev: bad parameters");
    if (lam <= 0) throw std::domain_error("chebyshev: need lambda > 0");

    Rat rmax_num = lam > 1 ? lam : Rat(1);
    Rat rmax = rmax_num / (Rat(q - 1) + lam);
    Rat inv_lam_factor = lam < 1 ? Rat(1) / lam : Rat(1);

    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        rep.items.clear();
        RInterval r(rmax, prec);
        RInterval z = zeta_interval(r, prec);
        RInterval lhs = RInterval(3L, prec) * (ln_int(8, prec) + RInterval(1L, prec)) +
                        log(RInterval(inv_lam_factor, prec)) +
                        RInterval(long(k - 1), prec) * log(r) +
                        (RInterval(2L, prec) + z) * ln_int(long(delta) * k + 1, prec);
        RInterval zero(0L, prec);
        Verdict v = verdict_le(lhs, zero);
        push_item(rep, "(8e)^3 max(1,1/l) r_max^(k-1) (dk+1)^(2+zeta) <= 1", v, lhs, zero);
        rep.quantities["r_max"] = rmax.get_str();
        rep.quantities["zeta"] = z.midpoint_str(17);
        if (v != Verdict::Indeterminate) {
            rep.pass = v == Verdict::Pass;
            rep.indeterminate = false;
            break;
        }
        rep.indeterminate = true;
    }
    return rep;
}

ConditionReport check_clt_condition(int k, int delta, int q, int q_star, const Rat& lam) {
    ConditionReport rep;
    rep.condition_id = "clt";
    if (k < 2 || delta < 1 || q < 2) throw std::invalid_argument("clt: bad parameters");
    if (q_star <= 0 || q_star >= q) throw std::invalid_argument("clt: need 0 < q* < q");
    if (lam <= 0) throw std::domain_error("clt: need lambda > 0");

    Rat denom = Rat(q - q_star) + Rat(q_star) * lam;
    Rat rmax = (lam > 1 ? lam : Rat(1)) / denom;

    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        rep.items.clear();
        RInterval r(rmax, prec);
        RInterval z = zeta_interval(r, prec);
        RInterval lhs = ln_int(16, prec) + RInterval(2L, prec) +
                        RInterval(2L, prec) * log(RInterval(denom, prec)) -
                        log(RInterval(lam, prec)) - ln_int(q - q_star, prec) +
                        RInterval(2L * (k - 1), prec) / (RInterval(2L, prec) + z) * log(r) +
                        RInterval(4L, prec) * ln_int(long(delta) * k + 1, prec);
        RInterval zero(0L, prec);
        Verdict v = verdict_le(lhs, zero);
        push_item(rep, "16 e^2 (q-q*+q*l)^2/(l(q-q*)) r^(2(k-1)/(2+z)) (dk+1)^4 <= 1", v, lhs, zero);
        rep.quantities["r_max"] = rmax.get_str();
        rep.quantities["zeta"] = z.midpoint_str(17);
        if (v != Verdict::Indeterminate) {
            rep.pass = v == Verdict::Pass;
            rep.indeterminate = false;
            break;
        }
        rep.indeterminate = true;
    }
    return rep;
}

ConditionReport check_lclt_condition(int k, int delta, int q, int q_star, const Rat& lam, int B1,
                                     int B2) {
    ConditionReport rep;
    rep.condition_id = "lclt";
    if (B1 < B2 || B1 > q || B2 < 1) throw std::invalid_argument("lclt: need 1 <= B2 <= B1 <= q");
    if (q_star <= 0 || q_star >= q) throw std::invalid_argument("lclt: need 0 < q* < q");
    if (lam <= 0) throw std::domain_error("lclt: need lambda > 0");

    // the comparisons run on the atomized formula, whose degree picks up a q
    long delta_a = static_cast<long>(q) * delta;

    long ceil_b = (B1 + B2 - 1) / B2;
    long ceil_q = (q - 1 + B1 - 1) / B1;
    Rat p_proj_base = Rat(static_cast<long>((ceil_b + 1)) * ceil_q) / Rat(q);
    long floor_b = B1 / B2;
    long floor_q = (q - 1) / B1;
    bool cond_base_ok = (floor_b - 1) >= 1 && floor_q >= 1;
    Rat p_cond_base = cond_base_ok ? Rat(1, (floor_b - 1) * floor_q) : Rat(1);

    Rat denom = Rat(q - q_star) + Rat(q_star) * lam;
    Rat rmax = (lam > 1 ? lam : Rat(1)) / denom;
    Rat ratio_den = (Rat(q - q_star) < Rat(q_star) * lam) ? Rat(q - q_star) : Rat(q_star) * lam;

    for (mpfr_prec_t prec = kStartPrec; prec <= kPrecCap; prec *= 2) {
        rep.items.clear();
        RInterval zero(0L, prec);

        RInterval lhs1 = log(RInterval(2L, prec)) + RInterval(2L, prec) +
                         RInterval(long(k), prec) * log(RInterval(p_proj_base, prec)) +
                         RInterval(2L, prec) * log(RInterval(delta_a * k, prec));
        Verdict v1 = verdict_le(lhs1, zero);
        push_item(rep, "2 e^2 p_proj (Dk)^2 <= 1", v1, lhs1, zero);

        Verdict v2;
        RInterval lhs2 = zero;
        if (!cond_base_ok) {
            v2 = Verdict::Fail;
        } else {
            lhs2 = log(RInterval(2L, prec)) + RInterval(1L, prec) +
                   RInterval(long(k), prec) * log(RInterval(p_cond_base, prec)) +
                   log(RInterval(static_cast<long>(q) * delta_a * k, prec));
            v2 = verdict_le(lhs2, zero);
        }
        push_item(rep, "2 e p_cond q D k <= 1", v2, lhs2, zero);

        RInterval r(rmax, prec);
        RInterval z = zeta_interval(r, prec);
        RInterval lhs3 = RInterval(3L, prec) * (ln_int(8, prec) + RInterval(1L, prec)) +
                         log(RInterval(denom, prec)) - log(RInterval(ratio_den, prec)) +
                         RInterval(long(k - 1), prec) * log(r) +
                         (RInterval(2L, prec) + z) * log(RInterval(delta_a * k + 1, prec));
        Verdict v3 = verdict_le(lhs3, zero);
        push_item(rep, "(8e)^3 ratio r_max^(k-1) (Dk+1)^(2+zeta) <= 1", v3, lhs3, zero);

        rep.quantities["p_proj_base"] = p_proj_base.get_str();
        rep.quantities["p_cond_base"] = cond_base_ok ? p_cond_base.get_str() : "undefined";
        rep.quantities["atomized_degree"] = std::to_string(delta_a);
        bool unresolved = v1 == Verdict::Indeterminate || v2 == Verdict::Indeterminate ||
                          v3 == Verdict::Indeterminate;
        if (!unresolved) {
            rep.pass = v1 == Verdict::Pass && v2 == Verdict::Pass && v3 == Verdict::Pass;
            rep.indeterminate = false;
            break;
        }
        rep.indeterminate = true;
    }
    return rep;
}

GaussRat gauss_from(const Rat& re, const Rat& im) { return GaussRat(re, im); }

GaussRat DecompositionScheme::sum(int v) const {
    GaussRat s = b_bot[v];
    for (const auto& x : b[v]) s += x;
    return s;
}

namespace {

bool lambda_within(const GaussRat& lam, const Rat& lambda_c, const Rat& gamma) {
    Rat dr = lam.re - lambda_c;
    return dr * dr + lam.im * lam.im <= gamma * gamma;
}

}  // namespace

DecompositionScheme build_coloring_decomposition(const ColoringParams& p, const GaussRat& lam,
                                                 const ProjectionScheme& proj) {
    GaussRat denom = lam + GaussRat(Rat(p.q - 1));
    if (denom.is_zero())
        throw std::domain_error("build_coloring_decomposition: q - 1 + lambda = 0");
    Rat rho(p.rho);
    GaussRat one_minus(Rat(1) - Rat(1) / rho);

    DecompositionScheme d;
    d.lambda_in_window = lambda_within(lam, p.lambda_c, p.gamma);
    d.tag = DecompositionScheme::Tag::Coloring;
    int n = proj.var_count();
    d.b.resize(n);
    d.b_bot.resize(n);
    for (int v = 0; v < n; ++v) {
        d.b[v].assign(proj.bucket_count[v], GaussRat());
        for (int j = 0; j < proj.bucket_count[v]; ++j) {
            if (j == proj.special[v]) continue;  // the special bucket carries no oblivious mass
            GaussRat pre(Rat(proj.preimage_size(v, j)));
            d.b[v][j] = pre / denom * one_minus;
        }
        d.b_bot[v] = lam / denom + GaussRat(Rat(p.q - 1) / rho) / denom;
    }
    return d;
}

DecompositionScheme build_cnf_decomposition(const CnfParams& p, const GaussRat& lam,
                                            const ProjectionScheme& proj, int digits) {
    // exp(1/s) rounded to a rational; the normalization identity holds for any
    // value E, so the scheme stays exactly normalized after rounding
    mpfr_t e1s;
    mpfr_init2(e1s, static_cast<mpfr_prec_t>(digits * 4));
    mpfr_set_z(e1s, p.s_cnf.get_mpz_t(), MPFR_RNDN);
    mpfr_ui_div(e1s, 1, e1s, MPFR_RNDN);
    mpfr_exp(e1s, e1s, MPFR_RNDN);
    mpq_t eq;
    mpq_init(eq);
    mpfr_get_q(eq, e1s);
    Rat E{mpq_class(eq)};
    mpq_clear(eq);
    mpfr_clear(e1s);

    GaussRat half_e(Rat(E / 2));
    GaussRat denom = GaussRat(Rat(1)) + half_e * (lam - GaussRat(Rat(1)));
    if (denom.is_zero()) throw std::domain_error("build_cnf_decomposition: degenerate denominator");

    DecompositionScheme d;
    d.lambda_in_window = lambda_within(lam, p.lambda_c, p.gamma);
    d.tag = DecompositionScheme::Tag::Cnf;
    int n = proj.var_count();
    d.b.resize(n);
    d.b_bot.resize(n);
    for (int v = 0; v < n; ++v) {
        d.b[v].assign(proj.bucket_count[v], GaussRat());
        if (proj.special[v] < 0) {
            // unmarked: single bucket, purely oblivious
            d.b[v][0] = GaussRat(Rat(1));
            d.b_bot[v] = GaussRat();
            continue;
        }
        GaussRat base = (GaussRat(Rat(1)) - half_e) / denom;
        for (int j = 0; j < proj.bucket_count[v]; ++j)
            d.b[v][j] = (j == proj.special[v]) ? lam * base : base;
        d.b_bot[v] = lam * (GaussRat(Rat(E) - Rat(1))) / denom;
    }
    return d;
}

namespace {

double cd_abs(CD z) { return std::abs(z); }

}  // namespace

InductionBounds compute_nhat_mhat_exact(const Hypergraph& h, int q, const ProjectionScheme& proj,
                                        CD lam, const DecompositionScheme& scheme, int c_star,
                                        std::size_t pin_budget) {
    h.validate();
    int n = h.n;
    if (c_star < 0) c_star = static_cast<int>(h.edges.size()) - 1;

    // the measure lives on the instance without c_star
    Hypergraph h_minus = h;
    if (c_star >= 0 && c_star < static_cast<int>(h.edges.size()))
        h_minus.edges.erase(h_minus.edges.begin() + c_star);

    MixedRadix bucket_space(proj.bucket_count);
    if (bucket_space.total / std::max(proj.bucket_count[0], 1) * n > pin_budget)
        throw ResourceError("compute_nhat_mhat_exact: pinning enumeration exceeds budget");

    InductionBounds out;
    out.mode = InductionBounds::Mode::ExactOnInstance;

    // per-variable max over extendable pinnings of sum_x |psi^{tau,bot}(x)|
    std::vector<double> l1_adaptive(n, 0.0);
    std::vector<int> digits;
    for (int u = 0; u < n; ++u) {
        double best = 0;
        std::size_t rest_total = bucket_space.total / proj.bucket_count[u];
        for (std::size_t rest = 0; rest < rest_total; ++rest) {
            // decode the pinning on V minus u
            std::vector<int> pin(n, -1);
            std::size_t r = rest;
            for (int v = n - 1; v >= 0; --v) {
                if (v == u) continue;
                pin[v] = static_cast<int>(r % proj.bucket_count[v]);
                r /= proj.bucket_count[v];
            }
            std::vector<Int> counts = coloring_counts_by_bucket(h_minus, q, proj, pin, u);
            bool extendable = false;
            for (const auto& c : counts)
                if (c > 0) extendable = true;
            if (!extendable) continue;

            CD denom = 0;
            std::vector<CD> psi(counts.size());
            for (size_t i = 0; i < counts.size(); ++i) {
                CD w = (static_cast<int>(i) == proj.special[u]) ? lam * CD(counts[i].get_d())
                                                                : CD(counts[i].get_d());
                psi[i] = w;
                denom += w;
            }
            double scale = 0;
            for (CD x : psi) scale += cd_abs(x);
            if (cd_abs(denom) <= 1e-14 * std::max(scale, 1.0)) {
                out.notes.push_back("transition measure undefined at variable " +
                                    std::to_string(u) + " under some extendable pinning");
                out.n_hat = out.m_hat = std::numeric_limits<double>::infinity();
                return out;
            }
            for (auto& x : psi) x /= denom;

            CD bot = scheme.bot_cd(u);
            if (cd_abs(bot) == 0) continue;  // 0 * anything = 0 by convention
            double l1 = 0;
            for (size_t i = 0; i < psi.size(); ++i)
                l1 += cd_abs((psi[i] - scheme.b_cd(u, static_cast<int>(i))) / bot);
            best = std::max(best, l1);
        }
        l1_adaptive[u] = best;
    }

    // M-hat
    double m_hat = 0;
    for (int u = 0; u < n; ++u) {
        double s = 0;
        for (int j = 0; j < proj.bucket_count[u]; ++j) s += cd_abs(scheme.b_cd(u, j));
        s += cd_abs(scheme.bot_cd(u)) * l1_adaptive[u];
        m_hat = std::max(m_hat, s);
    }

    // N-hat: per edge, sum over the q monochromatic assignments
    double n_hat = 0;
    for (const auto& e : h.edges) {
        double total = 0;
        for (int color = 0; color < q; ++color) {
            double prod = 1;
            for (int u : e) {
                int bkt = proj.bucket_of[u][color];
                prod *= cd_abs(scheme.b_cd(u, bkt)) + cd_abs(scheme.bot_cd(u)) * l1_adaptive[u];
            }
            total += prod;
        }
        n_hat = std::max(n_hat, total);
    }

    out.n_hat = n_hat;
    out.m_hat = m_hat;
    int delta = h.max_degree();
    int k = h.k;
    double dk5 = 4.0 * delta * delta * std::pow(double(k), 5);
    out.product_log = std::log(4.0) + 1.0 + 2 * std::log(double(delta)) +
                      4 * std::log(double(k)) + std::log(std::max(n_hat, 1e-300)) +
                      dk5 * std::log(std::max(m_hat, 1e-300));
    out.product_le_quarter = out.product_log <= std::log(0.25);
    return out;
}

InductionBounds closed_form_bounds(const ColoringParams& p) {
    ConditionReport rep = check_coloring_condition(p);
    if (!rep.pass)
        throw std::domain_error("closed_form_bounds: coloring condition does not pass");

    InductionBounds out;
    out.mode = InductionBounds::Mode::ClosedFormBound;
    // log N-hat = 1 + ln q + k ln(4s/q); log M-hat = log(1 + 1/(4 d^2 k^5))
    const mpfr_prec_t prec = 256;
    RInterval ln_n = RInterval(1L, prec) + ln_int(p.q, prec) +
                     RInterval(long(p.k), prec) *
                         (ln_int(4, prec) + ln_int(p.s, prec) - ln_int(p.q, prec));
    Int dk5_int = Int(4) * Int(p.delta) * Int(p.delta) * int_pow(Int(p.k), 5);
    Rat m_slack = Rat(1) / Rat(dk5_int);
    RInterval ln_m = log(RInterval(Rat(1) + m_slack, prec));
    RInterval product = ln_int(4, prec) + RInterval(1L, prec) +
                        RInterval(2L, prec) * ln_int(p.delta, prec) +
                        RInterval(4L, prec) * ln_int(p.k, prec) + ln_n +
                        RInterval(dk5_int, prec) * ln_m;
    RInterval quarter = log(RInterval(Rat(1, 4), prec));
    out.n_hat = std::exp(ln_n.hi_d());
    out.m_hat = Rat(Rat(1) + m_slack).get_d();
    out.product_log = product.hi_d();
    out.product_le_quarter = verdict_le(product, quarter) == Verdict::Pass;
    if (verdict_le(product, quarter) == Verdict::Indeterminate)
        out.notes.push_back("product comparison indeterminate at 256 bits");
    return out;
}

InductionBounds closed_form_bounds(const CnfParams& p) {
    ConditionReport rep = check_cnf_condition(p);
    if (!rep.pass) throw std::domain_error("closed_form_bounds: cnf condition does not pass");

    InductionBounds out;
    out.mode = InductionBounds::Mode::ClosedFormBound;
    const mpfr_prec_t prec = 256;
    Rat lc = p.lambda_c, g = p.gamma;
    Rat num = (lc + g > 1) ? Rat(lc + g) : Rat(1);
    Rat den = 1 + lc - g;
    RInterval ln_n = RInterval(1L, prec) + RInterval(long(p.k_mk), prec) *
                                               (log(RInterval(num, prec)) - log(RInterval(den, prec)));
    Int dk5_int = Int(4) * Int(p.delta) * Int(p.delta) * int_pow(Int(p.k), 5);
    Rat m_slack = Rat(1) / Rat(dk5_int);
    RInterval ln_m = log(RInterval(Rat(1) + m_slack, prec));
    RInterval product = ln_int(4, prec) + RInterval(1L, prec) +
                        RInterval(2L, prec) * ln_int(p.delta, prec) +
                        RInterval(4L, prec) * ln_int(p.k, prec) + ln_n +
                        RInterval(dk5_int, prec) * ln_m;
    RInterval quarter = log(RInterval(Rat(1, 4), prec));
    out.n_hat = std::exp(ln_n.hi_d());
    out.m_hat = Rat(Rat(1) + m_slack).get_d();
    out.product_log = product.hi_d();
    out.product_le_quarter = verdict_le(product, quarter) == Verdict::Pass;
    if (verdict_le(product, quarter) == Verdict::Indeterminate)
        out.notes.push_back("product comparison indeterminate at 256 bits");
    return out;
}

}  // namespace zf
