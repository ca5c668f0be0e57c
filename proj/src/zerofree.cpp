#include "zf/zerofree.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <json.hpp>

namespace zf {

double RootSet::max_radius() const {
    double r = 0;
    for (const auto& x : roots) r = std::max(r, x.radius.convert_to<double>());
    return r;
}

double RootSet::max_residual() const {
    double r = 0;
    for (const auto& x : roots) r = std::max(r, x.residual.convert_to<double>());
    return r;
}

namespace {

// --- rational polynomial helpers for exact square-free decomposition --------

using QPoly = std::vector<Rat>;  // coeff[i] * x^i

int qdeg(const QPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qderiv(const QPoly& p) {
    QPoly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    qtrim(d);
    return d;
}

// remainder of a by b (b nonzero)
QPoly qmod(QPoly a, const QPoly& b) {
    qtrim(a);
    int db = qdeg(b);
    Rat lead = b[db];
    while (qdeg(a) >= db && qdeg(a) >= 0) {
        int da = qdeg(a);
        Rat f = a[da] / lead;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
        qtrim(a);
    }
    return a;
}

QPoly qdiv_exact(QPoly a, const QPoly& b) {
    qtrim(a);
    int db = qdeg(b);
    Rat lead = b[db];
    QPoly q(std::max(qdeg(a) - db + 1, 0), Rat(0));
    while (qdeg(a) >= db && qdeg(a) >= 0) {
        int da = qdeg(a);
        Rat f = a[da] / lead;
        q[da - db] = f;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
        a[da] = 0;
        qtrim(a);
    }
    return q;
}

void qmonic(QPoly& p) {
    int d = qdeg(p);
    if (d < 0) return;
    Rat lead = p[d];
    for (auto& c : p) c /= lead;
}

QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (qdeg(b) >= 0) {
        QPoly r = qmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    qmonic(a);
    return a;
}

// Exact m-th root of a rational polynomial with nonzero constant term, via
// the derivative recurrence A' g = m A g'; returns nothing when A is not an
// exact power. This peels products cheaply before the gcd-based
// decomposition, whose cost grows quickly with the repeated-factor degree.
std::optional<QPoly> try_nth_root(const QPoly& A, int m) {
    int d = qdeg(A);
    if (d <= 0 || d % m != 0) return std::nullopt;
    int e = d / m;
    if (A[0] == 0) return std::nullopt;

    // the constant term must be an exact m-th power in Q
    Rat c0 = A[0];
    if (m % 2 == 0 && c0 < 0) return std::nullopt;
    Int num = c0.get_num(), den = c0.get_den();
    Int nroot, droot;
    bool neg = num < 0;
    Int anum = neg ? Int(-num) : num;
    if (mpz_root(nroot.get_mpz_t(), anum.get_mpz_t(), m) == 0) return std::nullopt;
    if (mpz_root(droot.get_mpz_t(), den.get_mpz_t(), m) == 0) return std::nullopt;
    if (neg) nroot = -nroot;

    QPoly g(e + 1, Rat(0));
    g[0] = Rat(nroot) / Rat(droot);
    for (int t = 0; t < e; ++t) {
        // g_{t+1} = sum_{i<=t} ((t+1-i) - m i) A_{t+1-i} g_i / (m (t+1) A_0)
        Rat acc(0);
        for (int i = 0; i <= t; ++i) {
            int u = t + 1 - i;
            if (u > d) continue;
            Rat coef = Rat(u) - Rat(m) * Rat(i);
            if (coef == 0 || A[u] == 0) continue;
            acc += coef * A[u] * g[i];
        }
        g[t + 1] = acc / (Rat(m) * Rat(t + 1) * A[0]);
    }
    // verify exactly
    QPoly power = {Rat(1)};
    for (int i = 0; i < m; ++i) {
        QPoly next(power.size() + g.size() - 1, Rat(0));
        for (size_t a = 0; a < power.size(); ++a) {
            if (power[a] == 0) continue;
            for (size_t b = 0; b < g.size(); ++b) next[a + b] += power[a] * g[b];
        }
        power = std::move(next);
    }
    qtrim(power);
    QPoly acopy = A;
    qtrim(acopy);
    if (power.size() != acopy.size()) return std::nullopt;
    for (size_t i = 0; i < power.size(); ++i)
        if (power[i] != acopy[i]) return std::nullopt;
    return g;
}

// Yun's algorithm: poly = prod factors[i].first ^ factors[i].second with each
// factor square-free; exact over Q, so multiple roots are known exactly.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& poly) {
    std::vector<std::pair<QPoly, int>> out;
    QPoly a = poly;
    qtrim(a);
    if (qdeg(a) <= 0) return out;
    QPoly da = qderiv(a);
    QPoly g = qgcd(a, da);
    if (qdeg(g) == 0) {
        QPoly f = a;
        qmonic(f);
        out.push_back({f, 1});
        return out;
    }
    QPoly c = qdiv_exact(a, g);
    QPoly d = [&] {
        QPoly t = qdiv_exact(da, g);
        QPoly dc = qderiv(c);
        QPoly r(std::max(t.size(), dc.size()), Rat(0));
        for (size_t i = 0; i < t.size(); ++i) r[i] += t[i];
        for (size_t i = 0; i < dc.size(); ++i) r[i] -= dc[i];
        qtrim(r);
        return r;
    }();
    int i = 1;
    while (qdeg(c) > 0) {
        QPoly p = qgcd(c, d);
        if (qdeg(p) > 0) {
            QPoly f = p;
            qmonic(f);
            out.push_back({f, i});
        }
        c = qdiv_exact(c, p);
        QPoly t = qdiv_exact(d, p);
        QPoly dc = qderiv(c);
        QPoly r(std::max(t.size(), dc.size()), Rat(0));
        for (size_t j = 0; j < t.size(); ++j) r[j] += t[j];
        for (size_t j = 0; j < dc.size(); ++j) r[j] -= dc[j];
        qtrim(r);
        d = std::move(r);
        ++i;
    }
    return out;
}

// --- Aberth-Ehrlich on a square-free factor ----------------------------------

struct BigPoly {
    std::vector<BigComplex> c;  // c[i] x^i

    BigComplex eval(const BigComplex& x) const {
        BigComplex r;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + c[i];
        return r;
    }
    void eval_with_deriv(const BigComplex& x, BigComplex& p, BigComplex& dp) const {
        p = BigComplex();
        dp = BigComplex();
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
            dp = dp * x + p;
            p = p * x + c[i];
        }
    }
};

BigPoly to_bigpoly(const QPoly& q) {
    BigPoly p;
    for (const auto& r : q) {
        BigFloat num(r.get_num().get_mpz_t()), den(r.get_den().get_mpz_t());
        p.c.push_back(BigComplex(num / den));
    }
    return p;
}

// Fujiwara bound: all roots within 2 * max_i |a_{n-i}/a_n|^{1/i}
BigFloat root_radius_bound(const BigPoly& p) {
    int n = static_cast<int>(p.c.size()) - 1;
    BigFloat an = p.c[n].abs();
    BigFloat best(0);
    for (int i = 1; i <= n; ++i) {
        BigFloat ratio = p.c[n - i].abs() / an;
        if (ratio > 0) {
            BigFloat r = pow(ratio, BigFloat(1) / i);
            if (r > best) best = r;
        }
    }
    return 2 * best + BigFloat("0.5");
}

// Upper bound on |p(z)| including evaluation roundoff: Horner in BigFloat with
// a running error term e <- e*|x| + ulp-scale * |acc|.
BigFloat eval_abs_upper(const BigPoly& p, const BigComplex& x, int bits) {
    BigFloat ax = x.abs();
    BigComplex acc;
    BigFloat err(0);
    BigFloat eps = ldexp(BigFloat(4), -bits);
    for (int i = static_cast<int>(p.c.size()) - 1; i >= 0; --i) {
        acc = acc * x + p.c[i];
        err = err * ax + eps * acc.abs();
    }
    return acc.abs() + err;
}

struct FactorRoots {
    std::vector<BigComplex> z;
    std::vector<BigFloat> radius;
    std::vector<BigFloat> residual;
    bool converged = true;
};

FactorRoots aberth(const BigPoly& p, int bits) {
    int n = static_cast<int>(p.c.size()) - 1;
    FactorRoots out;
    if (n <= 0) return out;
    if (n == 1) {
        out.z.push_back(BigComplex() - p.c[0] / p.c[1]);
    } else {
        BigFloat R = root_radius_bound(p);
        BigFloat pi = 4 * atan(BigFloat(1));
        for (int i = 0; i < n; ++i) {
            // deterministic spread, irrational phase offset avoids symmetry locks
            BigFloat theta = 2 * pi * (BigFloat(i) / n) + BigFloat("0.3999");
            out.z.push_back(BigComplex(R * cos(theta), R * sin(theta)));
        }
        BigFloat tol = ldexp(BigFloat(1), -(bits / 2));
        const int max_iter = 400;
        bool done = false;
        for (int iter = 0; iter < max_iter && !done; ++iter) {
            BigFloat max_step(0);
            for (int i = 0; i < n; ++i) {
                BigComplex pv, dv;
                p.eval_with_deriv(out.z[i], pv, dv);
                if (pv.is_zero()) continue;
                BigComplex newton = dv.is_zero() ? BigComplex(BigFloat(1)) : pv / dv;
                BigComplex sum;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    BigComplex diff = out.z[i] - out.z[j];
                    if (diff.norm2() == 0) {
                        diff = BigComplex(ldexp(BigFloat(1), -bits), ldexp(BigFloat(1), -bits));
                    }
                    sum += BigComplex(BigFloat(1)) / diff;
                }
                BigComplex denom = BigComplex(BigFloat(1)) - newton * sum;
                BigComplex step = denom.is_zero() ? newton : newton / denom;
                out.z[i] -= step;
                BigFloat s = step.abs();
                if (s > max_step) max_step = s;
            }
            BigFloat scale(1);
            for (int i = 0; i < n; ++i) {
                BigFloat a = out.z[i].abs();
                if (a > scale) scale = a;
            }
            if (max_step < tol * scale) done = true;
        }
        out.converged = done;
    }
    // Newton polish; roots are simple on a square-free factor
    for (auto& z : out.z) {
        for (int it = 0; it < 8; ++it) {
            BigComplex pv, dv;
            p.eval_with_deriv(z, pv, dv);
            if (dv.is_zero()) break;
            z -= pv / dv;
        }
    }
    // a-posteriori radii: n * |p(z)| / |p'(z)| with an evaluation-error cushion
    for (const auto& z : out.z) {
        BigComplex pv, dv;
        p.eval_with_deriv(z, pv, dv);
        BigFloat pu = eval_abs_upper(p, z, bits);
        BigFloat da = dv.abs();
        BigFloat cushion = ldexp(BigFloat(8), -bits) * (BigFloat(1) + z.abs());
        if (da == 0) {
            out.radius.push_back(BigFloat(1e30));
            out.converged = false;
        } else {
            out.radius.push_back(BigFloat(n) * pu / da + cushion);
        }
        out.residual.push_back(pu);
    }
    return out;
}

}  // namespace

RootSet find_roots(const PartitionPolynomial& poly_in, int precision_bits) {
    PartitionPolynomial poly = poly_in;
    poly.trim();
    int deg = poly.degree();
    if (deg < 1) throw std::invalid_argument("find_roots: polynomial is constant");
    BigFloat::default_precision(digits_for_bits(precision_bits));

    QPoly q;
    for (const auto& c : poly.coeff) q.push_back(Rat(c));

    RootSet rs;
    rs.precision_bits = precision_bits;
    rs.degree = deg;
    int found = 0;

    // roots at zero come off as a plain power of x
    int zero_mult = 0;
    while (qdeg(q) > 0 && q[0] == 0) {
        q.erase(q.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) {
        CertifiedRoot r;
        r.value = BigComplex(0.0, 0.0);
        r.radius = 0;
        r.residual = 0;
        r.multiplicity = zero_mult;
        rs.roots.push_back(std::move(r));
        found += zero_mult;
    }

    // peel exact powers before the gcd-based decomposition
    int power_mult = 1;
    bool peeled = true;
    while (peeled && qdeg(q) > 1) {
        peeled = false;
        for (int m = qdeg(q); m >= 2; --m) {
            if (qdeg(q) % m != 0) continue;
            if (auto g = try_nth_root(q, m)) {
                q = std::move(*g);
                power_mult *= m;
                peeled = true;
                break;
            }
        }
    }

    auto factors = squarefree_decomposition(q);
    for (const auto& [f, mult] : factors) {
        BigPoly bp = to_bigpoly(f);
        FactorRoots fr = aberth(bp, precision_bits);
        if (!fr.converged) {
            rs.converged = false;
            rs.note = "iteration did not reach target tolerance; radii are still certified";
        }
        for (size_t i = 0; i < fr.z.size(); ++i) {
            CertifiedRoot r;
            r.value = fr.z[i];
            r.radius = fr.radius[i];
            r.residual = fr.residual[i];
            r.multiplicity = mult * power_mult;
            rs.roots.push_back(std::move(r));
            found += mult * power_mult;
        }
    }
    if (found != deg)
        throw std::runtime_error("find_roots: lost roots (" + std::to_string(found) + " of " +
                                 std::to_string(deg) + ")");
    return rs;
}

double distance_to_unit_segment(CD z) {
    double re = z.real(), im = z.imag();
    if (re >= 0.0 && re <= 1.0) return std::abs(im);
    return std::min(std::abs(z), std::abs(z - CD(1, 0)));
}

BigFloat distance_to_unit_segment_lower(const BigComplex& z) {
    if (z.re >= 0 && z.re <= 1) return abs(z.im);
    BigFloat d0 = z.abs();
    BigComplex shifted(z.re - 1, z.im);
    BigFloat d1 = shifted.abs();
    BigFloat d = d0 < d1 ? d0 : d1;
    // one-ulp cushion keeps the bound on the safe side of rounding
    return d * (BigFloat(1) - ldexp(BigFloat(4), -static_cast<int>(BigFloat::default_precision() * 3)));
}

StripVerdict verify_strip(const PartitionPolynomial& poly, const Rat& gamma, int precision_bits) {
    StripVerdict v;
    v.gamma = gamma;
    v.roots = find_roots(poly, precision_bits);
    BigFloat::default_precision(digits_for_bits(precision_bits));
    BigFloat g(gamma.get_num().get_mpz_t());
    g /= BigFloat(gamma.get_den().get_mpz_t());

    BigFloat min_lhs(1e300);
    bool any_boundary = false;
    for (const auto& r : v.roots.roots) {
        BigFloat dist = distance_to_unit_segment_lower(r.value);
        BigFloat lhs = dist - r.radius;
        if (lhs < min_lhs) min_lhs = lhs;
        BigFloat hi = dist + 2 * r.radius;
        if (!(lhs > g) && hi >= g) any_boundary = true;
    }
    if (v.roots.roots.empty()) min_lhs = BigFloat(1e300);
    v.min_distance = min_lhs.convert_to<double>();
    v.pass = min_lhs > g;  // ties fail closed
    v.boundary = !v.pass && any_boundary;
    return v;
}

std::string StripVerdict::to_json() const {
    nlohmann::json j;
    j["gamma"] = gamma.get_str();
    j["gamma_decimal"] = gamma.get_d();
    j["min_distance"] = min_distance;
    j["pass"] = pass;
    j["boundary"] = boundary;
    j["precision_bits"] = roots.precision_bits;
    j["converged"] = roots.converged;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : roots.roots) {
        nlohmann::json e;
        e["re"] = r.value.re.convert_to<double>();
        e["im"] = r.value.im.convert_to<double>();
        e["radius"] = r.radius.convert_to<double>();
        e["multiplicity"] = r.multiplicity;
        arr.push_back(e);
    }
    j["roots"] = arr;
    return j.dump(2);
}

SelfReductionChain self_reduction_chain(const AtomicCsp& csp, const ProjectionScheme& special,
                                        CD lam, const std::vector<int>& order, std::size_t budget) {
    SelfReductionChain chain;
    // Z_0: field-only product over variables
    CD z0 = 1;
    for (int v = 0; v < csp.var_count(); ++v) {
        int p1 = special.special[v] >= 0 ? special.preimage_size(v, special.special[v]) : 0;
        z0 *= lam * CD(p1) + CD(csp.domains[v] - p1);
    }
    chain.z0 = z0;
    if (std::abs(z0) < 1e-300) {
        chain.zero_index = 0;
        return chain;
    }

    AtomicCsp prefix;
    prefix.domains = csp.domains;
    CD z_prev = z0;
    CD product = 1;
    for (size_t i = 0; i < order.size(); ++i) {
        const Constraint& c = csp.constraints.at(order[i]);

        // route 1: marginal of "c violated" under the prefix measure
        Assignment no_pin = Assignment::empty(csp.var_count());
        CD viol = conditional_marginal(
            prefix, special, lam, no_pin,
            [&](const std::vector<int>& a) {
                for (size_t t = 0; t < c.vars.size(); ++t)
                    if (a[c.vars[t]] != c.forbidden[t]) return false;
                return true;
            },
            nullptr, budget);

        prefix.constraints.push_back(c);

        // route 2: polynomial evaluation of the extended prefix
        PartitionPolynomial zp = brute_force_partition_poly(prefix, special, budget);
        CD z_cur = zp.eval(lam);

        SelfReductionStep step;
        step.ratio_by_marginal = CD(1) - viol;
        step.marginal_norm_ge_one = std::abs(viol) >= 1.0;
        if (std::abs(z_cur) < 1e-12 * std::max(1.0, std::abs(z_prev))) {
            chain.zero_index = static_cast<int>(i) + 1;
            step.ratio_by_poly = 0;
            step.disagreement = std::abs(step.ratio_by_poly - step.ratio_by_marginal);
            chain.steps.push_back(step);
            return chain;
        }
        step.ratio_by_poly = z_cur / z_prev;
        step.disagreement = std::abs(step.ratio_by_poly - step.ratio_by_marginal);
        chain.steps.push_back(step);
        product *= step.ratio_by_poly;
        z_prev = z_cur;
    }
    // telescoping: prod ratios * Z_0 = Z
    chain.telescoping_error = std::abs(product * z0 - z_prev);
    return chain;
}

}  // namespace zf
