#include "csgn/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace csgn {

void QuadConfig::validate() const {
    if (gauss_order < 4 || panels_per_bump < 1 || diagonal_refinement_levels < 0 ||
        !(target_rel_tol > 0.0) || !(far_pair_cutoff > 0.0))
        throw Error(ErrorCode::InvalidParams,
                    "quadrature config: need gauss_order >= 4, panels >= 1, "
                    "refinement levels >= 0, positive tolerances");
}

namespace {

GaussRule make_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P_n'(x)
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15 && it > 1) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::mutex g_rule_mutex;
std::map<int, GaussRule> g_rules;

double panel_gauss(const Fn1& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
    return s.value() * half;
}

// Uniform panels plus geometric end refinement, in ascending order.
std::vector<Interval> panelize(const Interval& iv, int panels, int levels,
                               bool refine_lo, bool refine_hi) {
    std::vector<Interval> out;
    const double w = (iv.second - iv.first) / panels;
    for (int k = 0; k < panels; ++k) {
        const double a = iv.first + k * w;
        const double b = (k == panels - 1) ? iv.second : iv.first + (k + 1) * w;
        const bool lo = refine_lo && k == 0;
        const bool hi = refine_hi && k == panels - 1;
        if (!lo && !hi) {
            out.emplace_back(a, b);
            continue;
        }
        if (lo && hi) {  // split in half, refine each side
            const double m = 0.5 * (a + b);
            for (int j = levels; j >= 0; --j)
                out.emplace_back(j == levels ? a : a + (m - a) * std::ldexp(1.0, -(j + 1)),
                                 a + (m - a) * std::ldexp(1.0, -j));
            for (int j = 0; j <= levels; ++j)
                out.emplace_back(b - (b - m) * std::ldexp(1.0, -j),
                                 j == levels ? b : b - (b - m) * std::ldexp(1.0, -(j + 1)));
            continue;
        }
        if (lo) {
            for (int j = levels; j >= 0; --j)
                out.emplace_back(j == levels ? a : a + (b - a) * std::ldexp(1.0, -(j + 1)),
                                 a + (b - a) * std::ldexp(1.0, -j));
        } else {
            for (int j = 0; j <= levels; ++j)
                out.emplace_back(b - (b - a) * std::ldexp(1.0, -j),
                                 j == levels ? b : b - (b - a) * std::ldexp(1.0, -(j + 1)));
        }
    }
    return out;
}

QuadResult finalize(double value, double abs_err, double tol) {
    QuadResult r;
    r.value = value;
    r.est_rel_error = abs_err / std::max(std::abs(value), DBL_MIN);
    r.converged = r.est_rel_error <= tol;
    return r;
}

// Inner v-integral of the rotated square scheme at fixed u.
double v_line(const Fn2& F, double u, double va, double vb, int vpanels,
              const GaussRule& rule) {
    KahanSum s;
    const double w = (vb - va) / vpanels;
    for (int k = 0; k < vpanels; ++k) {
        const double a = va + k * w;
        const double b = (k == vpanels - 1) ? vb : va + (k + 1) * w;
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        KahanSum ps;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double v = mid + half * rule.nodes[i];
            const double rho = 0.5 * (v - u);
            // r and rho may round to the same double for tiny u; the
            // integrand receives the exact offset u separately
            ps.add(rule.weights[i] * F(rho + u, rho, u));
        }
        s.add(ps.value() * half);
    }
    return s.value();
}

// One u-slab of the square scheme: int_{ua}^{ub} du int_{2a+u}^{2b-u} dv.
double u_slab(const Fn2& F, const Interval& iv, double ua, double ub, int order,
              int vpanels) {
    const GaussRule& rule = gauss_rule(order);
    const double mid = 0.5 * (ua + ub);
    const double half = 0.5 * (ub - ua);
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = mid + half * rule.nodes[i];
        s.add(rule.weights[i] *
              v_line(F, u, 2.0 * iv.first + u, 2.0 * iv.second - u, vpanels, rule));
    }
    return s.value() * half;
}

// Innermost slab u in (0, u0], flattened by u = u0 t^4.
double u_slab_inner(const Fn2& F, const Interval& iv, double u0, int order,
                    int vpanels) {
    const GaussRule& rule = gauss_rule(order);
    KahanSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = 0.5 + 0.5 * rule.nodes[i];
        const double u = u0 * t * t * t * t;
        const double jac = 4.0 * u0 * t * t * t;
        s.add(rule.weights[i] * jac *
              v_line(F, u, 2.0 * iv.first + u, 2.0 * iv.second - u, vpanels, rule));
    }
    return s.value() * 0.5;
}

double rect_tensor(const Fn2& F, const std::vector<Interval>& rp,
                   const std::vector<Interval>& pp, const GaussRule& rule) {
    KahanSum s;
    for (const Interval& ir : rp) {
        const double rm = 0.5 * (ir.first + ir.second);
        const double rh = 0.5 * (ir.second - ir.first);
        for (const Interval& ip : pp) {
            const double pm = 0.5 * (ip.first + ip.second);
            const double ph = 0.5 * (ip.second - ip.first);
            KahanSum ps;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                const double r = rm + rh * rule.nodes[i];
                KahanSum line;
                for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                    const double rho = pm + ph * rule.nodes[j];
                    line.add(rule.weights[j] * F(r, rho, r - rho));
                }
                ps.add(rule.weights[i] * line.value());
            }
            s.add(ps.value() * rh * ph);
        }
    }
    return s.value();
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    std::lock_guard<std::mutex> lock(g_rule_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

int worker_count() {
    if (const char* env = std::getenv("CSGN_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

QuadResult integrate_1d(const Fn1& f, const std::vector<Interval>& intervals,
                        const QuadConfig& cfg) {
    cfg.validate();
    const GaussRule& lo = gauss_rule(cfg.gauss_order);
    const GaussRule& hi = gauss_rule(2 * cfg.gauss_order);
    KahanSum value, err;
    for (const Interval& iv : intervals) {
        const double w = (iv.second - iv.first) / cfg.panels_per_bump;
        for (int k = 0; k < cfg.panels_per_bump; ++k) {
            const double a = iv.first + k * w;
            const double b =
                (k == cfg.panels_per_bump - 1) ? iv.second : iv.first + (k + 1) * w;
            const double vl = panel_gauss(f, a, b, lo);
            const double vh = panel_gauss(f, a, b, hi);
            value.add(vh);
            err.add(std::abs(vh - vl));
        }
    }
    return finalize(value.value(), err.value(), cfg.target_rel_tol);
}

QuadResult integrate_1d_refined(const Fn1& f, const Interval& iv,
                                const QuadConfig& cfg, bool refine_lo,
                                bool refine_hi) {
    cfg.validate();
    const GaussRule& lo = gauss_rule(cfg.gauss_order);
    const GaussRule& hi = gauss_rule(2 * cfg.gauss_order);
    const std::vector<Interval> panels =
        panelize(iv, cfg.panels_per_bump, cfg.diagonal_refinement_levels,
                 refine_lo, refine_hi);
    KahanSum value, err;
    for (const Interval& p : panels) {
        const double vl = panel_gauss(f, p.first, p.second, lo);
        const double vh = panel_gauss(f, p.first, p.second, hi);
        value.add(vh);
        err.add(std::abs(vh - vl));
    }
    return finalize(value.value(), err.value(), cfg.target_rel_tol);
}

QuadResult integrate_square_diag(const Fn2& F, const Interval& iv,
                                 double diag_exponent, const QuadConfig& cfg) {
    cfg.validate();
    if (!(diag_exponent > -1.0))
        throw Error(ErrorCode::NonIntegrableDiagonal,
                    "diagonal exponent must exceed -1 for an integrable square");
    const double W = iv.second - iv.first;
    if (!(W > 0.0))
        throw Error(ErrorCode::InvalidParams, "empty square interval");
    const int L = cfg.diagonal_refinement_levels;
    const int n = cfg.gauss_order;
    const int vp = cfg.panels_per_bump;
    KahanSum value, err;
    for (int k = 0; k < L; ++k) {
        const double ub = W * std::ldexp(1.0, -k);
        const double ua = W * std::ldexp(1.0, -(k + 1));
        const double vl = u_slab(F, iv, ua, ub, n, vp);
        const double vh = u_slab(F, iv, ua, ub, 2 * n, 2 * vp);
        value.add(vh);
        err.add(std::abs(vh - vl));
    }
    const double u0 = W * std::ldexp(1.0, -L);
    const double vl = u_slab_inner(F, iv, u0, n, vp);
    const double vh = u_slab_inner(F, iv, u0, 2 * n, 2 * vp);
    value.add(vh);
    err.add(std::abs(vh - vl));
    return finalize(value.value(), err.value(), cfg.target_rel_tol);
}

QuadResult integrate_rect(const Fn2& F, const Interval& ir, const Interval& ip,
                          const QuadConfig& cfg) {
    cfg.validate();
    const bool r_below = ir.second <= ip.first;
    const bool p_below = ip.second <= ir.first;
    if (!r_below && !p_below)
        throw Error(ErrorCode::InvalidParams,
                    "rectangle scheme needs disjoint intervals");
    const double gap = r_below ? ip.first - ir.second : ir.first - ip.second;
    const double wr = ir.second - ir.first;
    const double wp = ip.second - ip.first;
    const bool near = gap < cfg.far_pair_cutoff * std::min(wr, wp);
    const std::vector<Interval> rp =
        panelize(ir, cfg.panels_per_bump, cfg.diagonal_refinement_levels,
                 near && p_below, near && r_below);
    const std::vector<Interval> pp =
        panelize(ip, cfg.panels_per_bump, cfg.diagonal_refinement_levels,
                 near && r_below, near && p_below);
    const double vl = rect_tensor(F, rp, pp, gauss_rule(cfg.gauss_order));
    const double vh = rect_tensor(F, rp, pp, gauss_rule(2 * cfg.gauss_order));
    return finalize(vh, std::abs(vh - vl), cfg.target_rel_tol);
}

QuadResult integrate_2d_offdiag(const Fn2& F, const std::vector<Interval>& rows,
                                const std::vector<Interval>& cols,
                                double diag_exponent, const QuadConfig& cfg) {
    cfg.validate();
    struct Task {
        Interval ir, ip;
        bool diagonal;
    };
    std::vector<Task> tasks;
    for (const Interval& ir : rows) {
        for (const Interval& ip : cols) {
            const bool same = ir.first == ip.first && ir.second == ip.second;
            tasks.push_back({ir, ip, same});
        }
    }
    std::vector<QuadResult> partial(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        const Task& t = tasks[i];
        partial[i] = t.diagonal
                         ? integrate_square_diag(F, t.ir, diag_exponent, cfg)
                         : integrate_rect(F, t.ir, t.ip, cfg);
    });
    KahanSum value, err;
    for (const QuadResult& p : partial) {
        value.add(p.value);
        err.add(p.est_rel_error * std::abs(p.value));
    }
    return finalize(value.value(), err.value(), cfg.target_rel_tol);
}

}  // namespace csgn
