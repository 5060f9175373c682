#include "cpforce/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace cpforce::quad {

QuadResult& QuadResult::operator+=(const QuadResult& o) {
    value += o.value;
    abs_err += o.abs_err;
    evals += o.evals;
    converged = converged && o.converged;
    return *this;
}

QuadResult operator+(QuadResult a, const QuadResult& b) { return a += b; }

QuadResult scaled(QuadResult r, double factor) {
    r.value *= factor;
    r.abs_err *= std::abs(factor);
    return r;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Rule {
    std::array<double, 11> xk{};  // xk[0] = 0, odd indices are Gauss nodes
    std::array<double, 11> wk{};
    std::array<double, 11> wg{};  // Gauss weights on the shared nodes, 0 elsewhere
};

const Rule& gk21() {
    static const Rule rule = [] {
        using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
        using G = boost::math::quadrature::gauss<double, 10>;
        Rule r;
        const auto& xk = GK::abscissa();
        const auto& wk = GK::weights();
        const auto& xg = G::abscissa();
        const auto& wg = G::weights();
        for (std::size_t i = 0; i < 11; ++i) {
            r.xk[i] = xk[i];
            r.wk[i] = wk[i];
            r.wg[i] = 0.0;
            for (std::size_t j = 0; j < xg.size(); ++j)
                if (std::abs(xg[j] - xk[i]) < 1e-14) r.wg[i] = wg[j];
        }
        return r;
    }();
    return rule;
}

struct Segment {
    double a, b, value, err, resabs;
    bool operator<(const Segment& o) const { return err < o.err; }
};

// QUADPACK-style error estimate for one panel.
Segment apply_rule(const Integrand& f, double a, double b) {
    const Rule& r = gk21();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, 21> fv{};
    fv[0] = f(c);
    for (std::size_t i = 1; i < 11; ++i) {
        fv[2 * i - 1] = f(c - h * r.xk[i]);
        fv[2 * i] = f(c + h * r.xk[i]);
    }
    double rk = r.wk[0] * fv[0];
    double rg = r.wg[0] * fv[0];
    double rabs = std::abs(rk);
    for (std::size_t i = 1; i < 11; ++i) {
        const double s = fv[2 * i - 1] + fv[2 * i];
        rk += r.wk[i] * s;
        rg += r.wg[i] * s;
        rabs += r.wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    }
    const double mean = 0.5 * rk;
    double rasc = r.wk[0] * std::abs(fv[0] - mean);
    for (std::size_t i = 1; i < 11; ++i)
        rasc += r.wk[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));

    Segment s{a, b, rk * h, std::abs((rk - rg) * h), rabs * std::abs(h)};
    rasc *= std::abs(h);
    if (rasc != 0.0 && s.err != 0.0) s.err = rasc * std::min(1.0, std::pow(200.0 * s.err / rasc, 1.5));
    if (s.resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
        s.err = std::max(50.0 * kEps * s.resabs, s.err);
    if (!std::isfinite(s.value)) s.err = std::numeric_limits<double>::infinity();
    return s;
}

std::once_flag gsl_init;

void init_gsl() {
    std::call_once(gsl_init, [] { gsl_set_error_handler_off(); });
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const Options& opts) {
    QuadResult out;
    if (a == b) return out;
    if (!(a < b)) {
        QuadResult r = integrate_adaptive(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    std::vector<double> edges{a};
    std::vector<double> bp = opts.breakpoints;
    std::sort(bp.begin(), bp.end());
    for (double x : bp)
        if (x > edges.back() && x < b && std::isfinite(x)) edges.push_back(x);
    edges.push_back(b);

    std::priority_queue<Segment> heap;
    double total = 0.0, err = 0.0, resabs = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment s = apply_rule(f, edges[i], edges[i + 1]);
        total += s.value;
        err += s.err;
        resabs += s.resabs;
        heap.push(s);
    }
    out.evals = 21 * heap.size();
    // Panels too narrow to bisect are retired so they stop blocking the heap.
    double retired_err = 0.0;
    auto done = [&] {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
        return err <= target || err <= 50.0 * kEps * resabs;
    };
    while (!done() && !heap.empty() && heap.size() < opts.max_intervals) {
        Segment s = heap.top();
        heap.pop();
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b) || (s.b - s.a) < 1e-14 * (std::abs(s.a) + std::abs(s.b))) {
            retired_err += s.err;
            continue;
        }
        Segment l = apply_rule(f, s.a, mid);
        Segment r = apply_rule(f, mid, s.b);
        out.evals += 42;
        total += l.value + r.value - s.value;
        err += l.err + r.err - s.err;
        resabs += l.resabs + r.resabs - s.resabs;
        heap.push(l);
        heap.push(r);
    }
    // Re-sum to shed accumulated rounding in the running totals.
    double value = 0.0, e = retired_err;
    while (!heap.empty()) {
        value += heap.top().value;
        e += heap.top().err;
        heap.pop();
    }
    out.value = value;
    out.abs_err = e;
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    out.converged = std::isfinite(value) && (e <= target || e <= 50.0 * kEps * resabs ||
                                             e <= 1.000001 * target);
    return out;
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b, double tol) {
    Options o;
    o.rel_tol = tol;
    return integrate_adaptive(f, a, b, o);
}

QuadResult integrate_pv(const Integrand& f, double a, double b, double p, const PvOptions& opts) {
    if (!(a < p && p < b)) return integrate_adaptive(f, a, b, opts.quad);
    double r = std::min(p - a, b - p);
    if (opts.radius > 0.0) r = std::min(r, opts.radius);
    QuadResult out;
    if (p - r > a) out += integrate_adaptive(f, a, p - r, opts.quad);
    if (p + r < b) out += integrate_adaptive(f, p + r, b, opts.quad);
    // Snap v so that p + v and p - v are exactly symmetric about p; otherwise
    // rounding leaves an O(eps/v^2) remnant of the pole that never converges.
    Integrand folded = [&](double v) {
        const double vv = (p + v) - p;
        if (vv == 0.0) return 0.0;
        return f(p + vv) + f(p - vv);
    };
    out += integrate_adaptive(folded, 0.0, r, opts.quad);
    return out;
}

QuadResult integrate_pv(const Integrand& f, double a, double b, double p, double tol) {
    PvOptions o;
    o.quad.rel_tol = tol;
    return integrate_pv(f, a, b, p, o);
}

double bose_y_max(double tol) {
    tol = std::clamp(tol, 1e-16, 1e-2);
    return 40.0 + 10.0 * std::log10(1.0 / tol);
}

QuadResult integrate_bose(const Integrand& g, double B, double tol) {
    if (std::isinf(B)) return {};
    if (!(B > 0.0)) throw std::invalid_argument("integrate_bose: B must be positive");
    const double ymax = bose_y_max(tol);
    Integrand h = [&](double y) { return g(y / B) / std::expm1(y); };
    Options o;
    o.rel_tol = tol;
    o.breakpoints = {1.0, 5.0, 20.0};
    return scaled(integrate_adaptive(h, 0.0, ymax, o), 1.0 / B);
}

namespace {

struct GslThunk {
    const Integrand* f;
    std::size_t count = 0;
};

double gsl_call(double x, void* p) {
    auto* t = static_cast<GslThunk*>(p);
    ++t->count;
    return (*t->f)(x);
}

QuadResult qawo_segment(const Integrand& f, double a, double b, double omega, Trig kind,
                        double abs_tol, double rel_tol) {
    init_gsl();
    constexpr std::size_t limit = 2000;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(limit);
    gsl_integration_qawo_table* tab = gsl_integration_qawo_table_alloc(
        omega, b - a, kind == Trig::Cos ? GSL_INTEG_COSINE : GSL_INTEG_SINE, 30);
    GslThunk thunk{&f};
    gsl_function F{&gsl_call, &thunk};
    double result = 0.0, err = 0.0;
    const int status = gsl_integration_qawo(&F, a, std::max(abs_tol, 1e-300), std::max(rel_tol, 1e-14),
                                            limit, ws, tab, &result, &err);
    gsl_integration_qawo_table_free(tab);
    gsl_integration_workspace_free(ws);
    QuadResult r{result, err, thunk.count, status == GSL_SUCCESS};
    // GSL refuses targets below its roundoff floor; accept those.
    if (status == GSL_EROUND) r.converged = true;
    return r;
}

}  // namespace

QuadResult integrate_fourier(const Integrand& f, double a, double b, double omega, Trig kind,
                             const Options& opts) {
    if (a == b) return {};
    const double w = std::abs(omega);
    const double sgn = (kind == Trig::Sin && omega < 0.0) ? -1.0 : 1.0;
    Integrand g = [&](double x) {
        return f(x) * (kind == Trig::Cos ? std::cos(w * x) : std::sin(w * x));
    };
    std::vector<double> edges{a};
    if (a > 0.0) {
        for (double x = 4.0 * a; x < b; x *= 4.0) edges.push_back(x);
    }
    edges.push_back(b);
    QuadResult out;
    const double share = opts.abs_tol / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (w * (hi - lo) < 40.0 * M_PI) {
            Options o = opts;
            o.abs_tol = share;
            o.breakpoints.clear();
            if (w > 0.0) {
                const double period = 2.0 * M_PI / w;
                for (double x = lo + period; x < hi; x += period) o.breakpoints.push_back(x);
            }
            out += integrate_adaptive(g, lo, hi, o);
        } else {
            out += qawo_segment(f, lo, hi, w, kind, share, opts.rel_tol);
        }
    }
    return scaled(out, sgn);
}

QuadResult integrate_panels(const Integrand& f, double a, double b, double width, const Options& opts) {
    if (!(width > 0.0)) throw std::invalid_argument("integrate_panels: width must be positive");
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / width));
    QuadResult out;
    Options o = opts;
    o.breakpoints.clear();
    o.abs_tol = opts.abs_tol / static_cast<double>(std::max<std::size_t>(n, 1));
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = a + static_cast<double>(i) * width;
        const double hi = std::min(b, lo + width);
        if (hi > lo) out += integrate_adaptive(f, lo, hi, o);
    }
    return out;
}

RegulatorSchedule RegulatorSchedule::geometric(double delta0, double ratio, int count, int order) {
    RegulatorSchedule s;
    s.order = order;
    double d = delta0;
    for (int i = 0; i < count; ++i, d *= ratio) s.deltas.push_back(d);
    s.validate();
    return s;
}

void RegulatorSchedule::validate() const {
    if (deltas.size() < 3) throw std::invalid_argument("regulator schedule needs at least 3 deltas");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw std::invalid_argument("regulator deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("regulator deltas must be strictly decreasing");
    }
    if (order < 1 || static_cast<std::size_t>(order) >= deltas.size())
        throw std::invalid_argument("regulator order must be in [1, deltas-1]");
}

std::pair<double, double> neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw std::invalid_argument("neville: size mismatch");
    std::vector<double> p = y;
    double prev = p[n - 1];
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
        if (m == n - 1) break;
        prev = p[n - m - 1];
    }
    return {p[0], std::abs(p[0] - prev)};
}

RegulatedResult integrate_regulated(const std::function<QuadResult(double)>& damped,
                                    const RegulatorSchedule& schedule) {
    schedule.validate();
    RegulatedResult out;
    double qerr = 0.0;
    std::size_t evals = 0;
    bool ok = true;
    for (double d : schedule.deltas) {
        QuadResult r = damped(d);
        out.samples.push_back(r.value);
        qerr = std::max(qerr, r.abs_err);
        evals += r.evals;
        ok = ok && r.converged;
    }
    const std::size_t k = static_cast<std::size_t>(schedule.order) + 1;
    std::vector<double> xs(schedule.deltas.end() - static_cast<long>(k), schedule.deltas.end());
    std::vector<double> ys(out.samples.end() - static_cast<long>(k), out.samples.end());
    auto [v, e] = neville_at_zero(xs, ys);
    out.result = {v, e + qerr, evals, ok};
    const double scale = std::max(std::abs(v), qerr);
    out.inconclusive = !ok || !std::isfinite(v) || e > 0.05 * std::max(scale, 1e-300);
    out.result.converged = !out.inconclusive;
    return out;
}

RegulatedResult integrate_regulated(const Integrand& f_osc, const RegulatorSchedule& schedule,
                                    double oscillation_scale, double tol) {
    auto damped = [&](double delta) {
        const double X = 41.5 / delta;
        Integrand g = [&](double x) { return f_osc(x) * std::exp(-delta * x); };
        Options o;
        o.rel_tol = tol;
        o.abs_tol = tol * 1e-6;
        double width = X / 200.0;
        if (oscillation_scale > 0.0) width = std::max(M_PI / oscillation_scale * 8.0, X / 4000.0);
        return integrate_panels(g, 0.0, X, std::min(width, X), o);
    };
    return integrate_regulated(damped, schedule);
}

}  // namespace cpforce::quad
