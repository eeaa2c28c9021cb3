#include "hyperfade/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace hyperfade::numerics {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLnSqrt2Pi = 0.918938533204672741780329736405617639;

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

std::complex<double> lanczos_ln_gamma(std::complex<double> z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    std::complex<double> sum = kLanczos[0];
    for (int k = 1; k < 9; ++k) sum += kLanczos[k] / (z + double(k));
    const std::complex<double> base = z + 7.5;
    return kLnSqrt2Pi + (z + 0.5) * std::log(base) - base + std::log(sum);
}

// log(sin(pi z)) stable for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z) {
    const std::complex<double> w = kPi * z;
    const double im = w.imag();
    const std::complex<double> i(0.0, 1.0);
    if (im > 15.0) {
        // sin w ~ (i/2) e^{-iw}
        return -i * w - std::log(2.0) + i * (kPi / 2.0) +
               std::log(1.0 - std::exp(2.0 * i * w));
    }
    if (im < -15.0) {
        return i * w - std::log(2.0) - i * (kPi / 2.0) +
               std::log(1.0 - std::exp(-2.0 * i * w));
    }
    return std::log(std::sin(w));
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("x", "ln_gamma requires x > 0");
    return std::lgamma(x);
}

std::complex<double> ln_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw DomainError("z", "ln_gamma pole at non-positive integer");
    if (z.real() >= 0.5) return lanczos_ln_gamma(z);
    // reflection: ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
    return std::log(kPi) - log_sin_pi(z) - lanczos_ln_gamma(1.0 - z);
}

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("x", "digamma requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series with Bernoulli numbers B2..B14
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                    inv2 * (1.0 / 252.0 +
                    inv2 * (-1.0 / 240.0 +
                    inv2 * (1.0 / 132.0 +
                    inv2 * (-691.0 / 32760.0 +
                    inv2 * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

namespace {

// series representation, preferred for x < a + 1
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
}

// continued fraction (modified Lentz), preferred for x >= a + 1; returns Q
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(a * std::log(x) - x - std::lgamma(a));
}

}  // namespace

double reg_lower_inc_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("a", "reg_lower_inc_gamma requires a > 0");
    if (!(x >= 0.0)) throw DomainError("x", "reg_lower_inc_gamma requires x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double reg_upper_inc_gamma(double a, double x) {
    if (!(a > 0.0)) throw DomainError("a", "reg_upper_inc_gamma requires a > 0");
    if (!(x >= 0.0)) throw DomainError("x", "reg_upper_inc_gamma requires x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (G7, K15)
// ---------------------------------------------------------------------------

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double lo, hi, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(mid);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {lo, hi, kron, std::abs(kron - gauss)};
}

QuadratureResult integrate_adaptive_finite(const std::function<double(double)>& f,
                                           double lo, double hi,
                                           const QuadratureOptions& opts) {
    std::priority_queue<Segment> segments;
    Segment s0 = gk15(f, lo, hi);
    double total = s0.value;
    double total_err = s0.error;
    long evals = 15;
    segments.push(s0);
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (total_err > target() && evals + 30 <= opts.max_evaluations) {
        Segment worst = segments.top();
        segments.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {  // interval at fp resolution
            segments.push({worst.lo, worst.hi, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        Segment a = gk15(f, worst.lo, mid);
        Segment b = gk15(f, mid, worst.hi);
        evals += 30;
        total += a.value + b.value - worst.value;
        total_err += a.error + b.error - worst.error;
        segments.push(a);
        segments.push(b);
    }
    if (total_err > target())
        throw ConvergenceError("integrate_adaptive: evaluation budget exhausted",
                               total, total_err);
    return {total, total_err, evals};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureOptions& opts) {
    if (!(lo < hi)) throw DomainError("lo", "integrate_adaptive requires lo < hi");
    if (!(opts.rel_tol > 0.0) && !(opts.abs_tol > 0.0))
        throw DomainError("tol", "integrate_adaptive requires a positive tolerance");
    if (std::isinf(hi)) {
        // x = lo + t/(1-t), dx = dt/(1-t)^2
        auto g = [&f, lo](double t) {
            const double om = 1.0 - t;
            if (om <= 0.0) return 0.0;
            const double x = lo + t / om;
            const double jac = 1.0 / (om * om);
            const double v = f(x);
            return v * jac;
        };
        return integrate_adaptive_finite(g, 0.0, 1.0, opts);
    }
    return integrate_adaptive_finite(f, lo, hi, opts);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double rel_tol) {
    QuadratureOptions opts;
    opts.rel_tol = rel_tol;
    return integrate_adaptive(f, lo, hi, opts);
}

// ---------------------------------------------------------------------------
// tanh-sinh on (0,1)
// ---------------------------------------------------------------------------

QuadratureResult integrate_unit_tanh_sinh(
    const std::function<double(double, double)>& f, double tol) {
    // x(t) = sigma(2w), 1-x = sigma(-2w), w = (pi/2) sinh t
    // dx/dt = (pi/4) cosh t sech^2(w)
    const double t_max = 4.0;
    auto eval_at = [&f](double t, double& w_out) {
        const double w = (kPi / 2.0) * std::sinh(t);
        w_out = w;
        const double e2 = std::exp(-2.0 * std::abs(w));
        const double x_near = 1.0 / (1.0 + std::exp(-2.0 * w));      // -> 1 as w->inf
        const double x_far = e2 / (1.0 + e2);                        // accurate tail
        double x, xbar;
        if (w >= 0.0) {
            x = x_near;
            xbar = x_far;
        } else {
            x = x_far;
            xbar = 1.0 / (1.0 + std::exp(2.0 * w));
        }
        const double sech = 2.0 * std::exp(-std::abs(w)) / (1.0 + e2);
        const double weight = (kPi / 4.0) * std::cosh(t) * sech * sech;
        if (weight == 0.0) return 0.0;
        return weight * f(x, xbar);
    };

    double h = 1.0;
    double w_dummy;
    double sum = eval_at(0.0, w_dummy);
    long evals = 1;
    for (int k = 1; k * h <= t_max; ++k) {
        sum += eval_at(k * h, w_dummy) + eval_at(-k * h, w_dummy);
        evals += 2;
    }
    double integral = h * sum;
    double prev = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= 10; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) {
            add += eval_at(t, w_dummy) + eval_at(-t, w_dummy);
            evals += 2;
        }
        sum += add;
        prev = integral;
        integral = h * sum;
        const double err = std::abs(integral - prev);
        if (level >= 3 && err <= tol * std::max(1.0, std::abs(integral)))
            return {integral, err, evals};
    }
    return {integral, std::abs(integral - prev), evals};
}

// ---------------------------------------------------------------------------
// Vertical contour
// ---------------------------------------------------------------------------

double integrate_vertical_contour(
    const std::function<std::complex<double>(std::complex<double>)>& theta,
    double c, double tol, bool conjugate_symmetric) {
    if (!(tol > 0.0)) throw DomainError("tol", "integrate_vertical_contour requires tol > 0");

    QuadratureOptions opts;
    opts.rel_tol = tol / 8.0;
    opts.abs_tol = 0.0;
    opts.max_evaluations = 400'000;

    auto integrate_half = [&](double sign) {
        auto u = [&theta, c, sign](double t) {
            return theta(std::complex<double>(c, sign * t)).real();
        };
        double acc = 0.0;
        double t0 = 0.0, t1 = 8.0;
        int quiet = 0;
        for (int k = 0; k < 14; ++k) {
            QuadratureOptions seg_opts = opts;
            seg_opts.abs_tol = std::max(tol * std::max(std::abs(acc), 1e-300) / 16.0, 1e-300);
            double ext;
            try {
                ext = integrate_adaptive_finite(u, t0, t1, seg_opts).value;
            } catch (const ConvergenceError& e) {
                ext = e.best_estimate();
            }
            acc += ext;
            const double scale = std::max(std::abs(acc), 1e-300);
            if (std::abs(ext) <= tol * scale / 4.0) {
                if (++quiet >= 2) return acc;
            } else {
                quiet = 0;
            }
            t0 = t1;
            t1 *= 2.0;
        }
        throw ContourError(
            "integrate_vertical_contour: integrand decay not detected before T limit");
    };

    double upper = integrate_half(+1.0);
    double line = conjugate_symmetric ? 2.0 * upper : upper + integrate_half(-1.0);
    return line / (2.0 * kPi);
}

// ---------------------------------------------------------------------------
// Brent root finding
// ---------------------------------------------------------------------------

double find_root_bracketed(const std::function<double(double)>& f, double lo,
                           double hi, double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!(fa * fb < 0.0))
        throw BracketError("find_root_bracketed: f(lo) and f(hi) must differ in sign");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic / secant step
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

// ---------------------------------------------------------------------------
// Spherical Bessel and Legendre-Fourier moments
// ---------------------------------------------------------------------------

void spherical_bessel_jn(int nmax, double x, double* out) {
    if (nmax < 0) return;
    if (x < 0.0) throw DomainError("x", "spherical_bessel_jn requires x >= 0");
    if (x < 1e-8) {
        // j_n(x) ~ x^n / (2n+1)!! (1 - x^2/(2(2n+3)))
        double dfact = 1.0;  // (2n+1)!!
        double xn = 1.0;
        for (int n = 0; n <= nmax; ++n) {
            if (n > 0) {
                dfact *= (2.0 * n + 1.0);
                xn *= x;
            }
            out[n] = xn / ((n == 0) ? 1.0 : dfact) * (1.0 - x * x / (2.0 * (2.0 * n + 3.0)));
        }
        out[0] = 1.0 - x * x / 6.0;
        return;
    }
    const double j0 = std::sin(x) / x;
    if (nmax == 0) {
        out[0] = j0;
        return;
    }
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    if (x > double(nmax)) {
        // upward recurrence, stable for x > n
        out[0] = j0;
        out[1] = j1;
        for (int n = 1; n < nmax; ++n)
            out[n + 1] = (2.0 * n + 1.0) / x * out[n] - out[n - 1];
        return;
    }
    // downward (Miller) recurrence from a padded start, normalized by j0.
    // Only reached for x < nmax, so the start index stays small.
    const int start = nmax + 16 + int(x);
    constexpr int kStackCap = 96;
    double stack_buf[kStackCap];
    std::vector<double> heap_buf;
    double* tmp = stack_buf;
    if (start + 2 > kStackCap) {
        heap_buf.assign(std::size_t(start) + 2, 0.0);
        tmp = heap_buf.data();
    }
    tmp[start + 1] = 0.0;
    tmp[start] = 1e-30;
    for (int n = start; n >= 1; --n) {
        tmp[n - 1] = (2.0 * n + 1.0) / x * tmp[n] - tmp[n + 1];
        if (std::abs(tmp[n - 1]) > 1e250) {
            for (int m = n - 1; m <= start + 1; ++m) tmp[m] *= 1e-250;
        }
    }
    const double scale = j0 / tmp[0];
    for (int n = 0; n <= nmax; ++n) out[n] = tmp[n] * scale;
}

void legendre_fourier_moments(int nmax, double theta, std::complex<double>* out) {
    const double a = std::abs(theta);
    constexpr int kStackCap = 64;
    double stack_buf[kStackCap];
    std::vector<double> heap_buf;
    double* j = stack_buf;
    if (nmax + 1 > kStackCap) {
        heap_buf.resize(std::size_t(nmax) + 1);
        j = heap_buf.data();
    }
    spherical_bessel_jn(nmax, a, j);
    static const std::complex<double> ipow[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    for (int n = 0; n <= nmax; ++n) {
        std::complex<double> v = 2.0 * ipow[n % 4] * j[n];
        out[n] = (theta >= 0.0) ? v : std::conj(v);
    }
}

// ---------------------------------------------------------------------------
// OscillatoryGrid
// ---------------------------------------------------------------------------

namespace {

struct GaussLegendreRule {
    std::vector<double> x, w;
};

// Newton iteration on Legendre polynomials; deterministic, ~1e-15 accurate.
GaussLegendreRule make_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[n - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[n - 1 - i] = rule.w[i];
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

// projection matrix: coeff_j = sum_k proj[j*n+k] * g(x_k)
std::vector<double> make_projection(const GaussLegendreRule& rule) {
    const int n = int(rule.x.size());
    std::vector<double> proj(std::size_t(n) * n);
    for (int k = 0; k < n; ++k) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            proj[std::size_t(j) * n + k] = (2.0 * j + 1.0) / 2.0 * rule.w[k] * p0;
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * rule.x[k] * p1 - j * p2) / (j + 1.0);
        }
    }
    return proj;
}

const std::vector<double>& projection_matrix(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_projection(gauss_legendre_rule(n))).first;
    return it->second;
}

}  // namespace

OscillatoryGrid::OscillatoryGrid(std::vector<double> edges, int points_per_panel)
    : edges_(std::move(edges)), n_(points_per_panel) {
    if (edges_.size() < 2) throw DomainError("edges", "OscillatoryGrid needs >= 1 panel");
    for (std::size_t k = 0; k + 1 < edges_.size(); ++k)
        if (!(edges_[k] < edges_[k + 1]))
            throw DomainError("edges", "OscillatoryGrid edges must be strictly increasing");
    const auto& rule = gauss_legendre_rule(n_);
    nodes_.resize(panel_count() * std::size_t(n_));
    for (std::size_t p = 0; p < panel_count(); ++p) {
        const double mid = 0.5 * (edges_[p] + edges_[p + 1]);
        const double half = 0.5 * (edges_[p + 1] - edges_[p]);
        for (int k = 0; k < n_; ++k) nodes_[p * n_ + k] = mid + half * rule.x[k];
    }
}

std::vector<std::complex<double>> OscillatoryGrid::project(
    const std::vector<std::complex<double>>& values) const {
    if (values.size() != nodes_.size())
        throw DomainError("values", "OscillatoryGrid::project size mismatch");
    const auto& proj = projection_matrix(n_);
    std::vector<std::complex<double>> coeffs(values.size());
    for (std::size_t p = 0; p < panel_count(); ++p) {
        const std::complex<double>* v = values.data() + p * n_;
        std::complex<double>* c = coeffs.data() + p * n_;
        for (int j = 0; j < n_; ++j) {
            std::complex<double> acc = 0.0;
            const double* row = proj.data() + std::size_t(j) * n_;
            for (int k = 0; k < n_; ++k) acc += row[k] * v[k];
            c[j] = acc;
        }
    }
    return coeffs;
}

std::complex<double> OscillatoryGrid::transform(
    const std::vector<std::complex<double>>& coeffs, double w,
    std::size_t first_panel, std::size_t last_panel) const {
    if (coeffs.size() != nodes_.size())
        throw DomainError("coeffs", "OscillatoryGrid::transform size mismatch");
    std::vector<std::complex<double>> mu(n_);
    std::complex<double> acc = 0.0;
    for (std::size_t p = first_panel; p < last_panel; ++p) {
        const double mid = 0.5 * (edges_[p] + edges_[p + 1]);
        const double half = 0.5 * (edges_[p + 1] - edges_[p]);
        legendre_fourier_moments(n_ - 1, w * half, mu.data());
        const std::complex<double>* c = coeffs.data() + p * n_;
        std::complex<double> inner = 0.0;
        for (int j = 0; j < n_; ++j) inner += c[j] * mu[j];
        const std::complex<double> phase = std::exp(std::complex<double>(0.0, w * mid));
        acc += half * phase * inner;
    }
    return acc;
}

}  // namespace hyperfade::numerics
