#include "spinyam/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace spinyam {

void Tolerances::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0)) {
        throw std::invalid_argument("tolerances must be non-negative with abs_tol + rel_tol > 0");
    }
    if (max_steps == 0) {
        throw std::invalid_argument("max_steps must be positive");
    }
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms) {
        out[0] += h * c * (*k)[0];
        out[1] += h * c * (*k)[1];
    }
    return out;
}

bool finite(const State& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

// Continuous extension of the Dormand-Prince step (fourth order in theta).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct DenseStep {
    std::array<State, 5> r{};

    DenseStep(double h, const State& y0, const State& y1, const std::array<const State*, 7>& k) {
        for (int i = 0; i < 2; ++i) {
            const double diff = y1[i] - y0[i];
            const double bspl = h * (*k[0])[i] - diff;
            r[0][i] = y0[i];
            r[1][i] = diff;
            r[2][i] = bspl;
            r[3][i] = diff - h * (*k[6])[i] - bspl;
            r[4][i] = h * (d1 * (*k[0])[i] + d3 * (*k[2])[i] + d4 * (*k[3])[i] + d5 * (*k[4])[i] +
                           d6 * (*k[5])[i] + d7 * (*k[6])[i]);
        }
    }

    [[nodiscard]] State at(double theta) const {
        const double th1 = 1 - theta;
        State out{};
        for (int i = 0; i < 2; ++i) out[i] = r[0][i] + theta * (r[1][i] + th1 * (r[2][i] + theta * (r[3][i] + th1 * r[4][i])));
        return out;
    }
};

class SampleSink {
public:
    SampleSink(Trajectory& traj, const IntegrateOptions& opt) : traj_(traj), opt_(opt) {}

    // Returns true when the stop predicate fired.
    bool emit(double t, const State& y) {
        const double e = opt_.energy ? opt_.energy(t, y) : 0.0;
        traj_.samples.push_back({t, y, e});
        return opt_.stop && opt_.stop(traj_.samples.back());
    }

private:
    Trajectory& traj_;
    const IntegrateOptions& opt_;
};

void finish(Trajectory& traj, double dir) {
    if (dir < 0) std::reverse(traj.samples.begin(), traj.samples.end());
}

}  // namespace

Trajectory integrate(const PlanarField& field, const State& y0, std::array<double, 2> t_span,
                     const IntegrateOptions& options) {
    options.tol.validate();
    const double t0 = t_span[0];
    const double t_end = t_span[1];
    if (!std::isfinite(t0) || !std::isfinite(t_end)) {
        throw std::invalid_argument("integration interval must be finite");
    }
    if (!finite(y0)) throw std::invalid_argument("initial state must be finite");
    if (options.sample_dt < 0.0) throw std::invalid_argument("sample_dt must be >= 0");

    Trajectory traj;
    SampleSink sink(traj, options);
    const double dir = t_end >= t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);
    const auto& tol = options.tol;

    auto rhs = [&](double t, const State& y) {
        ++traj.meta.evaluations;
        return field(t, y);
    };
    auto scale = [&](double a, double b) { return tol.abs_tol + tol.rel_tol * std::max(std::abs(a), std::abs(b)); };

    if (sink.emit(t0, y0)) {
        traj.meta.reason = Termination::Stopped;
        return traj;
    }
    if (span == 0.0) return traj;

    double t = t0;
    State y = y0;
    State f = rhs(t, y);
    if (!finite(f)) {
        throw NonFiniteState("vector field is not finite at the initial state", traj);
    }

    // Starting step (Hairer-Norsett-Wanner heuristic).
    double h = options.initial_step;
    if (h <= 0.0) {
        double d0 = 0, d1 = 0;
        for (int i = 0; i < 2; ++i) {
            const double sc = scale(y[i], y[i]);
            d0 += (y[i] / sc) * (y[i] / sc);
            d1 += (f[i] / sc) * (f[i] / sc);
        }
        d0 = std::sqrt(d0 / 2);
        d1 = std::sqrt(d1 / 2);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        const State y1 = axpy(y, dir * h0, {{1.0, &f}});
        const State f1 = rhs(t + dir * h0, y1);
        double d2 = 0;
        for (int i = 0; i < 2; ++i) {
            const double q = (f1[i] - f[i]) / scale(y[i], y[i]);
            d2 += q * q;
        }
        d2 = std::sqrt(d2 / 2) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min({100 * h0, h1, span});
    }
    h = std::min(h, span);

    const double dt = options.sample_dt;
    std::size_t next_grid = 1;  // index of the next uniform-grid sample
    bool last_rejected = false;

    while (dir * (t_end - t) > 0) {
        if (traj.meta.accepted_steps + traj.meta.rejected_steps >= tol.max_steps) {
            traj.meta.reason = Termination::StepLimit;
            finish(traj, dir);
            throw StepLimitExceeded("integrator exceeded max_steps", std::move(traj));
        }
        const double min_step = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        bool last = false;
        if (h >= std::abs(t_end - t) * (1 - 1e-12)) {
            h = std::abs(t_end - t);
            last = true;
        }
        const double hs = dir * h;

        const State k1 = f;
        const State k2 = rhs(t + c2 * hs, axpy(y, hs, {{a21, &k1}}));
        const State k3 = rhs(t + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(t + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(t + c5 * hs, axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs(t + hs, axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = axpy(y, hs, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const double t_new = last ? t_end : t + hs;
        const State k7 = rhs(t_new, y_new);

        double err = 0;
        bool ok = finite(y_new) && finite(k7);
        if (ok) {
            for (int i = 0; i < 2; ++i) {
                const double ei =
                    hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double q = ei / scale(y[i], y_new[i]);
                err += q * q;
            }
            err = std::sqrt(err / 2);
            ok = std::isfinite(err);
        }
        if (!ok) {
            ++traj.meta.rejected_steps;
            h *= 0.2;
            last_rejected = true;
            if (h < min_step) {
                traj.meta.reason = Termination::NonFinite;
                finish(traj, dir);
                throw NonFiniteState("state became non-finite", std::move(traj));
            }
            continue;
        }

        if (err > 1.0) {
            ++traj.meta.rejected_steps;
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            last_rejected = true;
            if (h < min_step) {
                traj.meta.reason = Termination::NonFinite;
                finish(traj, dir);
                throw NonFiniteState("step size underflow", std::move(traj));
            }
            continue;
        }

        ++traj.meta.accepted_steps;
        bool stopped = false;
        if (dt > 0.0) {
            const DenseStep dense(t_new - t, y, y_new, {&k1, &k2, &k3, &k4, &k5, &k6, &k7});
            while (true) {
                const double tg = t0 + dir * static_cast<double>(next_grid) * dt;
                if (dir * (tg - t_new) > 1e-12 * dt) break;
                if (dir * (t_end - tg) <= 1e-12 * dt) break;  // end point is emitted below
                const State yg = dense.at((tg - t) / (t_new - t));
                ++next_grid;
                if (sink.emit(tg, yg)) {
                    stopped = true;
                    break;
                }
            }
            if (!stopped && last) stopped = sink.emit(t_new, y_new);
        } else {
            stopped = sink.emit(t_new, y_new);
        }

        t = t_new;
        y = y_new;
        f = k7;
        if (stopped) {
            traj.meta.reason = Termination::Stopped;
            finish(traj, dir);
            return traj;
        }

        double grow = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
        if (last_rejected) grow = std::min(grow, 1.0);
        last_rejected = false;
        h *= grow;
    }
    traj.meta.reason = Termination::Completed;
    finish(traj, dir);
    return traj;
}

double find_root(const std::function<double(double)>& f, double a, double b, const RootOptions& options) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0) == (fb > 0)) {
        throw NoSignChange("find_root: f(a) and f(b) must have opposite signs");
    }
    const double eps = std::numeric_limits<double>::epsilon();
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < options.max_iter; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2 * eps * std::abs(b) + 0.5 * options.tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2 * xm * qa * (qa - r) - (b - a) * (r - 1));
                q = (qa - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2 * p < std::min(3 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
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
        b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb)) throw NonConvergence("find_root: function not finite inside bracket");
    }
    throw NonConvergence("find_root: iteration limit reached");
}

QuadratureResult quad_chebyshev_endpoint(const std::function<double(double)>& g,
                                         const QuadratureOptions& options) {
    auto rule = [&](std::size_t n) {
        double sum = 0.0;
        const double step = std::numbers::pi / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            // (1 + cos phi) / 2 written as a squared sine keeps small tau exact.
            const double sn = std::sin((static_cast<double>(i) + 0.5) * step / 2);
            sum += g(sn * sn);
        }
        return sum * step;
    };
    std::size_t n = std::max<std::size_t>(options.min_nodes, 1);
    double prev = rule(n);
    if (!std::isfinite(prev)) throw NonConvergence("quad_chebyshev_endpoint: integrand not finite");
    while (2 * n <= options.max_nodes) {
        n *= 2;
        const double cur = rule(n);
        if (!std::isfinite(cur)) throw NonConvergence("quad_chebyshev_endpoint: integrand not finite");
        if (std::abs(cur - prev) <= options.tol * std::max(1.0, std::abs(cur))) {
            return {cur, n};
        }
        prev = cur;
    }
    throw NonConvergence("quad_chebyshev_endpoint: node cap reached");
}

namespace {

constexpr std::array<double, 5> kGl10Nodes{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                           0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGl10Weights{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                             0.1494513491505806, 0.0666713443086881};

double gl10(const std::function<double(double)>& f, double a, double b, std::size_t& evals) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < kGl10Nodes.size(); ++i) {
        sum += kGl10Weights[i] * (f(mid - half * kGl10Nodes[i]) + f(mid + half * kGl10Nodes[i]));
    }
    evals += 10;
    return sum * half;
}

double adaptive_panel(const std::function<double(double)>& f, double a, double b, double whole, double tol,
                      std::size_t max_evals, std::size_t& evals, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gl10(f, a, mid, evals), right = gl10(f, mid, b, evals);
    const double halves = left + right;
    if (!std::isfinite(halves)) throw NonConvergence("quad_chebyshev_graded: integrand not finite");
    if (std::abs(halves - whole) <= tol * std::abs(halves) || depth >= 40) return halves;
    if (evals > max_evals) throw NonConvergence("quad_chebyshev_graded: evaluation cap reached");
    return adaptive_panel(f, a, mid, left, tol, max_evals, evals, depth + 1) +
           adaptive_panel(f, mid, b, right, tol, max_evals, evals, depth + 1);
}

}  // namespace

QuadratureResult quad_chebyshev_graded(const std::function<double(double)>& g, double layer,
                                       const QuadratureOptions& options) {
    if (!(layer > 0.0)) throw std::invalid_argument("quad_chebyshev_graded: layer must be positive");
    const std::function<double(double)> f = [&](double theta) {
        const double sn = std::sin(theta / 2);
        return g(sn * sn);
    };
    std::vector<double> edges{0.0};
    for (double x = layer / 16; x < 0.5; x *= 2) edges.push_back(x);
    const double pi = std::numbers::pi;
    const double start = edges.back();
    const auto uniform = static_cast<std::size_t>(std::ceil((pi - start) / 0.25));
    for (std::size_t i = 1; i <= uniform; ++i) edges.push_back(start + (pi - start) * static_cast<double>(i) / uniform);
    edges.back() = pi;

    std::size_t evals = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double whole = gl10(f, edges[i], edges[i + 1], evals);
        sum += adaptive_panel(f, edges[i], edges[i + 1], whole, options.tol, options.max_nodes, evals, 0);
    }
    return {sum, evals};
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line needs at least two paired points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("CubicSpline needs >= 2 paired knots");
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("CubicSpline knots must increase strictly");
    }
    m_.assign(n, 0.0);
    if (n == 2) return;
    // Thomas algorithm for the natural-spline moment system.
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x_[i] - x_[i - 1];
        const double h1 = x_[i + 1] - x_[i];
        diag[i] = 2 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
        if (i > 1) {
            const double w = h0 / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    }
}

std::size_t CubicSpline::interval(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(i, x_.size() - 2);
}

double CubicSpline::operator()(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6;
}

double CubicSpline::derivative(double x) const {
    const std::size_t i = interval(x);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - x) / h;
    const double b = (x - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h + ((1 - 3 * a * a) * m_[i] + (3 * b * b - 1) * m_[i + 1]) * h / 6;
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic needs >= 2 paired knots");
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = x_[i + 1] - x_[i];
        if (!(h > 0)) throw std::invalid_argument("MonotoneCubic knots must increase strictly");
        delta[i] = (y_[i + 1] - y_[i]) / h;
    }
    d_.assign(n, 0.0);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d_[i] = (delta[i - 1] * delta[i] <= 0) ? 0.0 : 0.5 * (delta[i - 1] + delta[i]);
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) {
            d_[i] = d_[i + 1] = 0.0;
            continue;
        }
        const double a = d_[i] / delta[i];
        const double b = d_[i + 1] / delta[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            d_[i] = tau * a * delta[i];
            d_[i + 1] = tau * b * delta[i];
        }
    }
}

double MonotoneCubic::operator()(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    const double s = (x - x_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * h * d_[i] + (-2 * s3 + 3 * s2) * y_[i + 1] +
           (s3 - s2) * h * d_[i + 1];
}

}  // namespace spinyam
