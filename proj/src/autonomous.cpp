#include "spinyam/autonomous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace spinyam {

AutonomousParams AutonomousParams::make(int m) {
    if (m < 2) throw std::invalid_argument("autonomous system needs m >= 2, got " + std::to_string(m));
    const double md = m;
    return {m, (md - 1) / 2, md / (md - 1)};
}

double hamiltonian(const AutonomousParams& par, double u, double v) {
    const double md = par.m;
    return -par.lambda * u * v + (md - 1) / (2 * md) * std::pow(u * u + v * v, par.p);
}

State vector_field(const AutonomousParams& par, const State& y) {
    const double n = std::pow(y[0] * y[0] + y[1] * y[1], 1.0 / (par.m - 1));
    return {n * y[1] - par.lambda * y[0], par.lambda * y[1] - n * y[0]};
}

PlanarField autonomous_field(const AutonomousParams& par) {
    return [par](double, const State& y) { return vector_field(par, y); };
}

EnergyFn autonomous_energy(const AutonomousParams& par) {
    return [par](double, const State& y) { return hamiltonian(par, y[0], y[1]); };
}

std::array<State, 3> equilibria(const AutonomousParams& par) {
    const double md = par.m;
    const double c = std::pow(md - 1, (md - 1) / 2) / std::pow(2.0, md / 2);
    return {State{0.0, 0.0}, State{c, c}, State{-c, -c}};
}

namespace {

double homoclinic_u(const AutonomousParams& par, double t) {
    const double md = par.m;
    const double c = std::pow(md, (md - 1) / 2) / std::pow(2.0, md / 2);
    return c * std::exp(t / 2) / std::pow(std::cosh(t), md / 2);
}

}  // namespace

State homoclinic(const AutonomousParams& par, double t) { return {homoclinic_u(par, t), homoclinic_u(par, -t)}; }

State homoclinic_derivative(const AutonomousParams& par, double t) {
    const double half_m = par.m / 2.0;
    const double th = std::tanh(t);
    return {homoclinic_u(par, t) * (0.5 - half_m * th), -homoclinic_u(par, -t) * (0.5 + half_m * th)};
}

double k0(const AutonomousParams& par) { return std::pow(par.lambda, par.m - 1) / par.m; }

double f_k(const AutonomousParams& par, double K, double s) {
    const double q = std::pow(s, par.p) / (par.lambda * par.p) + K;
    return s * s - q * q;
}

FkRoots fk_zeros(const AutonomousParams& par, double K) {
    const double kmax = k0(par);
    if (!(K > 0.0) || !(K < kmax * (1 - kDegenerateMargin))) {
        throw KOutOfRange("K must lie in (0, K0) with K0 = " + std::to_string(kmax));
    }
    // Both zeros solve g(s) = 0, where g is concave with maximum K0 - K at s_star.
    const double lp = par.lambda * par.p;
    auto g = [&](double s) { return s - std::pow(s, par.p) / lp - K; };
    const double s_star = std::pow(par.lambda, par.m - 1);
    const RootOptions opt{1e-16, 400};
    const double s0 = find_root(g, 0.0, s_star, opt);
    double hi = 2 * s_star;
    while (g(hi) >= 0) hi *= 2;
    const double s1 = find_root(g, s_star, hi, opt);
    return {s0, s1};
}

namespace {

// Regular part of the half-period integrand after t = s^{1/(m-1)} and
// t = t0 + (t1 - t0) tau.
struct PeriodIntegrand {
    int m;
    double K;
    double t0, t1;
    std::vector<double> a;  // coefficients of the cofactor, highest degree first

    PeriodIntegrand(const AutonomousParams& par, double K_, const FkRoots& roots) : m(par.m), K(K_) {
        t0 = std::pow(roots.s0, 1.0 / (m - 1));
        t1 = std::pow(roots.s1, 1.0 / (m - 1));
        // t^m - (m/2) t^{m-1} + mK/2 = (t - t0)(t - t1) sum_j a_j t^{m-2-j}
        const double half_m = m / 2.0;
        double h_prev = 0.0, h = 0.0, t1_pow = 1.0;
        for (int j = 0; j <= m - 2; ++j) {
            h = (j == 0) ? 1.0 : t0 * h_prev + t1_pow;
            a.push_back(h - half_m * h_prev);
            h_prev = h;
            t1_pow *= t1;
        }
    }

    [[nodiscard]] double t_of_tau(double tau) const { return t0 + (t1 - t0) * tau; }

    [[nodiscard]] double poly(double t) const {
        double q = 0.0;
        for (double c : a) q = q * t + c;
        const double r = std::pow(t, m) + (m / 2.0) * std::pow(t, m - 1) + m * K / 2;
        return q * r;
    }

    [[nodiscard]] double operator()(double tau) const {
        const double t = t_of_tau(tau);
        return (m / 2.0) * std::pow(t, m - 2) / std::sqrt(poly(t));
    }

    [[nodiscard]] double tau_of_theta(double theta) const {
        const double sn = std::sin(theta / 2);
        return sn * sn;
    }
};

// Ratio t0 / (t1 - t0) below which the graded rule takes over.
constexpr double kBoundaryLayerRatio = 1e-6;

double half_period_impl(const PeriodIntegrand& integrand, const QuadratureOptions& quad) {
    const auto g = [&](double tau) { return integrand(tau); };
    const double ratio = integrand.t0 / (integrand.t1 - integrand.t0);
    try {
        if (ratio < kBoundaryLayerRatio) return quad_chebyshev_graded(g, std::sqrt(ratio), quad).value;
        return quad_chebyshev_endpoint(g, quad).value;
    } catch (const NonConvergence& e) {
        throw QuadratureFailure(std::string("half_period: ") + e.what());
    }
}

constexpr std::array<double, 5> kGlNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                         0.9061798459386640};
constexpr std::array<double, 5> kGlWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                           0.4786286704993665, 0.2369268850561891};

// Cumulative elapsed time as a function of the angle theta, tau = (1 - cos theta) / 2.
class ElapsedTime {
public:
    ElapsedTime(const PeriodIntegrand& f, double total) : f_(f) {
        std::size_t cells = 1024;
        for (;;) {
            build(cells);
            if (std::abs(cum_.back() - total) <= 1e-12 * total || cells >= (std::size_t{1} << 20)) break;
            cells *= 2;
        }
        std::vector<double> thetas(theta_);
        inverse_ = MonotoneCubic(cum_, thetas);
    }

    [[nodiscard]] double rate(double theta) const { return f_(f_.tau_of_theta(theta)); }

    [[nodiscard]] double total() const { return cum_.back(); }

    // Angle in [0, pi] at which the elapsed time equals s.
    [[nodiscard]] double angle(double s) const {
        if (s <= 0.0) return 0.0;
        if (s >= cum_.back()) return std::numbers::pi;
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        const std::size_t j = static_cast<std::size_t>(it - cum_.begin()) - 1;
        const double lo = theta_[j], hi = theta_[j + 1];
        double th = std::clamp(inverse_(s), lo, hi);
        for (int iter = 0; iter < 50; ++iter) {
            const double resid = cum_[j] + integrate(lo, th) - s;
            const double step = resid / rate(th);
            const double next = std::clamp(th - step, lo, hi);
            if (std::abs(next - th) <= 1e-15 * std::max(1.0, th)) {
                th = next;
                break;
            }
            th = next;
        }
        return th;
    }

private:
    [[nodiscard]] double integrate(double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) sum += kGlWeights[i] * rate(mid + half * kGlNodes[i]);
        return sum * half;
    }

    void build(std::size_t cells) {
        theta_.assign(cells + 1, 0.0);
        cum_.assign(cells + 1, 0.0);
        for (std::size_t j = 0; j <= cells; ++j) theta_[j] = std::numbers::pi * static_cast<double>(j) / cells;
        theta_.back() = std::numbers::pi;
        for (std::size_t j = 0; j < cells; ++j) cum_[j + 1] = cum_[j] + integrate(theta_[j], theta_[j + 1]);
    }

    const PeriodIntegrand& f_;
    std::vector<double> theta_, cum_;
    MonotoneCubic inverse_;
};

}  // namespace

double half_period(const AutonomousParams& par, double K, const QuadratureOptions& quad) {
    const FkRoots roots = fk_zeros(par, K);
    return half_period_impl(PeriodIntegrand(par, K, roots), quad);
}

namespace {

// Time-parametrised periodic orbit rebuilt from the quadrature.
class QuadratureOrbit {
public:
    QuadratureOrbit(const AutonomousParams& par, double K)
        : par_(par), roots_(fk_zeros(par, K)), f_(par, K, roots_), eta_(half_period_impl(f_, {})), clock_(f_, eta_) {}
    QuadratureOrbit(const QuadratureOrbit&) = delete;
    QuadratureOrbit& operator=(const QuadratureOrbit&) = delete;

    [[nodiscard]] const FkRoots& roots() const { return roots_; }
    [[nodiscard]] double half_period() const { return eta_; }

    // State at any time; time 0 is the point u = v closest to the origin.
    [[nodiscard]] State at(double time) const {
        const double period = 2 * eta_;
        double phase = std::fmod(time, period);
        if (phase < 0) phase += period;
        // The second half of the period mirrors the first with u and v exchanged.
        const double theta = phase <= eta_ ? clock_.angle(phase * clock_.total() / eta_)
                                           : 2 * std::numbers::pi - clock_.angle((period - phase) * clock_.total() / eta_);
        const double t = f_.t_of_tau(f_.tau_of_theta(theta));
        const double z = std::pow(t, par_.m - 1);
        const double w = -(f_.t1 - f_.t0) * std::sin(theta) * std::sqrt(f_.poly(t)) / par_.m;
        return {std::sqrt(std::max(0.0, (z + w) / 2)), std::sqrt(std::max(0.0, (z - w) / 2))};
    }

private:
    AutonomousParams par_;
    FkRoots roots_;
    PeriodIntegrand f_;
    double eta_;
    ElapsedTime clock_;
};

}  // namespace

OrbitSpec orbit_reconstruct(const AutonomousParams& par, double K, std::size_t n_samples) {
    if (n_samples < 2) throw std::invalid_argument("orbit_reconstruct needs at least two samples");
    const QuadratureOrbit orbit(par, K);
    OrbitSpec spec;
    spec.m = par.m;
    spec.K = K;
    spec.s0 = orbit.roots().s0;
    spec.s1 = orbit.roots().s1;
    spec.half_period = orbit.half_period();
    spec.energy = -par.lambda * K / 2;

    const double eta = spec.half_period;
    const auto n = static_cast<double>(n_samples - 1);
    spec.trajectory.samples.reserve(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double time = (i + 1 == n_samples) ? 2 * eta : 2 * eta * static_cast<double>(i) / n;
        const State y = time == 2 * eta ? orbit.at(0.0) : orbit.at(time);
        spec.trajectory.samples.push_back({time, y, hamiltonian(par, y[0], y[1])});
        if (time <= eta) spec.z_samples.push_back(y[0] * y[0] + y[1] * y[1]);
    }
    spec.trajectory.meta.reason = Termination::Completed;
    return spec;
}

Trajectory periodic_orbit_samples(const AutonomousParams& par, double K, std::span<const double> times) {
    const QuadratureOrbit orbit(par, K);
    Trajectory traj;
    traj.samples.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("sample times must increase strictly");
        const State y = orbit.at(times[i]);
        traj.samples.push_back({times[i], y, hamiltonian(par, y[0], y[1])});
    }
    return traj;
}

SolutionsCount solutions_count(const AutonomousParams& par, double T, const SolutionsOptions& options) {
    if (!(T > 0.0)) throw std::invalid_argument("solutions_count needs T > 0");
    if (options.grid_size < 2) throw std::invalid_argument("solutions_count needs at least two grid points");
    const double kmax = k0(par);
    const double x_lo = std::log(options.k_min_rel / (1 - options.k_min_rel));
    const double top = 1 - 1e-8;
    const double x_hi = std::log(top / (1 - top));
    const std::size_t n = options.grid_size;

    std::vector<double> ks(n), etas(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        ks[i] = kmax / (1 + std::exp(-x));
        try {
            etas[i] = half_period(par, ks[i]);
        } catch (const QuadratureFailure&) {
            etas[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    SolutionsCount out;
    out.min_half_period = std::numeric_limits<double>::infinity();
    out.max_half_period = 0.0;
    for (double e : etas) {
        if (std::isnan(e)) continue;
        out.min_half_period = std::min(out.min_half_period, e);
        out.max_half_period = std::max(out.max_half_period, e);
    }

    for (int k = 1;; ++k) {
        const double target = T / k;
        if (target < out.min_half_period) break;
        PeriodLevel level{k, target, {}, false};
        if (target > out.max_half_period) {
            out.out_of_grid.push_back(k);
            continue;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double a = etas[i] - target, b = etas[i + 1] - target;
            if (std::isnan(a) || std::isnan(b)) continue;
            if (a == 0.0) {
                level.roots.push_back({ks[i], etas[i]});
                continue;
            }
            if ((a > 0) == (b > 0) || b == 0.0) continue;
            try {
                const double K = find_root([&](double kk) { return half_period(par, kk) - target; }, ks[i], ks[i + 1],
                                           {1e-15 * ks[i], 200});
                level.roots.push_back({K, half_period(par, K)});
            } catch (const NumericsError&) {
                // An unresolved bracket is not reported as a solution.
            }
        }
        if (etas.back() - target == 0.0) level.roots.push_back({ks.back(), etas.back()});
        level.multiple = level.roots.size() > 1;
        if (!level.roots.empty()) ++out.count;
        out.levels.push_back(std::move(level));
    }
    return out;
}

}  // namespace spinyam
