#include "spinyam/dissipative.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

namespace spinyam {

DissipativeParams DissipativeParams::make(int m) {
    if (m < 3) throw std::invalid_argument("dissipative system needs m >= 3, got " + std::to_string(m));
    return {m, (m - 2) / 2.0};
}

namespace {

double weight(const DissipativeParams& par, double t) { return std::pow(std::cosh(t), -1.0 / (par.m - 1)); }

}  // namespace

double hamiltonian_t(const DissipativeParams& par, double t, double u, double v) {
    const double md = par.m;
    return -par.kappa * u * v + (md - 1) / (2 * md) * weight(par, t) * std::pow(u * u + v * v, md / (md - 1));
}

State vector_field_t(const DissipativeParams& par, double t, const State& y) {
    const double n = weight(par, t) * std::pow(y[0] * y[0] + y[1] * y[1], 1.0 / (par.m - 1));
    return {n * y[1] - par.kappa * y[0], par.kappa * y[1] - n * y[0]};
}

PlanarField dissipative_field(const DissipativeParams& par) {
    return [par](double t, const State& y) { return vector_field_t(par, t, y); };
}

EnergyFn dissipative_energy(const DissipativeParams& par) {
    return [par](double t, const State& y) { return hamiltonian_t(par, t, y[0], y[1]); };
}

std::string to_string(OutcomeClass c) {
    switch (c) {
        case OutcomeClass::A: return "A";
        case OutcomeClass::ICandidate: return "I-candidate";
        default: return "undetermined";
    }
}

int sign_changes(const Trajectory& traj, Component component, double deadband) {
    const auto idx = static_cast<std::size_t>(component);
    int last = 0;
    int count = 0;
    for (const auto& s : traj.samples) {
        const double x = s.y[idx];
        if (std::abs(x) <= deadband) continue;
        const int sign = x > 0 ? 1 : -1;
        if (last != 0 && sign != last) ++count;
        last = sign;
    }
    return count;
}

Trajectory mirror_backward(const DissipativeParams& par, const Trajectory& forward) {
    Trajectory out;
    out.meta = forward.meta;
    out.samples.reserve(forward.size());
    for (auto it = forward.samples.rbegin(); it != forward.samples.rend(); ++it) {
        const double t = -it->t;
        const State y{it->y[1], it->y[0]};
        out.samples.push_back({t, y, hamiltonian_t(par, t, y[0], y[1])});
    }
    return out;
}

Trajectory symmetric_solution(const DissipativeParams& par, const Trajectory& forward) {
    Trajectory out = mirror_backward(par, forward);
    if (!out.empty()) out.samples.pop_back();  // t = 0 appears in both halves
    out.samples.insert(out.samples.end(), forward.samples.begin(), forward.samples.end());
    return out;
}

EnvelopeReport envelope_check(const Trajectory& traj, OutcomeClass cls, double t_class, double min_tail) {
    if (cls == OutcomeClass::Undetermined) throw TailTooShort("envelope_check: undetermined outcome has no envelope");
    if (traj.empty() || traj.back().t - t_class < min_tail) {
        throw TailTooShort("envelope_check: tail shorter than the required window");
    }
    std::vector<double> ts, logs;
    EnvelopeReport rep;
    rep.cls = cls;
    rep.t_from = t_class;
    rep.t_to = traj.back().t;
    for (const auto& s : traj.samples) {
        if (s.t < t_class) continue;
        const double z = s.y[0] * s.y[0] + s.y[1] * s.y[1];
        if (!(z > 0.0) || !std::isfinite(z)) throw TailTooShort("envelope_check: degenerate tail");
        ts.push_back(s.t);
        logs.push_back(std::log(z));
        rep.cosh_bound = std::max(rep.cosh_bound, z / std::cosh(s.t));
    }
    if (ts.size() < 2) throw TailTooShort("envelope_check: too few tail samples");
    rep.exponent = fit_line(ts, logs).slope;
    return rep;
}

ShootingOutcome shoot(const DissipativeParams& par, double mu, const ShootingThresholds& thr) {
    if (!(mu > 0.0)) throw std::invalid_argument("shoot needs mu > 0");
    if (!(thr.t_max > 0.0)) throw std::invalid_argument("shoot needs t_max > 0");
    ShootingOutcome out;
    out.mu = mu;

    std::optional<double> t_star;
    IntegrateOptions opt;
    opt.tol = thr.tol;
    opt.sample_dt = thr.sample_dt;
    opt.energy = dissipative_energy(par);
    opt.stop = [&](const Sample& s) {
        if (!t_star && s.energy <= 0.0) t_star = s.t;
        return t_star.has_value() && s.t >= *t_star + thr.tail_after_a;
    };
    Trajectory traj;
    try {
        traj = integrate(dissipative_field(par), {mu, mu}, {0.0, thr.t_max}, opt);
    } catch (const NonFiniteState& e) {
        traj = e.partial();
        out.non_finite = true;
    } catch (const StepLimitExceeded& e) {
        traj = e.partial();
    }

    out.t_end = traj.back().t;
    out.H_tail = traj.back().energy;
    out.k = sign_changes(traj, Component::V, thr.deadband);
    out.first_nonpositive_H = t_star;

    const double z_end = traj.back().y[0] * traj.back().y[0] + traj.back().y[1] * traj.back().y[1];
    if (t_star) {
        out.cls = OutcomeClass::A;
        try {
            const EnvelopeReport env = envelope_check(traj, OutcomeClass::A, *t_star, std::min(5.0, thr.tail_after_a));
            out.envelope = env.exponent;
            out.cosh_bound = env.cosh_bound;
        } catch (const TailTooShort&) {
        }
    } else if (z_end < thr.decay_threshold && !out.non_finite) {
        const double expected = -(par.m - 2.0);
        try {
            const double t_from = 0.75 * out.t_end;
            const EnvelopeReport env = envelope_check(traj, OutcomeClass::ICandidate, t_from, 0.0);
            if (std::abs(env.exponent - expected) <= thr.fit_tol * std::abs(expected)) {
                out.cls = OutcomeClass::ICandidate;
                out.envelope = env.exponent;
            }
        } catch (const TailTooShort&) {
        }
    }
    if (thr.keep_trajectory) out.trajectory = std::move(traj);
    return out;
}

namespace {

enum class Side { Low, High, Boundary };

}  // namespace

BoundaryResult boundary_bisect(const DissipativeParams& par, int k, double mu_lo, double mu_hi, double tol,
                               const ShootingThresholds& thr) {
    if (k < 0) throw std::invalid_argument("boundary_bisect needs k >= 0");
    if (!(mu_lo > 0.0) || !(mu_hi > mu_lo)) throw BracketInvalid("boundary_bisect needs 0 < mu_lo < mu_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("boundary_bisect needs tol > 0");
    ShootingThresholds base = thr;
    base.keep_trajectory = false;

    BoundaryResult res;
    res.k = k;
    auto run = [&](double mu, const ShootingThresholds& t) {
        ++res.shots;
        return shoot(par, mu, t);
    };

    const ShootingOutcome lo = run(mu_lo, base);
    const ShootingOutcome hi = run(mu_hi, base);
    if (lo.cls != OutcomeClass::A || lo.k > k) {
        throw BracketInvalid("lower end is not class A with at most k sign changes");
    }
    if (hi.cls != OutcomeClass::A || hi.k < k + 1) {
        throw BracketInvalid("upper end is not class A with at least k + 1 sign changes");
    }

    auto side = [&](double mu) {
        ShootingThresholds t = base;
        for (int attempt = 0; attempt < 3; ++attempt) {
            const ShootingOutcome o = run(mu, t);
            if (o.k >= k + 1) return Side::High;
            if (o.cls == OutcomeClass::A) return Side::Low;
            if (o.cls == OutcomeClass::ICandidate) {
                res.i_candidates.push_back(mu);
                return o.k < k ? Side::Low : Side::Boundary;
            }
            t.t_max *= 2;
        }
        res.undetermined.push_back(mu);
        return Side::Boundary;
    };

    double a = mu_lo, b = mu_hi;
    for (int iter = 0; iter < 400 && b - a > tol; ++iter) {
        const double mid = 0.5 * (a + b);
        switch (side(mid)) {
            case Side::Low: a = mid; break;
            case Side::High: b = mid; break;
            case Side::Boundary: {
                const double w = b - a;
                a = mid - w / 4;
                b = mid + w / 4;
                break;
            }
        }
    }
    res.lo = a;
    res.hi = b;
    return res;
}

State rescaled_limit(const DissipativeParams& par, double t) {
    const double omega = std::pow(2.0, 1.0 / (par.m - 1));
    const double phase = omega * t + std::numbers::pi / 4;
    return {std::numbers::sqrt2 * std::sin(phase), std::numbers::sqrt2 * std::cos(phase)};
}

State rescaled_vector_field(const DissipativeParams& par, double eps, double t, const State& y) {
    const double sigma = std::pow(eps, 2.0 / (par.m - 1));
    const double n = weight(par, sigma * t) * std::pow(y[0] * y[0] + y[1] * y[1], 1.0 / (par.m - 1));
    return {n * y[1] - sigma * par.kappa * y[0], sigma * par.kappa * y[1] - n * y[0]};
}

RescaleComparison rescale_compare(const DissipativeParams& par, double mu, double T, double rescaled_dt) {
    if (!(mu >= 1.0)) throw std::invalid_argument("rescale_compare needs mu >= 1");
    if (!(T > 0.0) || !(rescaled_dt > 0.0)) throw std::invalid_argument("rescale_compare needs T > 0 and dt > 0");
    const double eps = 1.0 / mu;
    const double sigma = std::pow(eps, 2.0 / (par.m - 1));
    IntegrateOptions opt;
    opt.tol = {1e-13 * mu, 1e-13, 5'000'000};
    opt.sample_dt = sigma * rescaled_dt;
    const Trajectory traj = integrate(dissipative_field(par), {mu, mu}, {0.0, sigma * T}, opt);
    RescaleComparison out;
    for (const auto& s : traj.samples) {
        const State lim = rescaled_limit(par, s.t / sigma);
        const double err = std::hypot(eps * s.y[0] - lim[0], eps * s.y[1] - lim[1]);
        out.sup_error = std::max(out.sup_error, err);
    }
    out.samples = traj.size();
    return out;
}

std::vector<ShootingOutcome> classify_sweep(const DissipativeParams& par, const std::vector<double>& mu_grid,
                                            const ShootingThresholds& thr, unsigned jobs) {
    for (std::size_t i = 0; i < mu_grid.size(); ++i) {
        if (!(mu_grid[i] > 0.0) || (i > 0 && !(mu_grid[i] > mu_grid[i - 1]))) {
            throw std::invalid_argument("classify_sweep needs a positive, strictly increasing grid");
        }
    }
    std::vector<ShootingOutcome> results(mu_grid.size());
    std::vector<std::exception_ptr> errors(mu_grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < mu_grid.size(); i = next++) {
            try {
                results[i] = shoot(par, mu_grid[i], thr);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(mu_grid.size())));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace spinyam
