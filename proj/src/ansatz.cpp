#include "spinyam/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinyam/autonomous.hpp"

namespace spinyam {

int euclidean_dim(SystemKind kind, int m) { return kind == SystemKind::Autonomous ? m : m - 1; }

double emden_fowler_exponent(SystemKind kind, int m) {
    return kind == SystemKind::Autonomous ? (m - 1) / 2.0 : (m - 2) / 2.0;
}

Spinor default_gamma0(std::size_t dim) {
    Spinor g(dim, Complex{});
    if (dim > 0) g[0] = 1.0;
    return g;
}

double SpinorProfile::psi_abs(const ProfileSample& s) { return std::hypot(s.f1, s.f2); }

namespace {

double norm(std::span<const double> x) {
    double s = 0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double spinor_norm(std::span<const Complex> psi) {
    double s = 0;
    for (const auto& c : psi) s += std::norm(c);
    return std::sqrt(s);
}

void check_gamma0(const CliffordRep& rep, std::span<const Complex> gamma0) {
    if (gamma0.size() != rep.dim) throw std::invalid_argument("gamma0 has the wrong dimension");
}

}  // namespace

Spinor ansatz_eval(const CliffordRep& rep, double f1, double f2, std::span<const Complex> gamma0,
                   std::span<const double> x) {
    check_gamma0(rep, gamma0);
    const double r = norm(x);
    if (!(r > 0.0)) throw OriginEvaluation("ansatz spinor is not defined at the origin");
    Spinor out = rep.clifford_mul(x, gamma0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f1 * gamma0[i] + (f2 / r) * out[i];
    return out;
}

std::pair<double, double> ansatz_components(const CliffordRep& rep, std::span<const Complex> gamma0,
                                            std::span<const double> x, std::span<const Complex> psi) {
    check_gamma0(rep, gamma0);
    const double r = norm(x);
    if (!(r > 0.0)) throw OriginEvaluation("ansatz components are not defined at the origin");
    const Spinor xg = rep.clifford_mul(x, gamma0);
    const double g2 = spinor_norm(gamma0) * spinor_norm(gamma0);
    Complex a{}, b{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        a += std::conj(gamma0[i]) * psi[i];
        b += std::conj(xg[i] / r) * psi[i];
    }
    return {a.real() / g2, b.real() / g2};
}

Spinor dirac_on_ansatz_closed(const CliffordRep& rep, const RadialFn& f1, const RadialFn& f2, const RadialFn& f1_prime,
                              const RadialFn& f2_prime, std::span<const double> x, std::span<const Complex> gamma0) {
    (void)f1;
    const double r = norm(x);
    if (!(r > 0.0)) throw OriginEvaluation("Dirac action is not defined at the origin");
    const double radial = -(f2_prime(r) + (rep.m - 1) * f2(r) / r);
    // The x.gamma0 coefficient is f1'/r, i.e. f1' times the unit direction.
    return ansatz_eval(rep, radial, f1_prime(r), gamma0, x);
}

SpinorProfile profile_from_phase(SystemKind kind, int m, const Trajectory& traj, Spinor gamma0) {
    if (traj.empty()) throw EmptyTrajectory("profile_from_phase: trajectory has no samples");
    const int n = euclidean_dim(kind, m);
    if (n < 1) throw std::invalid_argument("profile_from_phase: dimension too small");
    const std::size_t dim = std::size_t{1} << (n / 2);
    if (gamma0.empty()) gamma0 = default_gamma0(dim);
    if (gamma0.size() != dim) throw std::invalid_argument("profile_from_phase: gamma0 has the wrong dimension");
    const double g = spinor_norm(gamma0);
    if (std::abs(g - 1.0) > 1e-12) throw std::invalid_argument("profile_from_phase: gamma0 must be a unit spinor");

    SpinorProfile prof;
    prof.m = m;
    prof.kind = kind;
    prof.lambda_exp = emden_fowler_exponent(kind, m);
    prof.gamma0 = std::move(gamma0);
    prof.samples.reserve(traj.size());
    for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
        const double scale = std::exp(prof.lambda_exp * it->t);
        prof.samples.push_back({std::exp(-it->t), -it->y[0] * scale, it->y[1] * scale});
    }
    return prof;
}

Trajectory phase_from_profile(const SpinorProfile& profile) {
    if (profile.samples.empty()) throw EmptyTrajectory("phase_from_profile: profile has no samples");
    Trajectory traj;
    traj.samples.reserve(profile.samples.size());
    const bool autonomous = profile.kind == SystemKind::Autonomous;
    const auto apar = autonomous ? AutonomousParams::make(profile.m) : AutonomousParams{};
    const auto dpar = autonomous ? DissipativeParams{} : DissipativeParams::make(profile.m);
    for (auto it = profile.samples.rbegin(); it != profile.samples.rend(); ++it) {
        const double t = -std::log(it->r);
        const double scale = std::exp(-profile.lambda_exp * t);
        const State y{-it->f1 * scale, it->f2 * scale};
        const double e = autonomous ? hamiltonian(apar, y[0], y[1]) : hamiltonian_t(dpar, t, y[0], y[1]);
        traj.samples.push_back({t, y, e});
    }
    return traj;
}

namespace {

CubicSpline spline_of(const SpinorProfile& p, bool first) {
    std::vector<double> s, f;
    s.reserve(p.samples.size());
    f.reserve(p.samples.size());
    for (const auto& smp : p.samples) {
        s.push_back(std::log(smp.r));
        f.push_back(first ? smp.f1 : smp.f2);
    }
    return CubicSpline(std::move(s), std::move(f));
}

}  // namespace

ProfileField::ProfileField(const SpinorProfile& profile, const CliffordRep& rep)
    : rep_(rep), gamma0_(profile.gamma0), f1_(spline_of(profile, true)), f2_(spline_of(profile, false)) {
    if (rep.m != euclidean_dim(profile.kind, profile.m)) {
        throw std::invalid_argument("ProfileField: representation dimension does not match the profile");
    }
    check_gamma0(rep, gamma0_);
}

Spinor ProfileField::operator()(std::span<const double> x) const {
    const double s = std::log(norm(x));
    return ansatz_eval(rep_, f1_(s), f2_(s), gamma0_, x);
}

double pde_residual(SystemKind kind, int m, const SpinorProfile& profile, const CliffordRep& rep,
                    const std::vector<std::vector<double>>& points, double h) {
    if (profile.kind != kind || profile.m != m) throw std::invalid_argument("pde_residual: profile kind or m mismatch");
    if (profile.samples.size() < 4) throw PointOutOfRange("pde_residual: profile too short to interpolate");
    const ProfileField field(profile, rep);
    const double power = 2.0 / (m - 1);
    double worst = 0.0;
    for (const auto& x : points) {
        const double r = norm(x);
        if (r <= h || r - h <= field.r_min() || r + h >= field.r_max()) {
            throw PointOutOfRange("pde_residual: stencil at |x| = " + std::to_string(r) + " leaves the profile range");
        }
        const Spinor d = dirac_apply_fd(rep, field, x, h);
        const Spinor psi = field(x);
        double w = std::pow(spinor_norm(psi), power);
        if (kind == SystemKind::Dissipative) w *= std::pow(2.0 / (1.0 + r * r), 1.0 / (m - 1));
        double res = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) res += std::norm(d[i] - w * psi[i]);
        worst = std::max(worst, std::sqrt(res));
    }
    return worst;
}

double decay_fit(const SpinorProfile& profile, ProfileEnd end, double decades) {
    if (profile.samples.empty()) throw InsufficientTail("decay_fit: empty profile");
    if (!(decades > 0.0)) throw std::invalid_argument("decay_fit: window must be positive");
    const double span = std::pow(10.0, decades);
    const double lo = end == ProfileEnd::Zero ? 0.0 : profile.samples.back().r / span;
    const double hi = end == ProfileEnd::Zero ? profile.samples.front().r * span
                                              : std::numeric_limits<double>::infinity();
    std::vector<double> x, y;
    for (const auto& s : profile.samples) {
        if (s.r < lo || s.r > hi) continue;
        const double a = SpinorProfile::psi_abs(s);
        if (!(a > 0.0)) throw InsufficientTail("decay_fit: |psi| vanishes in the tail");
        x.push_back(std::log(s.r));
        y.push_back(std::log(a));
    }
    if (x.size() < 10) throw InsufficientTail("decay_fit: fewer than 10 samples in the tail window");
    return fit_line(x, y).slope;
}

std::array<double, 4> coupled_field(const DissipativeParams& par, double t, const std::array<double, 4>& y) {
    const auto& [u1, v1, u2, v2] = y;
    const double n = std::pow(std::cosh(t), -1.0 / (par.m - 1)) *
                     std::pow(u1 * u1 + u2 * u2 + v1 * v1 + v2 * v2, 1.0 / (par.m - 1));
    return {n * v1 - par.kappa * u1, par.kappa * v1 - n * u1, n * v2 - par.kappa * u2, par.kappa * v2 - n * u2};
}

}  // namespace spinyam
