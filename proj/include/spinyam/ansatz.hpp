#pragma once

#include <array>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinyam/clifford.hpp"
#include "spinyam/dissipative.hpp"
#include "spinyam/numerics.hpp"

namespace spinyam {

// Radial spinors psi(x) = f1(|x|) gamma0 + f2(|x|) / |x| x.gamma0 and their
// link to the planar systems through r = e^{-t}, f1 = -u e^{a t}, f2 = v e^{a t}.

enum class SystemKind { Autonomous, Dissipative };

class OriginEvaluation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class EmptyTrajectory : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class PointOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class InsufficientTail : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dimension of the Euclidean space carrying the spinor: m for the autonomous
/// kind, m - 1 for the dissipative kind.
int euclidean_dim(SystemKind kind, int m);

/// Exponent a in f = (...) e^{a t}: (m-1)/2 or (m-2)/2.
double emden_fowler_exponent(SystemKind kind, int m);

/// First standard basis spinor of the given dimension.
Spinor default_gamma0(std::size_t dim);

struct ProfileSample {
    double r;
    double f1;
    double f2;
};

struct SpinorProfile {
    int m = 0;
    SystemKind kind = SystemKind::Autonomous;
    double lambda_exp = 0;
    std::vector<ProfileSample> samples;  // r strictly increasing
    Spinor gamma0;

    [[nodiscard]] static double psi_abs(const ProfileSample& s);
};

Spinor ansatz_eval(const CliffordRep& rep, double f1, double f2, std::span<const Complex> gamma0,
                   std::span<const double> x);

/// Coefficients (g1, g2) of a spinor psi = g1 gamma0 + g2 x/|x| . gamma0,
/// recovered by projection. For a spinor outside the ansatz space the
/// projection is still defined but does not reproduce psi.
std::pair<double, double> ansatz_components(const CliffordRep& rep, std::span<const Complex> gamma0,
                                            std::span<const double> x, std::span<const Complex> psi);

using RadialFn = std::function<double(double)>;

/// D psi = -(f2' + (n-1) f2 / r) gamma0 + (f1' / r) x.gamma0 with n = rep.m.
Spinor dirac_on_ansatz_closed(const CliffordRep& rep, const RadialFn& f1, const RadialFn& f2, const RadialFn& f1_prime,
                              const RadialFn& f2_prime, std::span<const double> x, std::span<const Complex> gamma0);

SpinorProfile profile_from_phase(SystemKind kind, int m, const Trajectory& traj, Spinor gamma0 = {});

/// Inverse substitution; energies are filled with the matching Hamiltonian.
Trajectory phase_from_profile(const SpinorProfile& profile);

/// Profile as a smooth spinor field on R^n \ {0}; f1, f2 are natural cubic
/// splines in ln r.
class ProfileField {
public:
    ProfileField(const SpinorProfile& profile, const CliffordRep& rep);

    [[nodiscard]] Spinor operator()(std::span<const double> x) const;
    [[nodiscard]] double r_min() const { return std::exp(f1_.x_min()); }
    [[nodiscard]] double r_max() const { return std::exp(f1_.x_max()); }

private:
    const CliffordRep& rep_;
    Spinor gamma0_;
    CubicSpline f1_, f2_;
};

/// max over the points of |D_h psi - w(x) |psi|^{2/(m-1)} psi|, with D_h the
/// central-difference Dirac operator, w = 1 (autonomous) or
/// (2 / (1 + |x|^2))^{1/(m-1)} (dissipative).
double pde_residual(SystemKind kind, int m, const SpinorProfile& profile, const CliffordRep& rep,
                    const std::vector<std::vector<double>>& points, double h);

enum class ProfileEnd { Zero, Infinity };

/// Least-squares slope of ln|psi| against ln r over the outermost `decades`
/// decades of radii at the chosen end. Needs at least 10 samples there.
double decay_fit(const SpinorProfile& profile, ProfileEnd end, double decades = 1.0);

/// Right-hand sides (u1', v1', u2', v2') of the four-component system obtained
/// from a pair of radial spinors on R^{m-1}.
std::array<double, 4> coupled_field(const DissipativeParams& par, double t, const std::array<double, 4>& y);

}  // namespace spinyam
