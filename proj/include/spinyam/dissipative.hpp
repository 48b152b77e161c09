#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinyam/numerics.hpp"

namespace spinyam {

/// Parameters of the cosh-weighted planar system
///   u' = c(t) (u^2 + v^2)^{1/(m-1)} v - kappa u
///   v' = kappa v - c(t) (u^2 + v^2)^{1/(m-1)} u
/// with c(t) = cosh(t)^{-1/(m-1)} and kappa = (m-2)/2.
struct DissipativeParams {
    int m = 3;
    double kappa = 0.5;

    /// Throws std::invalid_argument for m < 3.
    static DissipativeParams make(int m);
};

double hamiltonian_t(const DissipativeParams& par, double t, double u, double v);
State vector_field_t(const DissipativeParams& par, double t, const State& y);
PlanarField dissipative_field(const DissipativeParams& par);
EnergyFn dissipative_energy(const DissipativeParams& par);

enum class OutcomeClass { A, ICandidate, Undetermined };
std::string to_string(OutcomeClass c);

struct ShootingThresholds {
    double t_max = 60.0;
    double sample_dt = 0.01;
    /// Integration continues this long after the energy first becomes
    /// non-positive, so that the envelope can be fitted.
    double tail_after_a = 10.0;
    double decay_threshold = 1e-6;  // on u^2 + v^2
    double fit_tol = 0.2;           // relative, on the decay exponent
    double deadband = 1e-9;         // sign-change hysteresis
    Tolerances tol{1e-12, 1e-12, 2'000'000};
    bool keep_trajectory = true;
};

struct ShootingOutcome {
    double mu = 0;
    int k = 0;
    OutcomeClass cls = OutcomeClass::Undetermined;
    double t_end = 0;
    double H_tail = 0;
    /// Growth exponent of ln(u^2 + v^2) for class A, decay exponent for
    /// I-candidates.
    std::optional<double> envelope;
    /// Smallest C with u^2 + v^2 <= C cosh(t) on the class A tail.
    std::optional<double> cosh_bound;
    std::optional<double> first_nonpositive_H;
    bool non_finite = false;
    Trajectory trajectory;  // forward half, t in [0, t_end]
};

/// Integrates from (mu, mu) at t = 0 forward and classifies the solution.
ShootingOutcome shoot(const DissipativeParams& par, double mu, const ShootingThresholds& thr = {});

enum class Component { U = 0, V = 1 };

/// Sign alternations of one component. A sign is only registered once the
/// component's magnitude exceeds the deadband.
int sign_changes(const Trajectory& traj, Component component, double deadband);

/// The t < 0 half of a solution through (mu, mu), obtained from the forward
/// half through u(-t) = v(t), v(-t) = u(t). Samples are in increasing t.
Trajectory mirror_backward(const DissipativeParams& par, const Trajectory& forward);

/// Backward and forward halves joined into one trajectory on [-t_end, t_end].
Trajectory symmetric_solution(const DissipativeParams& par, const Trajectory& forward);

class BracketInvalid : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct BoundaryResult {
    int k = 0;
    double lo = 0;
    double hi = 0;
    int shots = 0;
    /// Parameters whose outcome stayed undetermined even after extending the
    /// horizon; each one was treated as lying on the boundary.
    std::vector<double> undetermined;
    /// I-candidates met during the search.
    std::vector<double> i_candidates;
};

/// Bisection for the transition between k and k + 1 sign changes.
/// Requires shoot(mu_lo) to be class A with at most k sign changes and
/// shoot(mu_hi) class A with at least k + 1; otherwise BracketInvalid.
BoundaryResult boundary_bisect(const DissipativeParams& par, int k, double mu_lo, double mu_hi, double tol,
                               const ShootingThresholds& thr = {});

/// Explicit solution of the limit system obtained as mu -> infinity.
State rescaled_limit(const DissipativeParams& par, double t);

/// Right-hand side of the rescaled system for U(t) = eps u(sigma t), where
/// sigma = eps^{2/(m-1)}.
State rescaled_vector_field(const DissipativeParams& par, double eps, double t, const State& y);

struct RescaleComparison {
    double sup_error = 0;
    std::size_t samples = 0;
};

/// sup over [0, T] of |(U_eps, V_eps) - (U_0, V_0)| with eps = 1 / mu, from a
/// trajectory of the original system.
RescaleComparison rescale_compare(const DissipativeParams& par, double mu, double T, double rescaled_dt = 1e-3);

class TailTooShort : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct EnvelopeReport {
    OutcomeClass cls = OutcomeClass::Undetermined;
    double t_from = 0;
    double t_to = 0;
    /// Class A: smallest C with u^2 + v^2 <= C cosh(t) on the tail.
    double cosh_bound = 0;
    /// Least-squares slope of ln(u^2 + v^2) against t on the tail.
    double exponent = 0;
};

/// Fits the tail [t_class, t_end] of a classified trajectory. Throws
/// TailTooShort if it is shorter than min_tail, degenerate, or the class is
/// undetermined.
EnvelopeReport envelope_check(const Trajectory& traj, OutcomeClass cls, double t_class, double min_tail = 5.0);

/// One independent shoot() per grid point, run on up to `jobs` threads.
/// Results come back in grid order. The grid must be positive and increasing.
std::vector<ShootingOutcome> classify_sweep(const DissipativeParams& par, const std::vector<double>& mu_grid,
                                            const ShootingThresholds& thr = {}, unsigned jobs = 1);

}  // namespace spinyam
