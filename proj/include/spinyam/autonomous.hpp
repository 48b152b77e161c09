#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spinyam/numerics.hpp"

namespace spinyam {

/// Parameters of the autonomous planar system
///   u' =  (u^2 + v^2)^{1/(m-1)} v - lambda u
///   v' =  lambda v - (u^2 + v^2)^{1/(m-1)} u
/// with lambda = (m-1)/2 and p = m/(m-1).
struct AutonomousParams {
    int m = 3;
    double lambda = 1.0;
    double p = 1.5;

    /// Throws std::invalid_argument for m < 2.
    static AutonomousParams make(int m);
};

class KOutOfRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class QuadratureFailure : public NumericsError {
public:
    using NumericsError::NumericsError;
};

double hamiltonian(const AutonomousParams& par, double u, double v);
State vector_field(const AutonomousParams& par, const State& y);
/// The system as an integrate()-ready field, and its Hamiltonian as energy.
PlanarField autonomous_field(const AutonomousParams& par);
EnergyFn autonomous_energy(const AutonomousParams& par);

/// Origin first, then (c, c) and (-c, -c).
std::array<State, 3> equilibria(const AutonomousParams& par);

/// The homoclinic solution through (u, v) with u = v at t = 0, and its exact
/// time derivative.
State homoclinic(const AutonomousParams& par, double t);
State homoclinic_derivative(const AutonomousParams& par, double t);

/// Upper end of the admissible energy parameter, (1/m) ((m-1)/2)^{m-1}.
double k0(const AutonomousParams& par);

/// F_K(s) = s^2 - (s^p / (lambda p) + K)^2.
double f_k(const AutonomousParams& par, double K, double s);

struct FkRoots {
    double s0;
    double s1;
};

/// Levels closer to K0 than this relative margin are rejected as degenerate.
inline constexpr double kDegenerateMargin = 1e-10;

/// The two positive zeros of F_K. Throws KOutOfRange unless
/// 0 < K < K0 (1 - 1e-10).
FkRoots fk_zeros(const AutonomousParams& par, double K);

/// Half period of the periodic orbit on the level H = -lambda K / 2, i.e.
/// the time z = u^2 + v^2 takes to travel from s0 to s1.
double half_period(const AutonomousParams& par, double K, const QuadratureOptions& quad = {});

struct OrbitSpec {
    int m = 0;
    double K = 0;
    double s0 = 0;
    double s1 = 0;
    double half_period = 0;
    double energy = 0;
    /// z(t) on [0, half_period], increasing from s0 to s1.
    std::vector<double> z_samples;
    /// One full period of (u, v) starting at u = v = sqrt(s0 / 2).
    Trajectory trajectory;
};

/// Rebuilds the periodic orbit of level K from the quadrature alone.
/// n_samples points cover [0, 2 * half_period] uniformly (end points included).
OrbitSpec orbit_reconstruct(const AutonomousParams& par, double K, std::size_t n_samples);

/// The same orbit evaluated at arbitrary increasing times, extended
/// periodically; time 0 is the point u = v = sqrt(s0 / 2).
Trajectory periodic_orbit_samples(const AutonomousParams& par, double K, std::span<const double> times);

struct PeriodRoot {
    double K;
    double half_period;
};

struct PeriodLevel {
    int k;
    double target;               // T / k
    std::vector<PeriodRoot> roots;
    bool multiple = false;       // more than one level has this half period
};

struct SolutionsCount {
    int count = 1;               // constant solution plus one per k with a root
    std::vector<PeriodLevel> levels;
    double min_half_period = 0;  // over the scanned K grid
    double max_half_period = 0;
    /// Targets T / k above the largest half period on the grid; such k are
    /// left undecided.
    std::vector<int> out_of_grid;
};

struct SolutionsOptions {
    std::size_t grid_size = 512;
    /// Smallest K scanned, relative to K0.
    double k_min_rel = 1e-10;
};

/// Solutions of half period T / k for k = 1, 2, ..., found by locating every
/// sign change of K -> half_period(K) - T / k on a grid uniform in
/// logit(K / K0) and refining it with Brent's method.
SolutionsCount solutions_count(const AutonomousParams& par, double T, const SolutionsOptions& options = {});

}  // namespace spinyam
