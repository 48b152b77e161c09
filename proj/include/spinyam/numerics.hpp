#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinyam {

/// A point (u, v) of the phase plane.
using State = std::array<double, 2>;

/// Right-hand side y' = f(t, y) of a planar system.
using PlanarField = std::function<State(double, const State&)>;

/// Scalar observable attached to every trajectory sample, normally the
/// Hamiltonian of the system being integrated.
using EnergyFn = std::function<double(double, const State&)>;

struct Tolerances {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_steps = 2'000'000;

    /// Throws std::invalid_argument if the tolerances cannot drive a step
    /// controller.
    void validate() const;
};

struct Sample {
    double t;
    State y;
    double energy;
};

enum class Termination { Completed, Stopped, StepLimit, NonFinite };

struct TrajectoryMeta {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t evaluations = 0;
    Termination reason = Termination::Completed;
};

/// Time-ordered samples of a planar flow. Samples are always stored with t
/// strictly increasing, whatever the direction of integration.
struct Trajectory {
    std::vector<Sample> samples;
    TrajectoryMeta meta;

    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] const Sample& front() const { return samples.front(); }
    [[nodiscard]] const Sample& back() const { return samples.back(); }
};

class NumericsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The integrator hit Tolerances::max_steps. The partial trajectory is kept.
class StepLimitExceeded : public NumericsError {
public:
    StepLimitExceeded(const std::string& what, Trajectory partial)
        : NumericsError(what), partial_(std::move(partial)) {}
    [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// The state overflowed or became NaN. partial() ends at the last valid sample.
class NonFiniteState : public NumericsError {
public:
    NonFiniteState(const std::string& what, Trajectory partial)
        : NumericsError(what), partial_(std::move(partial)) {}
    [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

class NoSignChange : public NumericsError {
public:
    using NumericsError::NumericsError;
};

class NonConvergence : public NumericsError {
public:
    using NumericsError::NumericsError;
};

struct IntegrateOptions {
    Tolerances tol{};
    /// Output spacing. Zero emits one sample per accepted step; a positive
    /// value resamples the accepted steps on the uniform grid t0 + j*dt with
    /// the Dormand-Prince continuous extension (the end point is always emitted).
    double sample_dt = 0.0;
    /// Energy recorded with each sample. Defaults to zero when unset.
    EnergyFn energy{};
    /// Optional early-termination predicate, checked on every emitted sample.
    std::function<bool(const Sample&)> stop{};
    /// Initial step size; zero selects one automatically.
    double initial_step = 0.0;
};

/// Integrates y' = field(t, y) from y(t_span[0]) = y0 to t_span[1] with the
/// Dormand-Prince 5(4) embedded pair. t_span[1] < t_span[0] integrates
/// backwards; the returned samples are still sorted by increasing t.
Trajectory integrate(const PlanarField& field, const State& y0,
                     std::array<double, 2> t_span,
                     const IntegrateOptions& options = {});

struct RootOptions {
    double tol = 1e-13;
    int max_iter = 200;
};

/// Brent's method on a sign-changing bracket [a, b]. The result always lies
/// inside the bracket.
double find_root(const std::function<double(double)>& f, double a, double b,
                 const RootOptions& options = {});

struct QuadratureOptions {
    double tol = 1e-13;
    std::size_t min_nodes = 16;
    std::size_t max_nodes = std::size_t{1} << 23;
};

struct QuadratureResult {
    double value;
    std::size_t nodes;
};

/// Integral of g(tau) / sqrt(tau (1 - tau)) over [0, 1] by Gauss-Chebyshev
/// rules of the first kind, doubling the node count until two successive
/// estimates agree to tol * max(1, |I|).
QuadratureResult quad_chebyshev_endpoint(const std::function<double(double)>& g,
                                         const QuadratureOptions& options = {});

/// The same integral written as int_0^pi g((1 - cos theta) / 2) dtheta and
/// evaluated with adaptive 10-point Gauss-Legendre panels. Panel edges are
/// graded geometrically towards theta = 0 starting at `layer`, for integrands
/// with a boundary layer of that angular width at tau = 0.
QuadratureResult quad_chebyshev_graded(const std::function<double(double)>& g, double layer,
                                       const QuadratureOptions& options = {});

/// Slope and intercept of the least-squares line through (x_i, y_i).
struct LineFit {
    double slope;
    double intercept;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Natural cubic spline through strictly increasing abscissae.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(std::vector<double> x, std::vector<double> y);

    [[nodiscard]] double operator()(double x) const;
    [[nodiscard]] double derivative(double x) const;
    [[nodiscard]] double x_min() const { return x_.front(); }
    [[nodiscard]] double x_max() const { return x_.back(); }

private:
    [[nodiscard]] std::size_t interval(double x) const;

    std::vector<double> x_, y_, m_;  // m_: second derivatives at the knots
};

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    [[nodiscard]] double operator()(double x) const;

private:
    std::vector<double> x_, y_, d_;
};

}  // namespace spinyam
