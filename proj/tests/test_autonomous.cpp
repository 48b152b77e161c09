#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "period_oracle.hpp"
#include "spinyam/autonomous.hpp"

using namespace spinyam;
using spinyam::testing::PeriodOracle;

namespace {

double max_abs_diff(const State& a, const State& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

}  // namespace

TEST_CASE("oracle reproduces the reference level for m = 3") {
    const PeriodOracle o(3, 0.1);
    CHECK(o.s0 == doctest::Approx(0.13195600483341385).epsilon(1e-13));
    CHECK(o.s1 == doctest::Approx(2.0342226000384462).epsilon(1e-13));
    CHECK(o.eta() == doctest::Approx(2.7281686858505534).epsilon(1e-10));
}

TEST_CASE("closed forms") {
    CHECK(k0(AutonomousParams::make(2)) == doctest::Approx(0.25));
    CHECK(k0(AutonomousParams::make(3)) == doctest::Approx(1.0 / 3));
    CHECK(k0(AutonomousParams::make(4)) == doctest::Approx(27.0 / 32));

    const auto p3 = AutonomousParams::make(3);
    const State f = vector_field(p3, {1, 0});
    CHECK(f[0] == doctest::Approx(-1.0));
    CHECK(f[1] == doctest::Approx(-1.0));

    const double cs[] = {0.5, std::numbers::sqrt2 / 2, std::pow(3.0, 1.5) / 4};
    for (int m = 2; m <= 4; ++m) {
        const auto par = AutonomousParams::make(m);
        const auto eq = equilibria(par);
        CHECK(eq[0] == State{0, 0});
        CHECK(eq[1][0] == doctest::Approx(cs[m - 2]).epsilon(1e-14));
        CHECK(eq[1][1] == eq[1][0]);
        CHECK(eq[2][0] == -eq[1][0]);
        const State v = vector_field(par, eq[1]);
        CHECK(std::abs(v[0]) + std::abs(v[1]) <= 1e-14);
    }
    const auto eq3 = equilibria(p3);
    CHECK(hamiltonian(p3, eq3[1][0], eq3[1][1]) == doctest::Approx(-1.0 / 6).epsilon(1e-14));
    CHECK(std::abs(hamiltonian(p3, homoclinic(p3, 0)[0], homoclinic(p3, 0)[1])) <= 1e-15);

    CHECK_THROWS_AS(AutonomousParams::make(1), std::invalid_argument);
}

TEST_CASE("homoclinic orbit solves the system and lies on H = 0") {
    for (int m = 2; m <= 6; ++m) {
        const auto par = AutonomousParams::make(m);
        CAPTURE(m);
        for (double t = -8; t <= 8; t += 0.25) {
            const State y = homoclinic(par, t);
            CHECK(max_abs_diff(homoclinic_derivative(par, t), vector_field(par, y)) <= 1e-12);
            CHECK(std::abs(hamiltonian(par, y[0], y[1])) <= 1e-12);
        }
    }
}

TEST_CASE("turning points") {
    const auto p2 = AutonomousParams::make(2);
    const auto r = fk_zeros(p2, 0.1);
    CHECK(r.s0 == doctest::Approx((1 - std::sqrt(0.6)) / 2).epsilon(1e-14));
    CHECK(r.s1 == doctest::Approx((1 + std::sqrt(0.6)) / 2).epsilon(1e-14));

    for (int m = 2; m <= 5; ++m) {
        const auto par = AutonomousParams::make(m);
        CAPTURE(m);
        CHECK_THROWS_AS(fk_zeros(par, 0.0), KOutOfRange);
        CHECK_THROWS_AS(fk_zeros(par, k0(par)), KOutOfRange);
        CHECK_THROWS_AS(fk_zeros(par, -0.1), KOutOfRange);

        double prev0 = 0, prev1 = 1e300;
        for (double rel : {0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
            const double K = rel * k0(par);
            const auto z = fk_zeros(par, K);
            const PeriodOracle o(m, K);
            CHECK(z.s0 == doctest::Approx(o.s0).epsilon(1e-12));
            CHECK(z.s1 == doctest::Approx(o.s1).epsilon(1e-12));
            CHECK(z.s0 > prev0);
            CHECK(z.s1 < prev1);
            prev0 = z.s0;
            prev1 = z.s1;
            // F_K decreases in K at every interior point.
            const double s = 0.5 * (z.s0 + z.s1);
            CHECK(f_k(par, K, s) > f_k(par, K * 1.01, s));
            CHECK(f_k(par, K, s) > 0);
        }
    }
}

TEST_CASE("half period agrees with the tanh-sinh oracle") {
    for (int m = 2; m <= 5; ++m) {
        const auto par = AutonomousParams::make(m);
        for (double rel : {1e-6, 1e-3, 0.05, 0.3, 0.6, 0.9, 0.999}) {
            CAPTURE(m);
            CAPTURE(rel);
            const double K = rel * k0(par);
            CHECK(half_period(par, K) == doctest::Approx(PeriodOracle(m, K).eta()).epsilon(1e-9));
        }
    }
}

TEST_CASE("half period near the centre and near the homoclinic loop") {
    for (int m = 2; m <= 5; ++m) {
        const auto par = AutonomousParams::make(m);
        CAPTURE(m);
        // Linearisation at (c, c) gives angular frequency sqrt(m - 1).
        const double limit = std::numbers::pi / std::sqrt(m - 1.0);
        CHECK(half_period(par, k0(par) * (1 - 1e-7)) == doctest::Approx(limit).epsilon(1e-5));

        std::vector<double> x, y;
        for (double e = -6; e <= -4 + 1e-9; e += 0.25) {
            const double K = std::pow(10.0, e);
            x.push_back(std::log(1 / K));
            y.push_back(half_period(par, K));
        }
        CHECK(fit_line(x, y).slope == doctest::Approx(1.0 / (m - 1)).epsilon(0.05));
    }
}

TEST_CASE("energy conservation and time reversal") {
    const auto par = AutonomousParams::make(3);
    IntegrateOptions opt;
    opt.tol = {1e-10, 1e-10, 5'000'000};
    opt.energy = autonomous_energy(par);
    opt.sample_dt = 0.5;
    const State y0{0.4, 0.9};
    const double h0 = hamiltonian(par, y0[0], y0[1]);
    const auto traj = integrate(autonomous_field(par), y0, {0, 50}, opt);
    for (const auto& s : traj.samples) CHECK(std::abs(s.energy - h0) <= 1e-8);

    // (u, v)(t) solves the system iff (v, u)(-t) does.
    const auto back = integrate(autonomous_field(par), {y0[1], y0[0]}, {0, -5}, opt);
    const auto fwd = integrate(autonomous_field(par), y0, {0, 5}, opt);
    REQUIRE(back.size() == fwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
        const auto& b = back.samples[back.size() - 1 - i];
        CHECK(b.t == doctest::Approx(-fwd.samples[i].t));
        CHECK(std::abs(b.y[0] - fwd.samples[i].y[1]) <= 1e-9);
        CHECK(std::abs(b.y[1] - fwd.samples[i].y[0]) <= 1e-9);
    }
}

TEST_CASE("orbit reconstruction") {
    const auto par = AutonomousParams::make(3);
    for (double K : {0.05, 0.1, 0.2, 0.3}) {
        CAPTURE(K);
        const auto spec = orbit_reconstruct(par, K, 401);
        CHECK(spec.energy == doctest::Approx(-par.lambda * K / 2));
        REQUIRE(spec.trajectory.size() == 401);
        CHECK(spec.trajectory.back().t == 2 * spec.half_period);
        for (const auto& s : spec.trajectory.samples) {
            CHECK(std::abs(hamiltonian(par, s.y[0], s.y[1]) - spec.energy) <= 1e-9);
            const double z = s.y[0] * s.y[0] + s.y[1] * s.y[1];
            CHECK(z >= spec.s0 * (1 - 1e-12));
            CHECK(z <= spec.s1 * (1 + 1e-12));
        }
        for (std::size_t i = 1; i < spec.z_samples.size(); ++i) CHECK(spec.z_samples[i] >= spec.z_samples[i - 1]);
        CHECK(spec.z_samples.front() == doctest::Approx(spec.s0));

        IntegrateOptions opt;
        opt.tol = {1e-12, 1e-12, 5'000'000};
        opt.sample_dt = spec.half_period / 50;
        const auto rk = integrate(autonomous_field(par), spec.trajectory.front().y, {0, 2 * spec.half_period}, opt);
        std::vector<double> times;
        for (const auto& s : rk.samples) times.push_back(s.t);
        const auto q = periodic_orbit_samples(par, K, times);
        double sup = 0;
        for (std::size_t i = 0; i < times.size(); ++i) sup = std::max(sup, max_abs_diff(q.samples[i].y, rk.samples[i].y));
        CHECK(sup <= 1e-5);
        CHECK(max_abs_diff(rk.back().y, rk.front().y) <= 1e-6);
    }
    CHECK_THROWS_AS(orbit_reconstruct(par, 0.1, 1), std::invalid_argument);
    const std::vector<double> bad{0.0, 0.0};
    CHECK_THROWS_AS(periodic_orbit_samples(par, 0.1, bad), std::invalid_argument);
}

TEST_CASE("solutions of prescribed half period") {
    const auto par = AutonomousParams::make(3);
    CHECK(solutions_count(par, 2.0).count == 1);

    const auto five = solutions_count(par, 5.0);
    CHECK(five.count == 3);
    CHECK(five.out_of_grid.empty());
    int found = 0;
    for (const auto& level : five.levels) {
        for (const auto& r : level.roots) {
            ++found;
            CAPTURE(level.k);
            CHECK(PeriodOracle(3, r.K).eta() == doctest::Approx(5.0 / level.k).epsilon(1e-8));
        }
    }
    CHECK(found == 2);

    CHECK(solutions_count(AutonomousParams::make(2), 1.0).count == 1);
    CHECK_THROWS_AS(solutions_count(par, 0.0), std::invalid_argument);
}
