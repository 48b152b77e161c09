#pragma once

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "spinyam/autonomous.hpp"

namespace spinyam::testing {

// Independent evaluation of the half period as the raw singular integral
//   int_{s0}^{s1} dz / (2 lambda sqrt(F_K(z)))
// with tanh-sinh quadrature. Each half is written in the offset from its
// turning point so that F_K stays accurate where it vanishes.
struct PeriodOracle {
    AutonomousParams par;
    double K;
    double c;
    double s0 = 0, s1 = 0;

    PeriodOracle(int m, double k) : par(AutonomousParams::make(m)), K(k), c(1 / (par.lambda * par.p)) {
        const double s_star = std::pow(par.lambda, m - 1);
        s0 = bisect(0.0, s_star);
        double hi = 2 * s_star;
        while (h(hi) > 0) hi *= 2;
        s1 = bisect(s_star, hi);
    }

    // h(s) = s - g(s); positive strictly between the roots.
    double h(double s) const { return s - c * std::pow(s, par.p) - K; }

    double bisect(double a, double b) const {
        const bool rising = h(a) < h(b);
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            ((h(mid) < 0) == rising ? a : b) = mid;
        }
        return 0.5 * (a + b);
    }

    // F_K(r + d) for a root r.
    double f_near(double r, double d) const {
        const double dg = c * std::pow(r, par.p) * std::expm1(par.p * std::log1p(d / r));
        return (d - dg) * (2 * r + d + dg);
    }

    double eta() const {
        boost::math::quadrature::tanh_sinh<double> ts;
        const double mid = 0.5 * (s0 + s1);
        const double scale = 1 / (2 * par.lambda);
        auto left = [&](double d) { return d <= 0 ? 0.0 : scale / std::sqrt(f_near(s0, d)); };
        auto right = [&](double d) { return d <= 0 ? 0.0 : scale / std::sqrt(f_near(s1, -d)); };
        return ts.integrate(left, 0.0, mid - s0, 1e-14) + ts.integrate(right, 0.0, s1 - mid, 1e-14);
    }
};

}  // namespace spinyam::testing
