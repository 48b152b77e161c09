// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--cli PATH]

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "period_oracle.hpp"
#include "spinyam/ansatz.hpp"
#include "spinyam/autonomous.hpp"
#include "spinyam/clifford.hpp"
#include "spinyam/dissipative.hpp"

using namespace spinyam;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[fail] ";
        }
        detail << what << "; ";
    }
};

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double max_diff(const State& a, const State& b) { return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])); }

std::string cli_path;

// ---------------------------------------------------------------------------

void criterion_1(Verdict& v) {
    const auto start = std::chrono::steady_clock::now();
    bool all = true;
    for (int m = 1; m <= 8; ++m) {
        const auto report = verify_rep(build_rep(m));
        bool exact = report.ok();
        for (const auto& p : report.pairs) exact = exact && p.max_norm == 0.0;
        if (!exact) v.require(false, "m = " + std::to_string(m) + " relations");
        all = all && exact;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(all, "identities exact for m = 1..8");

    const auto r3 = build_rep(3);
    const GaussInt o{1, 0}, z{0, 0}, n{-1, 0}, i{0, 1}, mi{0, -1};
    auto mat = [](std::initializer_list<GaussInt> e) {
        GaussMatrix a(2);
        auto it = e.begin();
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) a(r, c) = *it++;
        return a;
    };
    const bool pauli = r3.alphas[0] == mat({z, o, n, z}) && r3.alphas[1] == mat({z, i, i, z}) &&
                       r3.alphas[2] == mat({mi, z, z, i});
    v.require(pauli, "m = 3 matrices match the worked example");
    v.require(secs < 1.0, "runtime " + num(secs) + " s < 1 s");
}

void criterion_2(Verdict& v) {
    for (int m = 2; m <= 5; ++m) {
        const auto par = AutonomousParams::make(m);
        double res = 0, energy = 0;
        for (int j = 0; j <= 4000; ++j) {
            const double t = -10 + 20.0 * j / 4000;
            const State y = homoclinic(par, t);
            res = std::max(res, max_diff(homoclinic_derivative(par, t), vector_field(par, y)));
            energy = std::max(energy, std::abs(hamiltonian(par, y[0], y[1])));
        }
        v.require(res <= 1e-12 && energy <= 1e-12,
                  "m = " + std::to_string(m) + ": residual " + num(res) + ", |H| " + num(energy));
    }
}

void criterion_3(Verdict& v) {
    for (int m = 2; m <= 4; ++m) {
        const auto par = AutonomousParams::make(m);
        const std::string tag = "m = " + std::to_string(m) + ": ";

        const double stated = std::sqrt(m - 1.0) / 2 * std::numbers::pi;
        const double eta = half_period(par, 0.9999 * k0(par));
        const double rel = std::abs(eta - stated) / stated;
        v.require(rel <= 0.01, tag + "eta(0.9999 K0) = " + num(eta) + " vs (sqrt(m-1)/2) pi = " + num(stated) +
                                   " (rel " + num(rel) + "; linearisation gives pi/sqrt(m-1) = " +
                                   num(std::numbers::pi / std::sqrt(m - 1.0)) + ")");

        const double rational = m == 2 ? 1.0 / 4 : m == 3 ? 1.0 / 3 : 27.0 / 32;
        v.require(k0(par) == rational, tag + "K0 = " + num(k0(par)));

        std::vector<double> x, y;
        double oracle_gap = 0;
        for (int j = 0; j <= 8; ++j) {
            const double K = std::pow(10.0, -6 + 0.25 * j);
            const double lib = half_period(par, K);
            const double ref = testing::PeriodOracle(m, K).eta();
            oracle_gap = std::max(oracle_gap, std::abs(lib - ref) / ref);
            x.push_back(std::log(1 / K));
            y.push_back(ref);
        }
        const double slope = fit_line(x, y).slope;
        const double expected = 1.0 / (m - 1);
        v.require(std::abs(slope - expected) <= 0.05 * expected,
                  tag + "small-K slope " + num(slope) + " vs " + num(expected));
        v.require(oracle_gap <= 1e-9, tag + "library vs tanh-sinh oracle " + num(oracle_gap));
    }
}

void criterion_4(Verdict& v) {
    const auto par = AutonomousParams::make(3);
    for (double K : {0.05, 0.1, 0.2, 0.3}) {
        const auto spec = orbit_reconstruct(par, K, 2001);
        const double level = -par.lambda * K / 2;
        double energy = 0;
        for (const auto& s : spec.trajectory.samples)
            energy = std::max(energy, std::abs(hamiltonian(par, s.y[0], s.y[1]) - level));

        IntegrateOptions opt;
        opt.tol = {1e-12, 1e-12, 10'000'000};
        opt.sample_dt = spec.half_period / 200;
        opt.energy = autonomous_energy(par);
        const State y0 = spec.trajectory.front().y;
        const auto one = integrate(autonomous_field(par), y0, {0, 2 * spec.half_period}, opt);
        std::vector<double> times;
        for (const auto& s : one.samples) times.push_back(s.t);
        const auto quad = periodic_orbit_samples(par, K, times);
        double sup = 0;
        for (std::size_t i = 0; i < times.size(); ++i) sup = std::max(sup, max_diff(quad.samples[i].y, one.samples[i].y));

        const auto ten = integrate(autonomous_field(par), y0, {0, 20 * spec.half_period}, opt);
        const double h0 = hamiltonian(par, y0[0], y0[1]);
        double drift = 0;
        for (const auto& s : ten.samples) drift = std::max(drift, std::abs(s.energy - h0));

        v.require(sup <= 1e-5 && energy <= 1e-9 && drift <= 1e-8,
                  "K = " + num(K) + ": sup " + num(sup) + ", energy " + num(energy) + ", drift " + num(drift));
    }
}

void criterion_5(Verdict& v) {
    const auto par = AutonomousParams::make(3);
    const auto two = solutions_count(par, 2.0);
    v.require(two.count == 1, "T = 2: count " + std::to_string(two.count));

    const auto five = solutions_count(par, 5.0);
    v.require(five.count == 3, "T = 5: count " + std::to_string(five.count));
    for (const auto& level : five.levels) {
        for (const auto& r : level.roots) {
            const double eta = testing::PeriodOracle(3, r.K).eta();
            const double target = 5.0 / level.k;
            v.require(std::abs(eta - target) <= 1e-8, "k = " + std::to_string(level.k) + ": K = " + num(r.K) +
                                                          ", |eta - T/k| = " + num(std::abs(eta - target)));
        }
    }
}

void criterion_6(Verdict& v) {
    for (int m : {3, 4}) {
        const auto par = DissipativeParams::make(m);
        int monotone = 0, symmetric = 0, same_sign = 0, trapped = 0, rest = 0, undetermined = 0;
        double worst_sym = 0;
        for (int j = 1; j <= 50; ++j) {
            const double mu = 0.06 * j;
            const auto out = shoot(par, mu);
            const auto& s = out.trajectory.samples;
            if (out.cls == OutcomeClass::Undetermined) ++undetermined;

            bool mono = true, trap = true, moving = true;
            for (std::size_t i = 1; i < s.size(); ++i) {
                mono = mono && s[i].energy <= s[i - 1].energy + 1e-10;
                moving = moving && s[i].y[0] * s[i].y[0] + s[i].y[1] * s[i].y[1] > 0;
                if (out.first_nonpositive_H && s[i].t >= *out.first_nonpositive_H)
                    trap = trap && s[i].y[0] * s[i].y[1] > 0;
            }
            monotone += mono;
            trapped += trap;
            rest += moving;

            bool tail = true;
            if (out.cls != OutcomeClass::Undetermined) {
                for (const auto& x : s)
                    if (x.t >= 0.8 * out.t_end) tail = tail && x.y[0] * x.y[1] > 0;
            }
            same_sign += tail;

            // Independent backward run against u(-t) = v(t), v(-t) = u(t).
            IntegrateOptions opt;
            opt.tol = {1e-13, 1e-13, 10'000'000};
            opt.sample_dt = 0.01;
            const auto back = integrate(dissipative_field(par), {mu, mu}, {0, -out.t_end}, opt);
            double err = 0;
            for (const auto& b : back.samples) {
                const auto it = std::lower_bound(s.begin(), s.end(), -b.t - 1e-9,
                                                 [](const Sample& a, double t) { return a.t < t; });
                if (it == s.end() || std::abs(it->t + b.t) > 1e-9) continue;
                const double scale = std::max(1.0, std::hypot(it->y[0], it->y[1]));
                err = std::max(err, std::max(std::abs(b.y[0] - it->y[1]), std::abs(b.y[1] - it->y[0])) / scale);
            }
            worst_sym = std::max(worst_sym, err);
            symmetric += err <= 1e-8;
        }
        const std::string tag = "m = " + std::to_string(m) + ": ";
        v.require(monotone == 50, tag + "monotone energy " + std::to_string(monotone) + "/50");
        v.require(symmetric == 50, tag + "symmetry " + std::to_string(symmetric) + "/50 (worst " + num(worst_sym) + ")");
        v.require(same_sign == 50, tag + "same-sign tails " + std::to_string(same_sign) + "/50");
        v.require(trapped == 50, tag + "trapped after H <= 0 " + std::to_string(trapped) + "/50");
        v.require(rest == 50, tag + "no rest " + std::to_string(rest) + "/50");
        v.detail << tag << undetermined << " undetermined; ";
    }
}

void criterion_7(Verdict& v) {
    const auto par = DissipativeParams::make(3);
    for (double mu : {0.1, 0.6, 0.7}) {
        const auto out = shoot(par, mu);
        bool grows = false;
        if (out.first_nonpositive_H) {
            double z_class = 0, z_end = 0;
            for (const auto& s : out.trajectory.samples) {
                const double z = s.y[0] * s.y[0] + s.y[1] * s.y[1];
                if (s.t <= *out.first_nonpositive_H) z_class = z;
                z_end = z;
            }
            grows = z_end > 10 * z_class;
        }
        v.require(out.cls == OutcomeClass::A && out.k == 0 && out.first_nonpositive_H && out.cosh_bound && grows,
                  "mu = " + num(mu) + ": class " + to_string(out.cls) + ", k = " + std::to_string(out.k) +
                      ", C = " + (out.cosh_bound ? num(*out.cosh_bound) : std::string("none")));
    }

    // Brackets from a coarse scan, then bisection.
    std::vector<double> mids;
    for (int k = 0; k <= 2; ++k) {
        double lo = 0, hi = 0;
        for (int j = 1; j <= 400 && hi == 0; ++j) {
            const auto out = shoot(par, 0.05 * j);
            if (out.cls != OutcomeClass::A) continue;
            if (out.k <= k) lo = 0.05 * j;
            else if (lo > 0) hi = 0.05 * j;
        }
        if (hi == 0) {
            v.require(false, "k = " + std::to_string(k) + ": no bracket");
            return;
        }
        const auto b = boundary_bisect(par, k, lo, hi, 1e-8);
        const double width = b.hi - b.lo;
        v.require(width <= 1e-8 && (k != 0 || b.lo > 0.7),
                  "k = " + std::to_string(k) + ": [" + num(b.lo) + ", " + num(b.hi) + "], width " + num(width));
        mids.push_back(0.5 * (b.lo + b.hi));
    }
    v.require(mids[0] < mids[1] && mids[1] < mids[2], "boundaries strictly increasing");
}

void criterion_8(Verdict& v) {
    const auto par = DissipativeParams::make(3);
    const double e10 = rescale_compare(par, 10, 5).sup_error;
    const double e100 = rescale_compare(par, 100, 5).sup_error;
    const double e1000 = rescale_compare(par, 1000, 5).sup_error;
    v.require(e100 <= 0.5 * e10, "e(100) = " + num(e100) + " <= e(10) / 2 = " + num(e10 / 2));
    v.require(e10 > e100 && e100 > e1000, "e(1000) = " + num(e1000) + " monotone");

    const State y0 = rescaled_limit(par, 0);
    double dev = 0;
    for (int j = 0; j <= 5000; ++j) {
        const State y = rescaled_limit(par, 1e-3 * j);
        dev = std::max(dev, std::abs(y[0] * y[0] + y[1] * y[1] - 2));
    }
    v.require(std::abs(y0[0] - 1) <= 1e-12 && std::abs(y0[1] - 1) <= 1e-12 && dev <= 1e-12,
              "limit identities, |U0^2 + V0^2 - 2| <= " + num(dev));
}

std::vector<std::vector<double>> sample_points(int n, int count) {
    std::mt19937 gen(5489);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < count; ++i) {
        std::vector<double> x(static_cast<std::size_t>(n));
        double s = 0;
        for (auto& c : x) {
            c = g(gen);
            s += c * c;
        }
        const double r = radius(gen) / std::sqrt(s);
        for (auto& c : x) c *= r;
        pts.push_back(std::move(x));
    }
    return pts;
}

void criterion_9(Verdict& v) {
    const int m = 3;
    const auto par = AutonomousParams::make(m);
    const auto rep = build_rep(m);
    const auto pts = sample_points(m, 16);
    std::vector<double> times;
    for (int j = 0; j <= 6000; ++j) times.push_back(-30 + 0.01 * j);

    auto sampled = [&](const std::function<State(double)>& f) {
        Trajectory traj;
        for (double t : times) {
            const State y = f(t);
            traj.samples.push_back({t, y, hamiltonian(par, y[0], y[1])});
        }
        return traj;
    };
    struct Source {
        std::string name;
        Trajectory traj;
    };
    const std::vector<Source> sources{
        {"homoclinic", sampled([&](double t) { return homoclinic(par, t); })},
        {"equilibrium", sampled([&](double) { return equilibria(par)[1]; })},
        {"orbit K = 0.1", periodic_orbit_samples(par, 0.1, times)},
    };
    const std::array<double, 3> hs{1e-3, 5e-4, 2.5e-4};
    for (const auto& src : sources) {
        const auto prof = profile_from_phase(SystemKind::Autonomous, m, src.traj);
        std::array<double, 3> res{};
        for (std::size_t i = 0; i < hs.size(); ++i) res[i] = pde_residual(SystemKind::Autonomous, m, prof, rep, pts, hs[i]);
        const double o1 = std::log2(res[0] / res[1]), o2 = std::log2(res[1] / res[2]);
        v.require(o1 >= 1.9 && o2 >= 1.9, src.name + ": residual " + num(res[2]) + ", orders " + num(o1) + ", " + num(o2));
        if (src.name.rfind("orbit", 0) == 0) {
            const double z = decay_fit(prof, ProfileEnd::Zero, 10), inf = decay_fit(prof, ProfileEnd::Infinity, 10);
            const double target = -(m - 1) / 2.0;
            v.require(std::abs(z - target) <= 0.1 && std::abs(inf - target) <= 0.1,
                      "orbit decay exponents " + num(z) + " (r -> 0), " + num(inf) + " (r -> inf)");
        }
    }

    const auto dpar = DissipativeParams::make(m);
    const auto out = shoot(dpar, 0.6);
    const auto prof = profile_from_phase(SystemKind::Dissipative, m, symmetric_solution(dpar, out.trajectory));
    const double decades = (out.t_end - out.first_nonpositive_H.value_or(0.0)) / std::log(10.0);
    const double ex = decay_fit(prof, ProfileEnd::Zero, decades);
    v.require(ex >= -(m - 1) / 2.0 - 0.1 && ex <= -(m - 2) / 2.0 + 0.1,
              "dissipative A0 (mu = 0.6) exponent at r -> 0: " + num(ex));
}

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = cli_path + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

void criterion_10(Verdict& v) {
    if (cli_path.empty() || !fs::exists(cli_path)) {
        v.require(false, "CLI executable not available");
        return;
    }
    const fs::path dir = fs::temp_directory_path() / ("spinyam_accept_" + std::to_string(getpid()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << R"({"m": 3, "dissipative": {"sweep": {"n": 60, "jobs": 8}}})";
    const std::string c = " --config " + cfg.string();

    const std::vector<std::string> commands{
        "clifford --m 5",
        "autonomous portrait --format svg",
        "autonomous portrait --format csv",
        "autonomous period --K 0.05 --K 0.1 --K 0.3",
        "autonomous orbit --K 0.1 --format csv",
        "autonomous homoclinic",
        "autonomous bifurcation --T 5",
        "autonomous bifurcation --T-min 1 --T-max 6 --steps 6 --format csv",
        "dissipative shoot --mu 0.6",
        "dissipative shoot --mu 0.6 --format csv",
        "dissipative sweep --format csv",
        "dissipative sweep --format json",
        "dissipative boundary --k 0",
        "dissipative rescaled",
        "ansatz profile --source orbit",
        "ansatz residual --source homoclinic",
        "ansatz decay --source dissipative --decades 0",
    };
    int identical = 0;
    for (const auto& cmd : commands) {
        const Run a = run_cli(cmd + c), b = run_cli(cmd + c);
        const bool same = a.code == 0 && b.code == 0 && a.out == b.out && !a.out.empty();
        if (!same) v.require(false, "'" + cmd + "' exit " + std::to_string(a.code));
        identical += same;
    }
    v.require(identical == static_cast<int>(commands.size()),
              std::to_string(identical) + "/" + std::to_string(commands.size()) + " commands byte-identical");

    const Run one = run_cli("dissipative sweep --format csv --jobs 1" + c);
    const Run eight = run_cli("dissipative sweep --format csv --jobs 8" + c);
    v.require(one.code == 0 && one.out == eight.out, "--jobs 1 and --jobs 8 sweeps identical");
    fs::remove_all(dir);
}

const std::array<std::pair<const char*, void (*)(Verdict&)>, 10> kCriteria{{
    {"Clifford identities", criterion_1},
    {"homoclinic exactness", criterion_2},
    {"period limits", criterion_3},
    {"orbit cross-validation", criterion_4},
    {"bifurcation count", criterion_5},
    {"dissipative invariants", criterion_6},
    {"A0 classification and boundaries", criterion_7},
    {"rescaled limit", criterion_8},
    {"end-to-end PDE check", criterion_9},
    {"CLI determinism", criterion_10},
}};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion (1-10)")->check(CLI::Range(0, 10));
    app.add_option("--cli", cli_path, "Path to the spinyam executable");
    CLI11_PARSE(app, argc, argv);

    int failures = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only != 0 && only != id) continue;
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            kCriteria[i].second(v);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d (%s, %.2f s): %s\n", v.pass ? "PASS" : "FAIL", id, kCriteria[i].first, secs,
                    v.detail.str().c_str());
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
