#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <random>
#include <sstream>
#include <string_view>

#include <spdlog/spdlog.h>

#include "spinyam/ansatz.hpp"
#include "spinyam/autonomous.hpp"
#include "spinyam/clifford.hpp"
#include "spinyam/dissipative.hpp"
#include "spinyam/io.hpp"
#include "svg.hpp"

namespace spinyam::cli {

namespace {

using io::Json;
using io::fmt17;

constexpr int kSvgWidth = 720;
constexpr int kSvgHeight = 540;

const std::vector<std::string> kPalette{"#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};

std::string resolve_format(const OutputOpts& o, std::string_view fallback, std::initializer_list<std::string_view> allowed) {
    std::string fmt = o.format;
    if (fmt.empty() && !o.path.empty()) {
        fmt = std::filesystem::path(o.path).extension().string();
        if (!fmt.empty()) fmt.erase(0, 1);
        std::transform(fmt.begin(), fmt.end(), fmt.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (std::find(allowed.begin(), allowed.end(), fmt) == allowed.end()) fmt.clear();
    }
    if (fmt.empty()) fmt = fallback;
    if (std::find(allowed.begin(), allowed.end(), fmt) == allowed.end()) {
        std::string list;
        for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
        throw UsageError("format '" + fmt + "' is not available here (choose from " + list + ")");
    }
    return fmt;
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw UsageError("failed while writing '" + path + "'");
    spdlog::info("wrote {}", path);
}

void emit(const OutputOpts& o, const std::string& content) { write_text(o.path, content); }

std::string json_text(const Json& j) { return io::dump(j) + "\n"; }

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

Series phase_series(const Trajectory& traj, const std::string& color, bool mirrored = false) {
    Series s;
    s.color = color;
    s.points.reserve(traj.size());
    for (const auto& p : traj.samples)
        s.points.emplace_back(mirrored ? -p.y[0] : p.y[0], mirrored ? -p.y[1] : p.y[1]);
    return s;
}

Series homoclinic_series(const AutonomousParams& par, bool mirrored) {
    Series s;
    s.color = "#d62728";
    s.stroke_width = 1.8;
    for (double t : uniform_grid(-20.0, 20.0, 2001)) {
        const State y = homoclinic(par, t);
        s.points.emplace_back(mirrored ? -y[0] : y[0], mirrored ? -y[1] : y[1]);
    }
    return s;
}

void mark_equilibria(SvgPlot& plot, const AutonomousParams& par) {
    for (const auto& e : equilibria(par)) plot.add(Marker{e[0], e[1], "#000000", 3.5});
}

}  // namespace

// ---------------------------------------------------------------- clifford

int cmd_clifford(const CliffordOpts& o) {
    const CliffordRep rep = build_rep(o.m);
    const RepReport report = verify_rep(rep);
    if (!o.emit.empty()) write_text(o.emit, json_text(io::rep_json(rep)));

    resolve_format(o.out, "json", {"json"});
    Json j;
    j["m"] = rep.m;
    j["dim"] = rep.dim;
    j["report"] = io::report_json(report);
    if (o.emit.empty()) j["rep"] = io::rep_json(rep);
    emit(o.out, json_text(j));
    if (!report.ok()) {
        spdlog::error("Clifford identities violated for m = {}", o.m);
        return kExitVerification;
    }
    return kExitOk;
}

// -------------------------------------------------------------- autonomous

int cmd_portrait(const PortraitOpts& o) {
    const auto par = AutonomousParams::make(o.m);
    const std::string fmt = resolve_format(o.out, "svg", {"svg", "csv"});
    if (o.grid < 1) throw UsageError("--grid must be positive");
    if (!(o.t_max > 0)) throw UsageError("--t-max must be positive");

    const double u_h = homoclinic(par, 0.0)[0];
    const int n_outer = std::max(2, o.grid / 3);
    const double bound = 1.5 * u_h * (1.0 + 0.12 * (n_outer + 1));

    IntegrateOptions opts;
    opts.tol = {1e-12, 1e-12, 2'000'000};
    opts.sample_dt = 0.01;
    opts.energy = autonomous_energy(par);
    opts.stop = [bound](const Sample& s) { return std::max(std::abs(s.y[0]), std::abs(s.y[1])) > bound; };

    struct Orbit {
        double mu;
        bool inner;
        Trajectory traj;
    };
    std::vector<Orbit> orbits;
    for (int j = 1; j <= o.grid; ++j) {
        const double mu = u_h * j / (o.grid + 1);
        // One period is enough inside the loop; its length follows from the level.
        const double K = -2.0 * hamiltonian(par, mu, mu) / par.lambda;
        double span = o.t_max;
        try {
            span = 2.0 * half_period(par, K) * (1.0 + 1e-3);
        } catch (const KOutOfRange&) {
        }
        orbits.push_back({mu, true, integrate(autonomous_field(par), {mu, mu}, {0.0, span}, opts)});
    }
    for (int j = 1; j <= n_outer; ++j) {
        const double mu = u_h * (1.0 + 0.12 * j);
        orbits.push_back({mu, false, integrate(autonomous_field(par), {mu, mu}, {0.0, o.t_max}, opts)});
    }
    spdlog::info("portrait: {} orbits, m = {}", orbits.size(), o.m);

    if (fmt == "csv") {
        std::ostringstream os;
        os << "orbit,mu,t,u,v,H\n";
        for (std::size_t i = 0; i < orbits.size(); ++i)
            for (const auto& s : orbits[i].traj.samples)
                os << i << ',' << fmt17(orbits[i].mu) << ',' << fmt17(s.t) << ',' << fmt17(s.y[0]) << ','
                   << fmt17(s.y[1]) << ',' << fmt17(s.energy) << '\n';
        emit(o.out, os.str());
        return kExitOk;
    }

    SvgPlot plot(kSvgWidth, kSvgWidth, "Phase portrait, m = " + std::to_string(o.m), "u", "v");
    const double r = bound * 1.05;
    plot.set_range(-r, r, -r, r);
    for (const auto& orb : orbits) {
        const std::string color = orb.inner ? "#1f77b4" : "#7f7f7f";
        plot.add(phase_series(orb.traj, color));
        if (orb.inner) plot.add(phase_series(orb.traj, color, true));
    }
    plot.add(homoclinic_series(par, false));
    plot.add(homoclinic_series(par, true));
    mark_equilibria(plot, par);
    emit(o.out, plot.render());
    return kExitOk;
}

int cmd_period(const PeriodOpts& o) {
    const auto par = AutonomousParams::make(o.m);
    const std::string fmt = resolve_format(o.out, "json", {"json", "csv"});
    if (o.K.empty()) throw UsageError("--K needs at least one value");
    QuadratureOptions quad;
    quad.tol = o.quad_tol;

    std::vector<OrbitSpec> specs;
    for (double K : o.K) {
        const auto roots = fk_zeros(par, K);
        OrbitSpec s;
        s.m = o.m;
        s.K = K;
        s.s0 = roots.s0;
        s.s1 = roots.s1;
        s.half_period = half_period(par, K, quad);
        s.energy = -par.lambda * K / 2.0;
        specs.push_back(std::move(s));
    }

    if (fmt == "csv") {
        std::ostringstream os;
        os << "K,s0,s1,half_period,energy\n";
        for (const auto& s : specs)
            os << fmt17(s.K) << ',' << fmt17(s.s0) << ',' << fmt17(s.s1) << ',' << fmt17(s.half_period) << ','
               << fmt17(s.energy) << '\n';
        emit(o.out, os.str());
        return kExitOk;
    }
    if (specs.size() == 1) {
        emit(o.out, json_text(io::orbit_json(specs.front())));
    } else {
        Json arr = Json::array();
        for (const auto& s : specs) arr.push_back(io::orbit_json(s));
        emit(o.out, json_text(arr));
    }
    return kExitOk;
}

int cmd_orbit(const OrbitOpts& o) {
    const auto par = AutonomousParams::make(o.m);
    const std::string fmt = resolve_format(o.out, "csv", {"csv", "json", "svg"});
    if (o.samples < 2) throw UsageError("--samples must be at least 2");
    const OrbitSpec spec = orbit_reconstruct(par, o.K, static_cast<std::size_t>(o.samples));

    if (fmt == "csv") {
        std::ostringstream os;
        io::write_trajectory_csv(os, spec.trajectory);
        emit(o.out, os.str());
    } else if (fmt == "json") {
        Json j = io::orbit_json(spec);
        Json pts = Json::array();
        for (const auto& s : spec.trajectory.samples) pts.push_back(Json::array({s.t, s.y[0], s.y[1], s.energy}));
        j["samples"] = std::move(pts);
        emit(o.out, json_text(j));
    } else {
        SvgPlot plot(kSvgWidth, kSvgWidth, "Periodic orbit, m = " + std::to_string(o.m) + ", K = " + fmt17(o.K), "u",
                     "v");
        plot.add(phase_series(spec.trajectory, "#1f77b4"));
        Series loop = homoclinic_series(par, false);
        loop.dashed = true;
        plot.add(std::move(loop));
        mark_equilibria(plot, par);
        emit(o.out, plot.render());
    }
    return kExitOk;
}

int cmd_homoclinic(const HomoclinicOpts& o) {
    const auto par = AutonomousParams::make(o.m);
    resolve_format(o.out, "json", {"json"});
    if (o.samples < 2 || !(o.t_max > o.t_min)) throw UsageError("need --samples >= 2 and --t-max > --t-min");

    double max_residual = 0.0, max_h = 0.0, t_residual = o.t_min;
    for (double t : uniform_grid(o.t_min, o.t_max, static_cast<std::size_t>(o.samples))) {
        const State y = homoclinic(par, t);
        const State dy = homoclinic_derivative(par, t);
        const State f = vector_field(par, y);
        const double res = std::max(std::abs(dy[0] - f[0]), std::abs(dy[1] - f[1]));
        if (res > max_residual) max_residual = res, t_residual = t;
        max_h = std::max(max_h, std::abs(hamiltonian(par, y[0], y[1])));
    }
    const bool ok = max_residual <= o.tol && max_h <= o.tol;

    Json j;
    j["m"] = o.m;
    j["t_min"] = o.t_min;
    j["t_max"] = o.t_max;
    j["samples"] = o.samples;
    j["max_residual"] = max_residual;
    j["t_max_residual"] = t_residual;
    j["max_abs_H"] = max_h;
    j["tol"] = o.tol;
    j["ok"] = ok;
    emit(o.out, json_text(j));
    if (!ok) {
        spdlog::error("homoclinic residual {} or energy {} above {}", max_residual, max_h, o.tol);
        return kExitVerification;
    }
    return kExitOk;
}

namespace {

Json count_json(const AutonomousParams& par, double T, const SolutionsCount& c) {
    Json levels = Json::array();
    for (const auto& lvl : c.levels) {
        Json roots = Json::array();
        for (const auto& r : lvl.roots) roots.push_back({{"K", r.K}, {"half_period", r.half_period}});
        levels.push_back({{"k", lvl.k}, {"target", lvl.target}, {"multiple", lvl.multiple}, {"roots", roots}});
    }
    Json j;
    j["m"] = par.m;
    j["T"] = T;
    j["count"] = c.count;
    j["levels"] = std::move(levels);
    j["min_half_period"] = c.min_half_period;
    j["max_half_period"] = c.max_half_period;
    j["out_of_grid"] = c.out_of_grid;
    return j;
}

}  // namespace

int cmd_bifurcation(const BifurcationOpts& o) {
    const auto par = AutonomousParams::make(o.m);
    SolutionsOptions sopt;
    if (o.grid < 2) throw UsageError("--grid must be at least 2");
    sopt.grid_size = static_cast<std::size_t>(o.grid);

    if (o.T) {
        resolve_format(o.out, "json", {"json"});
        emit(o.out, json_text(count_json(par, *o.T, solutions_count(par, *o.T, sopt))));
        return kExitOk;
    }

    const std::string fmt = resolve_format(o.out, "csv", {"csv", "json", "svg"});
    if (o.steps < 2 || !(o.T_max > o.T_min) || !(o.T_min > 0)) throw UsageError("need --steps >= 2 and 0 < --T-min < --T-max");
    struct Row {
        double T;
        SolutionsCount c;
    };
    std::vector<Row> rows;
    for (double T : uniform_grid(o.T_min, o.T_max, static_cast<std::size_t>(o.steps))) {
        rows.push_back({T, solutions_count(par, T, sopt)});
        spdlog::debug("T = {}: count {}", T, rows.back().c.count);
    }
    auto sorted_roots = [](const SolutionsCount& c) {
        std::vector<double> ks;
        for (const auto& lvl : c.levels)
            for (const auto& r : lvl.roots) ks.push_back(r.K);
        std::sort(ks.begin(), ks.end());
        return ks;
    };

    if (fmt == "csv") {
        std::ostringstream os;
        os << "T,count,K_roots\n";
        for (const auto& row : rows) {
            os << fmt17(row.T) << ',' << row.c.count << ',';
            const auto ks = sorted_roots(row.c);
            for (std::size_t i = 0; i < ks.size(); ++i) os << (i ? ";" : "") << fmt17(ks[i]);
            os << '\n';
        }
        emit(o.out, os.str());
    } else if (fmt == "json") {
        Json arr = Json::array();
        for (const auto& row : rows) arr.push_back(count_json(par, row.T, row.c));
        emit(o.out, json_text(arr));
    } else {
        SvgPlot plot(kSvgWidth, kSvgHeight, "Bifurcation diagram, m = " + std::to_string(o.m), "T", "K / K0");
        const double kk = k0(par);
        plot.set_range(o.T_min, o.T_max, 0.0, 1.05);
        for (const auto& row : rows)
            for (const auto& lvl : row.c.levels)
                for (const auto& r : lvl.roots)
                    plot.add(Marker{row.T, r.K / kk, kPalette[static_cast<std::size_t>(lvl.k - 1) % kPalette.size()], 2.5});
        Series constant;
        constant.color = "#000000";
        constant.points = {{o.T_min, 1.0}, {o.T_max, 1.0}};
        plot.add(std::move(constant));
        emit(o.out, plot.render());
    }
    return kExitOk;
}

// ------------------------------------------------------------- dissipative

namespace {

ShootingThresholds thresholds(double t_max, double sample_dt, bool keep) {
    ShootingThresholds thr;
    if (!(t_max > 0) || !(sample_dt > 0)) throw UsageError("--t-max and --sample-dt must be positive");
    thr.t_max = t_max;
    thr.sample_dt = sample_dt;
    thr.keep_trajectory = keep;
    return thr;
}

}  // namespace

int cmd_shoot(const ShootOpts& o) {
    const auto par = DissipativeParams::make(o.m);
    const std::string fmt = resolve_format(o.out, "json", {"json", "csv", "svg"});
    const ShootingOutcome out = shoot(par, o.mu, thresholds(o.t_max, o.sample_dt, fmt != "json"));
    spdlog::info("mu = {}: class {}, k = {}", o.mu, to_string(out.cls), out.k);

    if (fmt == "json") {
        emit(o.out, json_text(io::outcome_json(out)));
        return kExitOk;
    }
    const Trajectory full = symmetric_solution(par, out.trajectory);
    if (fmt == "csv") {
        std::ostringstream os;
        io::write_trajectory_csv(os, full);
        emit(o.out, os.str());
        return kExitOk;
    }
    SvgPlot plot(kSvgWidth, kSvgHeight,
                 "Shooting from (" + fmt17(o.mu) + ", " + fmt17(o.mu) + "), m = " + std::to_string(o.m) + ", class " +
                     to_string(out.cls) + ", k = " + std::to_string(out.k),
                 "t", "u, v");
    const double y = 4.0 * std::max(1.0, o.mu);
    plot.set_range(-out.t_end, out.t_end, -y, y);
    Series u, v;
    u.color = "#1f77b4";
    v.color = "#ff7f0e";
    for (const auto& s : full.samples) {
        u.points.emplace_back(s.t, s.y[0]);
        v.points.emplace_back(s.t, s.y[1]);
    }
    plot.add(std::move(u));
    plot.add(std::move(v));
    emit(o.out, plot.render());
    return kExitOk;
}

int cmd_sweep(const SweepOpts& o) {
    const auto par = DissipativeParams::make(o.m);
    const std::string fmt = resolve_format(o.out, "csv", {"csv", "json", "svg"});
    if (o.n < 1 || !(o.mu_min > 0) || (o.n > 1 && !(o.mu_max > o.mu_min)))
        throw UsageError("need --n >= 1 and 0 < --mu-min < --mu-max");
    if (o.jobs < 1) throw UsageError("--jobs must be positive");

    const auto grid = uniform_grid(o.mu_min, o.mu_max, static_cast<std::size_t>(o.n));
    auto outcomes = classify_sweep(par, grid, thresholds(o.t_max, o.sample_dt, false), static_cast<unsigned>(o.jobs));
    std::stable_sort(outcomes.begin(), outcomes.end(), [](const auto& a, const auto& b) { return a.mu < b.mu; });
    spdlog::info("sweep: {} shots on {} threads", outcomes.size(), o.jobs);

    if (fmt == "csv") {
        std::ostringstream os;
        io::write_sweep_csv(os, outcomes);
        emit(o.out, os.str());
    } else if (fmt == "json") {
        Json arr = Json::array();
        for (const auto& out : outcomes) arr.push_back(io::outcome_json(out));
        emit(o.out, json_text(arr));
    } else {
        SvgPlot plot(kSvgWidth, kSvgHeight, "Sign changes along the diagonal, m = " + std::to_string(o.m), "mu", "k");
        Series steps;
        steps.color = "#7f7f7f";
        for (const auto& out : outcomes) {
            steps.points.emplace_back(out.mu, out.k);
            const char* color = out.cls == OutcomeClass::A ? "#1f77b4"
                                : out.cls == OutcomeClass::ICandidate ? "#d62728"
                                                                      : "#bcbd22";
            plot.add(Marker{out.mu, static_cast<double>(out.k), color, 3.0});
        }
        plot.add(std::move(steps));
        emit(o.out, plot.render());
    }
    return kExitOk;
}

int cmd_boundary(const BoundaryOpts& o) {
    const auto par = DissipativeParams::make(o.m);
    resolve_format(o.out, "json", {"json"});
    if (o.k < 0) throw UsageError("--k must be non-negative");
    if (!(o.tol > 0)) throw UsageError("--tol must be positive");
    const ShootingThresholds thr = thresholds(o.t_max, 0.01, false);

    double lo = 0, hi = 0;
    if (o.mu_lo && o.mu_hi) {
        lo = *o.mu_lo;
        hi = *o.mu_hi;
    } else if (o.mu_lo || o.mu_hi) {
        throw UsageError("--mu-lo and --mu-hi go together");
    } else {
        if (!(o.scan_step > 0) || !(o.scan_max > o.scan_step)) throw UsageError("bad scan range");
        std::optional<double> below;
        bool found = false;
        const int n = static_cast<int>(std::floor(o.scan_max / o.scan_step + 1e-9));
        for (int j = 1; j <= n && !found; ++j) {
            const double mu = j * o.scan_step;
            const auto out = shoot(par, mu, thr);
            if (out.cls != OutcomeClass::A) continue;
            if (out.k <= o.k) {
                below = mu;
            } else if (below) {
                lo = *below;
                hi = mu;
                found = true;
            }
        }
        if (!found) throw UsageError("no bracket found for k = " + std::to_string(o.k) + " up to mu = " + fmt17(o.scan_max));
        spdlog::info("bracket for k = {}: [{}, {}]", o.k, lo, hi);
    }

    const BoundaryResult res = boundary_bisect(par, o.k, lo, hi, o.tol, thr);
    Json j;
    j["m"] = o.m;
    j["k"] = res.k;
    j["lo"] = res.lo;
    j["hi"] = res.hi;
    j["width"] = res.hi - res.lo;
    j["shots"] = res.shots;
    j["undetermined"] = res.undetermined;
    j["i_candidates"] = res.i_candidates;
    emit(o.out, json_text(j));
    return kExitOk;
}

int cmd_rescaled(const RescaledOpts& o) {
    const auto par = DissipativeParams::make(o.m);
    resolve_format(o.out, "json", {"json"});
    if (!(o.mu > 0) || !(o.reference_mu > 0) || !(o.T > 0) || !(o.dt > 0))
        throw UsageError("--mu, --reference-mu, --T and --dt must be positive");

    const auto cmp = rescale_compare(par, o.mu, o.T, o.dt);
    const auto ref = rescale_compare(par, o.reference_mu, o.T, o.dt);
    double norm_dev = 0.0;
    for (double t : uniform_grid(0.0, o.T, 1001)) {
        const State y = rescaled_limit(par, t);
        norm_dev = std::max(norm_dev, std::abs(y[0] * y[0] + y[1] * y[1] - 2.0));
    }
    const State y0 = rescaled_limit(par, 0.0);

    Json j;
    j["m"] = o.m;
    j["mu"] = o.mu;
    j["T"] = o.T;
    j["sup_error"] = cmp.sup_error;
    j["samples"] = cmp.samples;
    j["reference_mu"] = o.reference_mu;
    j["reference_sup_error"] = ref.sup_error;
    j["ratio"] = cmp.sup_error / ref.sup_error;
    j["limit"] = {{"U0_at_0", y0[0]}, {"V0_at_0", y0[1]}, {"max_norm_deviation", norm_dev}};
    emit(o.out, json_text(j));
    return kExitOk;
}

// ------------------------------------------------------------------ ansatz

namespace {

struct SourceProfile {
    SystemKind kind;
    SpinorProfile profile;
    std::optional<ShootingOutcome> outcome;  // dissipative source only
};

SourceProfile build_source(int m, const SourceOpts& s) {
    if (s.source == "dissipative") {
        const auto par = DissipativeParams::make(m);
        ShootingOutcome out = shoot(par, s.mu);
        if (out.cls != OutcomeClass::A) spdlog::warn("dissipative source mu = {} is class {}", s.mu, to_string(out.cls));
        Trajectory full = symmetric_solution(par, out.trajectory);
        std::erase_if(full.samples, [&](const Sample& x) { return x.t < s.t_min || x.t > s.t_max; });
        SourceProfile sp{SystemKind::Dissipative, profile_from_phase(SystemKind::Dissipative, m, full), std::nullopt};
        out.trajectory = {};
        sp.outcome = std::move(out);
        return sp;
    }

    const auto par = AutonomousParams::make(m);
    if (!(s.t_max > s.t_min) || !(s.dt > 0)) throw UsageError("need --t-max > --t-min and --dt > 0");
    const auto n = static_cast<std::size_t>(std::llround((s.t_max - s.t_min) / s.dt)) + 1;
    const auto times = uniform_grid(s.t_min, s.t_max, n);
    Trajectory traj;
    if (s.source == "orbit") {
        traj = periodic_orbit_samples(par, s.K, times);
    } else if (s.source == "homoclinic") {
        for (double t : times) {
            const State y = homoclinic(par, t);
            traj.samples.push_back({t, y, hamiltonian(par, y[0], y[1])});
        }
    } else if (s.source == "equilibrium") {
        const State c = equilibria(par)[1];
        for (double t : times) traj.samples.push_back({t, c, hamiltonian(par, c[0], c[1])});
    } else {
        throw UsageError("unknown source '" + s.source + "'");
    }
    return {SystemKind::Autonomous, profile_from_phase(SystemKind::Autonomous, m, traj), std::nullopt};
}

Json source_json(int m, const SourceOpts& s) {
    Json j;
    j["m"] = m;
    j["source"] = s.source;
    if (s.source == "orbit") j["K"] = s.K;
    if (s.source == "dissipative") j["mu"] = s.mu;
    return j;
}

/// Points with |x| in [0.5, 2] built from raw mt19937 output.
std::vector<std::vector<double>> residual_points(int n, int count, std::uint32_t seed) {
    std::mt19937 gen(seed);
    auto unit = [&] { return static_cast<double>(gen()) / 4294967296.0; };
    std::vector<std::vector<double>> pts;
    while (static_cast<int>(pts.size()) < count) {
        std::vector<double> x(static_cast<std::size_t>(n));
        double norm = 0.0;
        for (auto& c : x) {
            c = 2.0 * unit() - 1.0;
            norm += c * c;
        }
        norm = std::sqrt(norm);
        const double radius = 0.5 + 1.5 * unit();
        if (norm < 1e-3) continue;
        for (auto& c : x) c *= radius / norm;
        pts.push_back(std::move(x));
    }
    return pts;
}

}  // namespace

int cmd_profile(const ProfileOpts& o) {
    const std::string fmt = resolve_format(o.out, "csv", {"csv", "svg"});
    const SourceProfile sp = build_source(o.m, o.src);
    if (fmt == "csv") {
        std::ostringstream os;
        io::write_profile_csv(os, sp.profile);
        emit(o.out, os.str());
        return kExitOk;
    }
    SvgPlot plot(kSvgWidth, kSvgHeight, "Spinor profile, m = " + std::to_string(o.m) + ", source " + o.src.source,
                 "log10 r", "log10 |psi|");
    Series s;
    for (const auto& p : sp.profile.samples) {
        const double a = SpinorProfile::psi_abs(p);
        if (a > 0) s.points.emplace_back(std::log10(p.r), std::log10(a));
    }
    plot.add(std::move(s));
    emit(o.out, plot.render());
    return kExitOk;
}

int cmd_residual(const ResidualOpts& o) {
    const std::string fmt = resolve_format(o.out, "json", {"json", "csv"});
    if (o.h.empty()) throw UsageError("--fd-step needs at least one value");
    for (double h : o.h)
        if (!(h > 0)) throw UsageError("--fd-step values must be positive");
    if (o.points < 1) throw UsageError("--points must be positive");

    const SourceProfile sp = build_source(o.m, o.src);
    const CliffordRep rep = build_rep(euclidean_dim(sp.kind, o.m));
    const auto pts = residual_points(static_cast<int>(rep.m), o.points, o.seed);

    std::vector<double> res;
    for (double h : o.h) res.push_back(pde_residual(sp.kind, o.m, sp.profile, rep, pts, h));
    std::vector<std::optional<double>> order(res.size());
    for (std::size_t i = 1; i < res.size(); ++i)
        if (res[i] > 0 && res[i - 1] > 0) order[i] = std::log(res[i - 1] / res[i]) / std::log(o.h[i - 1] / o.h[i]);

    if (fmt == "csv") {
        std::ostringstream os;
        os << "h,residual,order\n";
        for (std::size_t i = 0; i < res.size(); ++i)
            os << fmt17(o.h[i]) << ',' << fmt17(res[i]) << ',' << (order[i] ? fmt17(*order[i]) : "") << '\n';
        emit(o.out, os.str());
        return kExitOk;
    }
    Json j = source_json(o.m, o.src);
    j["points"] = o.points;
    j["seed"] = o.seed;
    Json rows = Json::array();
    for (std::size_t i = 0; i < res.size(); ++i)
        rows.push_back({{"h", o.h[i]}, {"residual", res[i]}, {"order", order[i] ? Json(*order[i]) : Json(nullptr)}});
    j["rows"] = std::move(rows);
    emit(o.out, json_text(j));
    return kExitOk;
}

int cmd_decay(const DecayOpts& o) {
    resolve_format(o.out, "json", {"json"});
    if (o.end != "zero" && o.end != "infinity" && o.end != "both") throw UsageError("--end must be zero, infinity or both");
    if (!(o.decades >= 0)) throw UsageError("--decades must be non-negative");
    const SourceProfile sp = build_source(o.m, o.src);

    double decades = o.decades;
    if (decades == 0.0) {
        if (!sp.outcome || !sp.outcome->first_nonpositive_H)
            throw UsageError("--decades 0 needs a dissipative source that reaches H <= 0");
        decades = (sp.outcome->t_end - *sp.outcome->first_nonpositive_H) / std::log(10.0);
    }

    Json j = source_json(o.m, o.src);
    j["decades"] = decades;
    if (o.end != "infinity") j["exponent_zero"] = decay_fit(sp.profile, ProfileEnd::Zero, decades);
    if (o.end != "zero") j["exponent_infinity"] = decay_fit(sp.profile, ProfileEnd::Infinity, decades);
    emit(o.out, json_text(j));
    return kExitOk;
}

}  // namespace spinyam::cli
