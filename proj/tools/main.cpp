#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "commands.hpp"
#include "spinyam/clifford.hpp"
#include "spinyam/io.hpp"
#include "spinyam/numerics.hpp"

namespace {

using spinyam::io::Json;
using namespace spinyam::cli;

/// Reads a JSON object as CLI11 configuration. Scalar keys apply to the
/// subcommand being run, whether they sit at the top level or inside objects
/// named after that subcommand's path ({"dissipative": {"shoot": {...}}}).
/// The most deeply nested value of a key wins.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        Json j;
        try {
            j = Json::parse(input);
        } catch (const Json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

        std::vector<std::string> leaf;
        for (const CLI::App* app = root_;;) {
            const auto subs = app->get_subcommands();
            if (subs.empty()) break;
            app = subs.front();
            leaf.push_back(app->get_name());
        }

        std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> found;
        collect(j, 0, leaf, found);
        std::vector<CLI::ConfigItem> items;
        for (auto& [name, entry] : found) {
            CLI::ConfigItem item;
            item.parents = leaf;
            item.name = name;
            item.inputs = std::move(entry.second);
            items.push_back(std::move(item));
        }
        return items;
    }

private:
    static std::string scalar(const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_float()) return spinyam::io::fmt17(v.get<double>());
        return v.dump();
    }

    static void collect(const Json& obj, std::size_t depth, const std::vector<std::string>& leaf,
                        std::map<std::string, std::pair<std::size_t, std::vector<std::string>>>& found) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const Json& v = it.value();
            if (v.is_object()) {
                if (depth < leaf.size() && it.key() == leaf[depth]) collect(v, depth + 1, leaf, found);
                continue;
            }
            std::string name = it.key();
            for (auto& c : name)
                if (c == '_') c = '-';
            std::vector<std::string> inputs;
            if (v.is_array()) {
                for (const auto& e : v) inputs.push_back(scalar(e));
            } else {
                inputs.push_back(scalar(v));
            }
            auto pos = found.find(name);
            if (pos == found.end() || pos->second.first <= depth) found[name] = {depth, std::move(inputs)};
        }
    }

    const CLI::App* root_;
};

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("spinyam");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("LOG_LEVEL")) {
        const std::string lvl = env;
        if (lvl == "error") spdlog::set_level(spdlog::level::err);
        else if (lvl == "warn") spdlog::set_level(spdlog::level::warn);
        else if (lvl == "info") spdlog::set_level(spdlog::level::info);
        else if (lvl == "debug") spdlog::set_level(spdlog::level::debug);
        else spdlog::warn("ignoring LOG_LEVEL='{}' (expected error, warn, info or debug)", lvl);
    }
}

void add_output(CLI::App* app, OutputOpts& out) {
    app->add_option("--out,-o", out.path, "Output file (stdout when omitted)");
    app->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json", "svg"}));
}

void add_source(CLI::App* app, SourceOpts& s) {
    app->add_option("--source", s.source, "Phase-plane solution behind the profile")
        ->check(CLI::IsMember({"orbit", "homoclinic", "equilibrium", "dissipative"}))
        ->capture_default_str();
    app->add_option("--K", s.K, "Energy parameter of the periodic orbit")->capture_default_str();
    app->add_option("--mu", s.mu, "Initial datum (mu, mu) of the dissipative solution")->capture_default_str();
    app->add_option("--t-min", s.t_min, "First phase-plane time (r = e^{-t})")->capture_default_str();
    app->add_option("--t-max", s.t_max, "Last phase-plane time")->capture_default_str();
    app->add_option("--dt", s.dt, "Phase-plane time step")->capture_default_str();
}

CLI::Option* add_m(CLI::App* app, int& m, int min_m) {
    return app->add_option("--m", m, "Dimension")->check(CLI::Range(min_m, 1 << 20))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"Spinorial Yamabe reductions on spheres: Clifford matrices, planar systems and ansatz spinors"};
    app.name("spinyam");
    app.require_subcommand(1);
    app.fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::ignore);
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file with option defaults");

    int rc = kExitOk;

    // clifford
    CliffordOpts cliff;
    auto* c = app.add_subcommand("clifford", "Build and verify the Clifford matrices alpha_1..alpha_m");
    c->add_option("--m", cliff.m, "Dimension (1 to 12)")->capture_default_str();
    c->add_option("--emit", cliff.emit, "Write the representation as JSON to this file");
    add_output(c, cliff.out);
    c->callback([&] { rc = cmd_clifford(cliff); });

    // autonomous
    auto* au = app.add_subcommand("autonomous", "The autonomous planar system");
    au->require_subcommand(1);

    PortraitOpts portrait;
    auto* ap = au->add_subcommand("portrait", "Phase portrait with equilibria and the homoclinic loop");
    add_m(ap, portrait.m, 2);
    ap->add_option("--grid", portrait.grid, "Initial points inside the loop")->capture_default_str();
    ap->add_option("--t-max", portrait.t_max, "Integration time for orbits outside the loop")->capture_default_str();
    add_output(ap, portrait.out);
    ap->callback([&] { rc = cmd_portrait(portrait); });

    PeriodOpts period;
    auto* apd = au->add_subcommand("period", "Turning points and half period for energy levels K");
    add_m(apd, period.m, 2);
    apd->add_option("--K", period.K, "Energy parameters in (0, K0)")->capture_default_str();
    apd->add_option("--quad-tol", period.quad_tol, "Quadrature tolerance")->capture_default_str();
    add_output(apd, period.out);
    apd->callback([&] { rc = cmd_period(period); });

    OrbitOpts orbit;
    auto* ao = au->add_subcommand("orbit", "One period reconstructed from the quadrature");
    add_m(ao, orbit.m, 2);
    ao->add_option("--K", orbit.K, "Energy parameter in (0, K0)")->capture_default_str();
    ao->add_option("--samples", orbit.samples, "Samples over one period")->capture_default_str();
    add_output(ao, orbit.out);
    ao->callback([&] { rc = cmd_orbit(orbit); });

    HomoclinicOpts hom;
    auto* ah = au->add_subcommand("homoclinic", "Residual of the closed-form homoclinic solution");
    add_m(ah, hom.m, 2);
    ah->add_option("--t-min", hom.t_min)->capture_default_str();
    ah->add_option("--t-max", hom.t_max)->capture_default_str();
    ah->add_option("--samples", hom.samples)->capture_default_str();
    ah->add_option("--tol", hom.tol, "Pass threshold on residual and energy")->capture_default_str();
    add_output(ah, hom.out);
    ah->callback([&] { rc = cmd_homoclinic(hom); });

    BifurcationOpts bif;
    auto* ab = au->add_subcommand("bifurcation", "Count solutions of half period T/k");
    add_m(ab, bif.m, 2);
    ab->add_option("--T", bif.T, "Single period T (JSON report)");
    ab->add_option("--T-min", bif.T_min)->capture_default_str();
    ab->add_option("--T-max", bif.T_max)->capture_default_str();
    ab->add_option("--steps", bif.steps, "Number of T values in the range")->capture_default_str();
    ab->add_option("--grid", bif.grid, "K grid size")->capture_default_str();
    add_output(ab, bif.out);
    ab->callback([&] { rc = cmd_bifurcation(bif); });

    // dissipative
    auto* di = app.add_subcommand("dissipative", "The cosh-weighted planar system");
    di->require_subcommand(1);

    ShootOpts sh;
    auto* ds = di->add_subcommand("shoot", "Shoot from (mu, mu) and classify");
    add_m(ds, sh.m, 3);
    ds->add_option("--mu", sh.mu)->capture_default_str();
    ds->add_option("--t-max", sh.t_max)->capture_default_str();
    ds->add_option("--sample-dt", sh.sample_dt)->capture_default_str();
    add_output(ds, sh.out);
    ds->callback([&] { rc = cmd_shoot(sh); });

    SweepOpts sw;
    auto* dw = di->add_subcommand("sweep", "Classify a uniform grid of initial data");
    add_m(dw, sw.m, 3);
    dw->add_option("--mu-min", sw.mu_min)->capture_default_str();
    dw->add_option("--mu-max", sw.mu_max)->capture_default_str();
    dw->add_option("--n", sw.n, "Grid size")->capture_default_str();
    dw->add_option("--jobs,-j", sw.jobs, "Worker threads")->capture_default_str();
    dw->add_option("--t-max", sw.t_max)->capture_default_str();
    dw->add_option("--sample-dt", sw.sample_dt)->capture_default_str();
    add_output(dw, sw.out);
    dw->callback([&] { rc = cmd_sweep(sw); });

    BoundaryOpts bd;
    auto* db = di->add_subcommand("boundary", "Bisect the transition from k to k+1 sign changes");
    add_m(db, bd.m, 3);
    db->add_option("--k", bd.k)->capture_default_str();
    db->add_option("--tol", bd.tol, "Target bracket width")->capture_default_str();
    db->add_option("--mu-lo", bd.mu_lo);
    db->add_option("--mu-hi", bd.mu_hi);
    db->add_option("--scan-step", bd.scan_step, "Step of the bracketing scan")->capture_default_str();
    db->add_option("--scan-max", bd.scan_max)->capture_default_str();
    db->add_option("--t-max", bd.t_max)->capture_default_str();
    add_output(db, bd.out);
    db->callback([&] { rc = cmd_boundary(bd); });

    RescaledOpts rs;
    auto* dr = di->add_subcommand("rescaled", "Compare the rescaled solution with its mu -> infinity limit");
    add_m(dr, rs.m, 3);
    dr->add_option("--mu", rs.mu)->capture_default_str();
    dr->add_option("--T", rs.T, "Rescaled window [0, T]")->capture_default_str();
    dr->add_option("--reference-mu", rs.reference_mu)->capture_default_str();
    dr->add_option("--dt", rs.dt, "Rescaled sampling step")->capture_default_str();
    add_output(dr, rs.out);
    dr->callback([&] { rc = cmd_rescaled(rs); });

    // ansatz
    auto* an = app.add_subcommand("ansatz", "Radial spinor fields built from planar solutions");
    an->require_subcommand(1);

    ProfileOpts prof;
    auto* np = an->add_subcommand("profile", "Radial profile f1, f2, |psi|");
    add_m(np, prof.m, 2);
    add_source(np, prof.src);
    add_output(np, prof.out);
    np->callback([&] { rc = cmd_profile(prof); });

    ResidualOpts resid;
    auto* nr = an->add_subcommand("residual", "Finite-difference residual of the nonlinear Dirac equation");
    add_m(nr, resid.m, 2);
    add_source(nr, resid.src);
    nr->add_option("--fd-step", resid.h, "Finite-difference steps")->capture_default_str();
    nr->add_option("--points", resid.points, "Evaluation points")->capture_default_str();
    nr->add_option("--seed", resid.seed, "Point generator seed")->capture_default_str();
    add_output(nr, resid.out);
    nr->callback([&] { rc = cmd_residual(resid); });

    DecayOpts dec;
    auto* nd = an->add_subcommand("decay", "Power-law exponent of |psi| at r -> 0 and r -> infinity");
    add_m(nd, dec.m, 2);
    add_source(nd, dec.src);
    nd->add_option("--end", dec.end)->check(CLI::IsMember({"zero", "infinity", "both"}))->capture_default_str();
    nd->add_option("--decades", dec.decades, "Fit window in decades of r (0: class A tail)")->capture_default_str();
    add_output(nd, dec.out);
    nd->callback([&] { rc = cmd_decay(dec); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const spinyam::DimensionTooLarge& e) {
        std::cerr << "DimensionTooLarge: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const spinyam::NumericsError& e) {
        std::cerr << "numerics failure: " << e.what() << '\n';
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerification;
    }
    return rc;
}
