#include <algorithm>
#include <clocale>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "spinyam/io.hpp"

using namespace spinyam;

TEST_CASE("fmt17 round-trips doubles") {
    for (double x : {0.1, -1.0 / 3, 1e-300, 6.02214076e23, 2.7281686858505534, 0.0}) {
        const std::string s = io::fmt17(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(io::fmt17(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(io::fmt17(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(io::fmt17(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("fmt17 ignores the global locale") {
    const std::string before = io::fmt17(0.5);
    if (std::setlocale(LC_ALL, "de_DE.UTF-8") != nullptr) {
        CHECK(io::fmt17(0.5) == before);
        std::setlocale(LC_ALL, "C");
    }
    CHECK(before == "0.5");
}

TEST_CASE("JSON dump") {
    io::Json j;
    j["zeta"] = 1;
    j["alpha"] = 0.1;
    j["bad"] = std::numeric_limits<double>::quiet_NaN();
    j["list"] = io::Json::array({1.5, "x"});
    CHECK(io::dump(j, -1) == R"({"zeta":1,"alpha":0.10000000000000001,"bad":null,"list":[1.5,"x"]})");
    const std::string pretty = io::dump(j);
    CHECK(pretty.find("\n  \"alpha\": ") != std::string::npos);
    CHECK(io::Json::parse(pretty)["alpha"].get<double>() == 0.1);
    CHECK(io::dump(io::Json::object()) == "{}");
}

TEST_CASE("serialisers") {
    const auto rep = build_rep(2);
    const auto rj = io::rep_json(rep);
    CHECK(rj["m"] == 2);
    CHECK(rj["dim"] == 2);
    CHECK(rj["alphas"][1][1] == io::Json::array({0, 1}));
    CHECK(io::report_json(verify_rep(rep))["ok"] == true);

    const auto par = AutonomousParams::make(3);
    const auto spec = orbit_reconstruct(par, 0.1, 11);
    const auto oj = io::orbit_json(spec);
    CHECK(oj["energy"].get<double>() == doctest::Approx(-0.05));

    std::ostringstream traj;
    io::write_trajectory_csv(traj, spec.trajectory);
    const std::string t = traj.str();
    CHECK(t.rfind("t,u,v,H\n", 0) == 0);
    CHECK(std::count(t.begin(), t.end(), '\n') == 12);

    std::ostringstream prof;
    io::write_profile_csv(prof, profile_from_phase(SystemKind::Autonomous, 3, spec.trajectory));
    CHECK(prof.str().rfind("r,f1,f2,psi_abs\n", 0) == 0);

    const auto dpar = DissipativeParams::make(3);
    const auto outs = classify_sweep(dpar, {0.1, 0.2});
    std::ostringstream sweep;
    io::write_sweep_csv(sweep, outs);
    CHECK(sweep.str().rfind("mu,k,class,H_tail\n0.10000000000000001,0,A,", 0) == 0);
    const auto o = io::outcome_json(outs[0]);
    CHECK(o["class"] == "A");
    CHECK(o["k"] == 0);
}
