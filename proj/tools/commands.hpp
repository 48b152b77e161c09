#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinyam::cli {

/// Bad flag combinations or unwritable outputs; mapped to exit code 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

struct OutputOpts {
    std::string path;    // empty: stdout
    std::string format;  // empty: from the path extension, then the command default
};

struct CliffordOpts {
    int m = 3;
    std::string emit;
    OutputOpts out;
};

struct PortraitOpts {
    int m = 3;
    int grid = 10;
    double t_max = 8.0;
    OutputOpts out;
};

struct PeriodOpts {
    int m = 3;
    std::vector<double> K{0.1};
    double quad_tol = 1e-13;
    OutputOpts out;
};

struct OrbitOpts {
    int m = 3;
    double K = 0.1;
    int samples = 1001;
    OutputOpts out;
};

struct HomoclinicOpts {
    int m = 3;
    double t_min = -10.0;
    double t_max = 10.0;
    int samples = 2001;
    double tol = 1e-12;
    OutputOpts out;
};

struct BifurcationOpts {
    int m = 3;
    std::optional<double> T;
    double T_min = 1.0;
    double T_max = 10.0;
    int steps = 46;
    int grid = 512;
    OutputOpts out;
};

struct ShootOpts {
    int m = 3;
    double mu = 0.6;
    double t_max = 60.0;
    double sample_dt = 0.01;
    OutputOpts out;
};

struct SweepOpts {
    int m = 3;
    double mu_min = 0.05;
    double mu_max = 3.0;
    int n = 60;
    int jobs = 1;
    double t_max = 60.0;
    double sample_dt = 0.01;
    OutputOpts out;
};

struct BoundaryOpts {
    int m = 3;
    int k = 0;
    double tol = 1e-8;
    std::optional<double> mu_lo;
    std::optional<double> mu_hi;
    double scan_step = 0.05;
    double scan_max = 10.0;
    double t_max = 60.0;
    OutputOpts out;
};

struct RescaledOpts {
    int m = 3;
    double mu = 100.0;
    double T = 5.0;
    double reference_mu = 10.0;
    double dt = 1e-3;
    OutputOpts out;
};

struct SourceOpts {
    std::string source = "orbit";  // orbit | homoclinic | equilibrium | dissipative
    double K = 0.1;
    double mu = 0.6;
    double t_min = -30.0;
    double t_max = 30.0;
    double dt = 0.01;
};

struct ProfileOpts {
    int m = 3;
    SourceOpts src;
    OutputOpts out;
};

struct ResidualOpts {
    int m = 3;
    SourceOpts src;
    std::vector<double> h{1e-3, 5e-4, 2.5e-4};
    int points = 16;
    std::uint32_t seed = 5489;
    OutputOpts out;
};

struct DecayOpts {
    int m = 3;
    SourceOpts src;
    std::string end = "both";  // zero | infinity | both
    double decades = 10.0;     // 0: the whole class A tail (dissipative source)
    OutputOpts out;
};

int cmd_clifford(const CliffordOpts& o);

int cmd_portrait(const PortraitOpts& o);
int cmd_period(const PeriodOpts& o);
int cmd_orbit(const OrbitOpts& o);
int cmd_homoclinic(const HomoclinicOpts& o);
int cmd_bifurcation(const BifurcationOpts& o);

int cmd_shoot(const ShootOpts& o);
int cmd_sweep(const SweepOpts& o);
int cmd_boundary(const BoundaryOpts& o);
int cmd_rescaled(const RescaledOpts& o);

int cmd_profile(const ProfileOpts& o);
int cmd_residual(const ResidualOpts& o);
int cmd_decay(const DecayOpts& o);

}  // namespace spinyam::cli
