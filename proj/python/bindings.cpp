#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinyam/ansatz.hpp"
#include "spinyam/autonomous.hpp"
#include "spinyam/clifford.hpp"
#include "spinyam/dissipative.hpp"

namespace py = pybind11;
using namespace spinyam;

namespace {

// Columns t, u, v, H as a dict of 1-d arrays.
py::dict trajectory_arrays(const Trajectory& traj) {
    const auto n = static_cast<py::ssize_t>(traj.size());
    py::array_t<double> t(n), u(n), v(n), h(n);
    auto pt = t.mutable_unchecked<1>(), pu = u.mutable_unchecked<1>(), pv = v.mutable_unchecked<1>(),
         ph = h.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[static_cast<std::size_t>(i)];
        pt(i) = s.t;
        pu(i) = s.y[0];
        pv(i) = s.y[1];
        ph(i) = s.energy;
    }
    py::dict d;
    d["t"] = t;
    d["u"] = u;
    d["v"] = v;
    d["H"] = h;
    return d;
}

py::array_t<std::complex<double>> matrix_array(const GaussMatrix& a) {
    const auto n = static_cast<py::ssize_t>(a.size());
    py::array_t<std::complex<double>> out({n, n});
    auto w = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < n; ++i)
        for (py::ssize_t j = 0; j < n; ++j) {
            const GaussInt g = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            w(i, j) = {static_cast<double>(g.re), static_cast<double>(g.im)};
        }
    return out;
}

py::dict outcome_dict(const ShootingOutcome& o) {
    py::dict d;
    d["mu"] = o.mu;
    d["k"] = o.k;
    d["class"] = to_string(o.cls);
    d["t_end"] = o.t_end;
    d["H_tail"] = o.H_tail;
    d["envelope"] = o.envelope;
    d["cosh_bound"] = o.cosh_bound;
    d["first_nonpositive_H"] = o.first_nonpositive_H;
    return d;
}

SystemKind kind_of(const std::string& name) {
    if (name == "autonomous") return SystemKind::Autonomous;
    if (name == "dissipative") return SystemKind::Dissipative;
    throw py::value_error("kind must be 'autonomous' or 'dissipative'");
}

}  // namespace

PYBIND11_MODULE(_spinyam, mod) {
    mod.doc() = "Phase-plane reductions of the spinorial Yamabe equation";

    py::register_exception<KOutOfRange>(mod, "KOutOfRange", PyExc_ValueError);
    py::register_exception<NumericsError>(mod, "NumericsError", PyExc_RuntimeError);
    py::register_exception<BracketInvalid>(mod, "BracketInvalid", PyExc_ValueError);

    // Clifford
    mod.def(
        "clifford_matrices",
        [](int m) {
            py::list out;
            for (const auto& a : build_rep(m).alphas) out.append(matrix_array(a));
            return out;
        },
        py::arg("m"));
    mod.def("clifford_ok", [](int m) { return verify_rep(build_rep(m)).ok(); }, py::arg("m"));

    // Autonomous system
    mod.def("k0", [](int m) { return k0(AutonomousParams::make(m)); }, py::arg("m"));
    mod.def(
        "hamiltonian",
        [](int m, double u, double v) { return hamiltonian(AutonomousParams::make(m), u, v); }, py::arg("m"),
        py::arg("u"), py::arg("v"));
    mod.def(
        "vector_field",
        [](int m, double u, double v) { return vector_field(AutonomousParams::make(m), {u, v}); }, py::arg("m"),
        py::arg("u"), py::arg("v"));
    mod.def(
        "homoclinic", [](int m, double t) { return homoclinic(AutonomousParams::make(m), t); }, py::arg("m"),
        py::arg("t"));
    mod.def(
        "turning_points",
        [](int m, double K) {
            const auto r = fk_zeros(AutonomousParams::make(m), K);
            return py::make_tuple(r.s0, r.s1);
        },
        py::arg("m"), py::arg("K"));
    mod.def(
        "half_period", [](int m, double K) { return half_period(AutonomousParams::make(m), K); }, py::arg("m"),
        py::arg("K"));
    mod.def(
        "orbit",
        [](int m, double K, std::size_t samples) {
            const auto spec = orbit_reconstruct(AutonomousParams::make(m), K, samples);
            py::dict d = trajectory_arrays(spec.trajectory);
            d["half_period"] = spec.half_period;
            d["energy"] = spec.energy;
            return d;
        },
        py::arg("m"), py::arg("K"), py::arg("samples") = 401);
    mod.def(
        "solutions_count",
        [](int m, double T) {
            const auto sc = solutions_count(AutonomousParams::make(m), T);
            py::list roots;
            for (const auto& level : sc.levels)
                for (const auto& r : level.roots) roots.append(py::make_tuple(level.k, r.K));
            py::dict d;
            d["count"] = sc.count;
            d["roots"] = roots;
            return d;
        },
        py::arg("m"), py::arg("T"));

    // Dissipative system
    mod.def(
        "shoot",
        [](int m, double mu, bool trajectory) {
            const auto out = shoot(DissipativeParams::make(m), mu);
            py::dict d = outcome_dict(out);
            if (trajectory) d["trajectory"] = trajectory_arrays(out.trajectory);
            return d;
        },
        py::arg("m"), py::arg("mu"), py::arg("trajectory") = false);
    mod.def(
        "sweep",
        [](int m, std::vector<double> mu, unsigned jobs) {
            std::vector<ShootingOutcome> outs;
            {
                py::gil_scoped_release release;
                outs = classify_sweep(DissipativeParams::make(m), mu, {}, jobs);
            }
            py::list l;
            for (const auto& o : outs) l.append(outcome_dict(o));
            return l;
        },
        py::arg("m"), py::arg("mu"), py::arg("jobs") = 1);
    mod.def(
        "boundary",
        [](int m, int k, double lo, double hi, double tol) {
            const auto b = boundary_bisect(DissipativeParams::make(m), k, lo, hi, tol);
            return py::make_tuple(b.lo, b.hi);
        },
        py::arg("m"), py::arg("k"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-8);
    mod.def(
        "rescaled_limit", [](int m, double t) { return rescaled_limit(DissipativeParams::make(m), t); },
        py::arg("m"), py::arg("t"));
    mod.def(
        "rescale_error",
        [](int m, double mu, double T) { return rescale_compare(DissipativeParams::make(m), mu, T).sup_error; },
        py::arg("m"), py::arg("mu"), py::arg("T") = 5.0);

    // Ansatz
    mod.def(
        "homoclinic_profile",
        [](int m, std::vector<double> times) {
            const auto par = AutonomousParams::make(m);
            Trajectory traj;
            for (double t : times) {
                const State y = homoclinic(par, t);
                traj.samples.push_back({t, y, hamiltonian(par, y[0], y[1])});
            }
            const auto prof = profile_from_phase(SystemKind::Autonomous, m, traj);
            std::vector<double> r, f1, f2;
            for (const auto& s : prof.samples) {
                r.push_back(s.r);
                f1.push_back(s.f1);
                f2.push_back(s.f2);
            }
            py::dict d;
            d["r"] = py::array(py::cast(r));
            d["f1"] = py::array(py::cast(f1));
            d["f2"] = py::array(py::cast(f2));
            return d;
        },
        py::arg("m"), py::arg("t"));
    mod.def("euclidean_dim", [](const std::string& kind, int m) { return euclidean_dim(kind_of(kind), m); },
            py::arg("kind"), py::arg("m"));
}
