#include "spinyam/io.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace spinyam::io {

std::string fmt17(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

void dump_into(std::string& out, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump_into(out, it.value(), indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                dump_into(out, v, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            out += std::isfinite(x) ? fmt17(x) : "null";
            return;
        }
        default:
            out += j.dump();
    }
}

Json opt(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

std::string dump(const Json& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

Json rep_json(const CliffordRep& rep) {
    Json alphas = Json::array();
    for (const auto& a : rep.alphas) {
        Json flat = Json::array();
        for (const auto& e : a.entries()) flat.push_back(Json::array({e.re, e.im}));
        alphas.push_back(std::move(flat));
    }
    Json j;
    j["m"] = rep.m;
    j["dim"] = rep.dim;
    j["alphas"] = std::move(alphas);
    return j;
}

Json report_json(const RepReport& report) {
    Json pairs = Json::array();
    for (const auto& p : report.pairs) pairs.push_back({{"j", p.j}, {"k", p.k}, {"max_norm", p.max_norm}});
    Json j;
    j["ok"] = report.ok();
    j["anti_hermitian"] = report.anti_hermitian;
    j["monomial"] = report.monomial;
    j["chirality_involution"] = report.chirality_involution;
    j["pairs"] = std::move(pairs);
    return j;
}

Json orbit_json(const OrbitSpec& spec) {
    Json j;
    j["m"] = spec.m;
    j["K"] = spec.K;
    j["s0"] = spec.s0;
    j["s1"] = spec.s1;
    j["half_period"] = spec.half_period;
    j["energy"] = spec.energy;
    return j;
}

Json outcome_json(const ShootingOutcome& o) {
    Json j;
    j["mu"] = o.mu;
    j["k"] = o.k;
    j["class"] = to_string(o.cls);
    j["t_end"] = o.t_end;
    j["H_tail"] = o.H_tail;
    j["envelope"] = opt(o.envelope);
    j["first_nonpositive_H"] = opt(o.first_nonpositive_H);
    return j;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,u,v,H\n";
    for (const auto& s : traj.samples) {
        os << fmt17(s.t) << ',' << fmt17(s.y[0]) << ',' << fmt17(s.y[1]) << ',' << fmt17(s.energy) << '\n';
    }
}

void write_profile_csv(std::ostream& os, const SpinorProfile& profile) {
    os << "r,f1,f2,psi_abs\n";
    for (const auto& s : profile.samples) {
        os << fmt17(s.r) << ',' << fmt17(s.f1) << ',' << fmt17(s.f2) << ',' << fmt17(SpinorProfile::psi_abs(s))
           << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<ShootingOutcome>& outcomes) {
    os << "mu,k,class,H_tail\n";
    for (const auto& o : outcomes) {
        os << fmt17(o.mu) << ',' << o.k << ',' << to_string(o.cls) << ',' << fmt17(o.H_tail) << '\n';
    }
}

}  // namespace spinyam::io
