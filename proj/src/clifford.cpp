#include "spinyam/clifford.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace spinyam {

GaussInt i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

GaussMatrix::GaussMatrix(std::size_t n, std::vector<GaussInt> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n * n) throw std::invalid_argument("GaussMatrix: entry count does not match size");
}

GaussMatrix GaussMatrix::identity(std::size_t n) {
    GaussMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = {1, 0};
    return out;
}

GaussMatrix GaussMatrix::adjoint() const {
    GaussMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j).conj();
    return out;
}

bool GaussMatrix::is_zero() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

double GaussMatrix::max_modulus() const {
    std::int64_t best = 0;
    for (const auto& e : a_) best = std::max(best, e.norm2());
    return std::sqrt(static_cast<double>(best));
}

Spinor GaussMatrix::apply(std::span<const Complex> x) const {
    if (x.size() != n_) throw std::invalid_argument("GaussMatrix::apply: spinor has wrong dimension");
    Spinor out(n_, Complex{});
    for (std::size_t i = 0; i < n_; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < n_; ++j) {
            const GaussInt e = (*this)(i, j);
            if (!e.is_zero()) acc += Complex(static_cast<double>(e.re), static_cast<double>(e.im)) * x[j];
        }
        out[i] = acc;
    }
    return out;
}

GaussMatrix operator*(const GaussMatrix& a, const GaussMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("GaussMatrix: size mismatch");
    const std::size_t n = a.n_;
    GaussMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const GaussInt ail = a(i, l);
            if (ail.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) = out(i, j) + ail * b(l, j);
        }
    return out;
}

GaussMatrix operator+(const GaussMatrix& a, const GaussMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("GaussMatrix: size mismatch");
    GaussMatrix out(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
    return out;
}

GaussMatrix operator-(const GaussMatrix& a, const GaussMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("GaussMatrix: size mismatch");
    GaussMatrix out(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] - b.a_[i];
    return out;
}

GaussMatrix operator*(GaussInt s, const GaussMatrix& a) {
    GaussMatrix out(a.n_);
    for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = s * a.a_[i];
    return out;
}

namespace {

// [[tl, tr], [bl, br]] from equally sized blocks.
GaussMatrix blocks(const GaussMatrix& tl, const GaussMatrix& tr, const GaussMatrix& bl, const GaussMatrix& br) {
    const std::size_t d = tl.size();
    GaussMatrix out(2 * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            out(i, j) = tl(i, j);
            out(i, j + d) = tr(i, j);
            out(i + d, j) = bl(i, j);
            out(i + d, j + d) = br(i, j);
        }
    return out;
}

GaussMatrix kron(const GaussMatrix& a, const GaussMatrix& b) {
    const std::size_t na = a.size(), nb = b.size();
    GaussMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return out;
}

GaussMatrix from_ints(std::size_t n, std::initializer_list<GaussInt> e) { return GaussMatrix(n, std::vector<GaussInt>(e)); }

}  // namespace

Spinor CliffordRep::apply(int k, std::span<const Complex> psi) const {
    if (k < 1 || k > m) throw std::out_of_range("CliffordRep::apply: generator index out of range");
    return alphas[static_cast<std::size_t>(k - 1)].apply(psi);
}

Spinor CliffordRep::clifford_mul(std::span<const double> x, std::span<const Complex> psi) const {
    if (x.size() != static_cast<std::size_t>(m)) throw std::invalid_argument("clifford_mul: point has wrong dimension");
    Spinor out(dim, Complex{});
    for (int k = 0; k < m; ++k) {
        if (x[k] == 0.0) continue;
        const Spinor ak = alphas[static_cast<std::size_t>(k)].apply(psi);
        for (std::size_t i = 0; i < dim; ++i) out[i] += x[k] * ak[i];
    }
    return out;
}

CliffordRep build_rep(int m) {
    if (m < 1 || m > kMaxCliffordDim) {
        throw DimensionTooLarge("Clifford dimension m=" + std::to_string(m) + " outside [1, " +
                                std::to_string(kMaxCliffordDim) + "]");
    }
    std::vector<GaussMatrix> alphas{from_ints(1, {kI})};
    for (int n = 2; n <= m; ++n) {
        std::vector<GaussMatrix> next;
        if (n % 2 == 0) {
            const std::size_t d = alphas.front().size();
            const GaussMatrix zero(d);
            for (const auto& a : alphas) next.push_back(blocks(zero, -kI * a, kI * a, zero));
            const GaussMatrix iid = kI * GaussMatrix::identity(d);
            next.push_back(blocks(zero, iid, iid, zero));
        } else {
            next = alphas;
            GaussMatrix prod = GaussMatrix::identity(alphas.front().size());
            for (const auto& a : alphas) prod = prod * a;
            next.push_back(i_pow((n + 1) / 2) * prod);
        }
        alphas = std::move(next);
    }
    CliffordRep rep;
    rep.m = m;
    rep.dim = alphas.front().size();
    rep.alphas = std::move(alphas);
    rep.chirality = chirality_op(rep);
    return rep;
}

GaussMatrix chirality_op(const CliffordRep& rep) {
    GaussMatrix prod = GaussMatrix::identity(rep.dim);
    for (const auto& a : rep.alphas) prod = prod * a;
    return i_pow((rep.m + 1) / 2) * prod;
}

bool RepReport::ok() const {
    for (const auto& p : pairs)
        if (p.max_norm != 0.0) return false;
    return anti_hermitian && monomial && chirality_involution;
}

RepReport verify_rep(const CliffordRep& rep) {
    RepReport report;
    const std::size_t n = rep.dim;
    const GaussMatrix id = GaussMatrix::identity(n);
    const int count = static_cast<int>(rep.alphas.size());
    for (int j = 0; j < count; ++j) {
        for (int k = j; k < count; ++k) {
            const auto& aj = rep.alphas[static_cast<std::size_t>(j)];
            const auto& ak = rep.alphas[static_cast<std::size_t>(k)];
            GaussMatrix anti = aj * ak + ak * aj;
            if (j == k) anti = anti + GaussInt{2, 0} * id;
            report.pairs.push_back({j + 1, k + 1, anti.max_modulus()});
        }
    }
    for (const auto& a : rep.alphas) {
        if (!(a.adjoint() + a).is_zero()) report.anti_hermitian = false;
        for (std::size_t i = 0; i < n && report.monomial; ++i) {
            int row = 0, col = 0;
            for (std::size_t j = 0; j < n; ++j) {
                const GaussInt r = a(i, j);
                const GaussInt c = a(j, i);
                if (!r.is_zero()) row += r.norm2() == 1 ? 1 : 2;
                if (!c.is_zero()) col += c.norm2() == 1 ? 1 : 2;
            }
            if (row != 1 || col != 1) report.monomial = false;
        }
    }
    const GaussMatrix omega = chirality_op(rep);
    report.chirality_involution = omega * omega == id;
    return report;
}

Spinor dirac_apply_fd(const CliffordRep& rep, const SpinorField& field, std::span<const double> x, double h,
                      std::optional<std::vector<double>> singular_point) {
    if (!(h > 0.0)) throw std::invalid_argument("dirac_apply_fd: step must be positive");
    const auto m = static_cast<std::size_t>(rep.m);
    if (x.size() != m) throw std::invalid_argument("dirac_apply_fd: point has wrong dimension");
    if (singular_point) {
        if (singular_point->size() != m) throw std::invalid_argument("dirac_apply_fd: singular point has wrong dimension");
        double d2 = 0;
        for (std::size_t k = 0; k < m; ++k) d2 += (x[k] - (*singular_point)[k]) * (x[k] - (*singular_point)[k]);
        if (std::sqrt(d2) <= h) throw SingularityTooClose("dirac_apply_fd: stencil reaches a singularity of the field");
    }
    Spinor out(rep.dim, Complex{});
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    for (std::size_t k = 0; k < m; ++k) {
        xp[k] = x[k] + h;
        xm[k] = x[k] - h;
        const Spinor fp = field(xp);
        const Spinor fm = field(xm);
        xp[k] = xm[k] = x[k];
        Spinor diff(rep.dim);
        for (std::size_t i = 0; i < rep.dim; ++i) diff[i] = (fp[i] - fm[i]) / (2 * h);
        const Spinor ad = rep.alphas[k].apply(diff);
        for (std::size_t i = 0; i < rep.dim; ++i) out[i] += ad[i];
    }
    return out;
}

BundleIsomorphism iso_r1_r1() {
    // The factor carrying u_1, u_2 is the x_2 axis and the one carrying v is x_1.
    BundleIsomorphism iso{2, from_ints(2, {{1, 0}, {1, 0}, {1, 0}, {-1, 0}}), 1, {}, {1, 0}, {1, 1}};
    iso.product_ops.push_back(from_ints(2, {kI, {}, {}, -kI}));
    iso.product_ops.push_back(from_ints(2, {{}, {-1, 0}, {1, 0}, {}}));
    return iso;
}

BundleIsomorphism iso_r2_r2() {
    const CliffordRep r2 = build_rep(2);
    const GaussMatrix id = GaussMatrix::identity(2);
    const GaussMatrix s = from_ints(2, {{-1, 0}, {}, {}, {1, 0}});
    GaussMatrix map(4);
    map(0, 0) = -kI;      // u1 v1
    map(1, 3) = -kI;      // u2 v2
    map(2, 1) = {1, 0};   // u1 v2
    map(3, 2) = {1, 0};   // u2 v1
    BundleIsomorphism iso{4, map, 0, {}, {0, 1, 3, 2}, {1, 1, 1, 1}};
    iso.product_ops = {kron(r2.alphas[0], id), kron(r2.alphas[1], id), kron(s, r2.alphas[0]), kron(s, r2.alphas[1])};
    return iso;
}

BundleIsomorphism iso_r3_r1() {
    const CliffordRep r3 = build_rep(3);
    const GaussMatrix zero(2);
    const GaussMatrix id = GaussMatrix::identity(2);
    const GaussInt one{1, 0}, neg{-1, 0};
    GaussMatrix map = from_ints(4, {{}, neg, {}, one, neg, {}, one, {}, {}, one, {}, one, neg, {}, neg, {}});
    BundleIsomorphism iso{4, map, 1, {}, {1, 0, 3, 2}, {-1, -1, -1, -1}};
    for (const auto& a : r3.alphas) iso.product_ops.push_back(blocks(a, zero, zero, neg * a));
    // i [[0, Id], [-Id, 0]] tensor (i d/dy)
    iso.product_ops.push_back(blocks(zero, neg * id, id, zero));
    return iso;
}

}  // namespace spinyam
