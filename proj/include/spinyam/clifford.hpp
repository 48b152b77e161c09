#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace spinyam {

/// Gaussian integer a + b i. Every entry produced by the Clifford recursion
/// is of this form, so products and sums stay exact.
struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    friend constexpr GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
    friend constexpr GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
    friend constexpr GaussInt operator-(GaussInt a) { return {-a.re, -a.im}; }
    friend constexpr GaussInt operator*(GaussInt a, GaussInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr bool operator==(GaussInt a, GaussInt b) = default;
    [[nodiscard]] constexpr GaussInt conj() const { return {re, -im}; }
    [[nodiscard]] constexpr std::int64_t norm2() const { return re * re + im * im; }
    [[nodiscard]] constexpr bool is_zero() const { return re == 0 && im == 0; }
};

inline constexpr GaussInt kI{0, 1};

/// i^n for any integer n.
GaussInt i_pow(int n);

using Complex = std::complex<double>;
using Spinor = std::vector<Complex>;

/// Square matrix with Gaussian-integer entries, stored row-major.
class GaussMatrix {
public:
    GaussMatrix() = default;
    explicit GaussMatrix(std::size_t n) : n_(n), a_(n * n) {}
    GaussMatrix(std::size_t n, std::vector<GaussInt> entries);

    static GaussMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    GaussInt& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    [[nodiscard]] GaussInt operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    [[nodiscard]] const std::vector<GaussInt>& entries() const noexcept { return a_; }

    [[nodiscard]] GaussMatrix adjoint() const;
    [[nodiscard]] bool is_zero() const;
    /// Largest |entry|.
    [[nodiscard]] double max_modulus() const;
    [[nodiscard]] Spinor apply(std::span<const Complex> x) const;

    friend GaussMatrix operator*(const GaussMatrix& a, const GaussMatrix& b);
    friend GaussMatrix operator+(const GaussMatrix& a, const GaussMatrix& b);
    friend GaussMatrix operator-(const GaussMatrix& a, const GaussMatrix& b);
    friend GaussMatrix operator*(GaussInt s, const GaussMatrix& a);
    friend bool operator==(const GaussMatrix& a, const GaussMatrix& b) = default;

private:
    std::size_t n_ = 0;
    std::vector<GaussInt> a_;
};

/// The matrices alpha_1..alpha_m of the flat Dirac operator on R^m together
/// with the chirality operator.
struct CliffordRep {
    int m = 0;
    std::size_t dim = 0;
    std::vector<GaussMatrix> alphas;
    GaussMatrix chirality;

    /// alpha_k applied to a spinor, k counted from 1.
    [[nodiscard]] Spinor apply(int k, std::span<const Complex> psi) const;
    /// Clifford multiplication x . psi = sum_k x_k alpha_k psi.
    [[nodiscard]] Spinor clifford_mul(std::span<const double> x, std::span<const Complex> psi) const;
};

class DimensionTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularityTooClose : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr int kMaxCliffordDim = 12;

/// Recursive construction starting from alpha_1 = i in dimension one.
/// Throws DimensionTooLarge unless 1 <= m <= 12.
CliffordRep build_rep(int m);

/// i^{floor((m+1)/2)} alpha_1 alpha_2 ... alpha_m.
GaussMatrix chirality_op(const CliffordRep& rep);

struct PairCheck {
    int j;
    int k;
    double max_norm;  // max modulus of alpha_j alpha_k + alpha_k alpha_j + 2 delta_jk I
};

struct RepReport {
    std::vector<PairCheck> pairs;  // every 1 <= j <= k <= m
    bool anti_hermitian = true;
    bool monomial = true;          // one unit-modulus entry per row and column
    bool chirality_involution = true;

    [[nodiscard]] bool ok() const;
};

RepReport verify_rep(const CliffordRep& rep);

using SpinorField = std::function<Spinor(std::span<const double>)>;

/// Central-difference Dirac operator sum_k alpha_k (psi(x + h e_k) - psi(x - h e_k)) / (2h).
/// If a singular point of the field is given, throws SingularityTooClose when
/// it lies within distance h of x.
Spinor dirac_apply_fd(const CliffordRep& rep, const SpinorField& field, std::span<const double> x, double h,
                      std::optional<std::vector<double>> singular_point = std::nullopt);

/// A fixed fibre map M between a product spinor bundle and S(R^m) together with
/// the constant matrices B_k of the product Dirac operator sum_k B_k d/dy_k.
/// The intertwining relation is M B_k = sign[k] alpha_{coord[k]+1} M, i.e.
/// the product coordinate y_k is the Euclidean coordinate x_{coord[k]+1}.
/// The stored map is sqrt(2)^{sqrt2_power} times the normalised one.
struct BundleIsomorphism {
    int m;
    GaussMatrix map;
    int sqrt2_power;
    std::vector<GaussMatrix> product_ops;
    std::vector<int> coord;
    std::vector<int> sign;
};

/// S(R) (+) S(R) tensor S(R) -> S(R^2).
BundleIsomorphism iso_r1_r1();
/// S(R^2) tensor S(R^2) -> S(R^4), tensor index 2i + j for u_{i+1} v_{j+1}.
BundleIsomorphism iso_r2_r2();
/// (S(R^3) (+) S(R^3)) tensor S(R) -> S(R^4).
BundleIsomorphism iso_r3_r1();

}  // namespace spinyam
