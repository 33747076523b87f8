#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace d4 {

using Int = boost::multiprecision::cpp_int;

enum class Err {
    DomainError,
    NotATuple,
    DuplicateElement,
    ZeroElement,
    NotAPair,
    NotATriple,
    NotASolution,
    DescentStuck,
    HalvingFailed,
    NotADMinus4Triple,
    NonRealInput,
    Degenerate,
    Parse,
};

class D4Error : public std::runtime_error {
public:
    D4Error(Err kind, std::string msg, int i = -1, int j = -1)
        : std::runtime_error(std::move(msg)), kind(kind), i(i), j(j) {}

    Err kind;
    int i, j;
};

/// Exact floor square root; empty unless n is a perfect square.
std::optional<Int> isqrt_exact(const Int& n);

/// A Gaussian integer re + im*i. Equality is componentwise; there is no
/// hidden normalization.
struct GaussianInt {
    Int re{0};
    Int im{0};

    GaussianInt() = default;
    GaussianInt(Int r) : re(std::move(r)) {}
    GaussianInt(long long r) : re(r) {}
    GaussianInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    GaussianInt(long long r, long long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }

    friend GaussianInt operator+(const GaussianInt& a, const GaussianInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a, const GaussianInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator-(const GaussianInt& a) { return {-a.re, -a.im}; }
    friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianInt& a, const GaussianInt& b) { return !(a == b); }

    /// Text form "a+bi" (or "a", "bi", "-bi", ...), as used inside the
    /// polynomial grammar.
    std::string str() const;
};

/// Exact quotient a/b in Z[i]; empty when b does not divide a.
/// b = 0 is a domain error, distinct from "not divisible".
std::optional<GaussianInt> gi_div_exact(const GaussianInt& a, const GaussianInt& b);

/// True for the canonical representative among {x, -x}: re > 0, or
/// re = 0 and im >= 0.
bool gi_is_canonical(const GaussianInt& x);

/// The canonical x with x*x = z, if z is a square in Z[i].
///
/// Uses the norm decomposition: m = isqrt(norm z) must be exact, then
/// re(x)^2 = (m + re z)/2 and im(x)^2 = (m - re z)/2 must both be perfect
/// squares, with the sign of im(x) fixed by 2*re(x)*im(x) = im(z).
std::optional<GaussianInt> gi_sqrt(const GaussianInt& z);

}  // namespace d4
