#pragma once

#include "d4kit/gint.hpp"

#include <nlohmann/json_fwd.hpp>

#include <climits>
#include <optional>
#include <string>
#include <vector>

namespace d4 {

/// Degree sentinel for the zero polynomial; absorbing under degree sums.
inline constexpr int kNegInfDeg = INT_MIN / 4;

class ParseError : public D4Error {
public:
    ParseError(size_t pos, std::string expected)
        : D4Error(Err::Parse,
                  "parse error at position " + std::to_string(pos) + ": expected " + expected),
          pos(pos), expected(std::move(expected)) {}

    size_t pos;
    std::string expected;
};

/// Dense polynomial over Z[i], coefficients stored by ascending power.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
class GPoly {
public:
    GPoly() = default;
    GPoly(GaussianInt c) { coeffs_.push_back(std::move(c)); trim(); }
    GPoly(long long c) : GPoly(GaussianInt(c)) {}
    explicit GPoly(std::vector<GaussianInt> ascending) : coeffs_(std::move(ascending)) { trim(); }

    /// Monomial c * X^k.
    static GPoly monomial(GaussianInt c, int k);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    int deg() const { return coeffs_.empty() ? kNegInfDeg : static_cast<int>(coeffs_.size()) - 1; }

    /// Leading coefficient; domain error on the zero polynomial.
    const GaussianInt& leading() const;

    /// Coefficient of X^k (zero beyond the degree).
    const GaussianInt& coeff(int k) const;
    const std::vector<GaussianInt>& coeffs() const { return coeffs_; }

    GaussianInt eval(const GaussianInt& x) const;

    friend GPoly operator+(const GPoly& p, const GPoly& q);
    friend GPoly operator-(const GPoly& p, const GPoly& q);
    friend GPoly operator-(const GPoly& p);
    friend GPoly operator*(const GPoly& p, const GPoly& q);
    friend bool operator==(const GPoly& p, const GPoly& q) { return p.coeffs_ == q.coeffs_; }
    friend bool operator!=(const GPoly& p, const GPoly& q) { return !(p == q); }

    GPoly scale(const GaussianInt& c) const;

    /// Canonical text form: descending powers, " + " / " - " separators,
    /// mixed coefficients parenthesized, "0" for the zero polynomial.
    std::string str() const;

private:
    void trim();
    std::vector<GaussianInt> coeffs_;
};

/// Exact quotient p/q in Z[i][X]; empty when no such quotient exists
/// (nonzero remainder, or a quotient coefficient outside Z[i]).
/// q = 0 is a domain error.
std::optional<GPoly> poly_div_exact(const GPoly& p, const GPoly& q);

/// p == q (mod m), i.e. m divides p - q. m = 0 is a domain error.
bool poly_congruent(const GPoly& p, const GPoly& q, const GPoly& m);

/// The canonical h with h*h = p, if p is a square in Z[i][X].
/// Canonical means the leading coefficient of h satisfies the gi_sqrt
/// sign rule. Coefficients of h are matched top-down and the result is
/// verified by squaring.
std::optional<GPoly> poly_sqrt(const GPoly& p);

/// Parse the polynomial text grammar (whitespace-insensitive):
///   poly := term (('+'|'-') term)* ; term := coeff | coeff? var ;
///   var := 'X' ('^' uint)? ;
///   coeff := int | int? 'i' | '(' int (('+'|'-') uint? 'i')? ')'
/// Throws ParseError with position and expected-token information.
GPoly poly_parse(const std::string& text);

/// JSON form: array by ascending power, entries [re_string, im_string].
nlohmann::json poly_to_json(const GPoly& p);
GPoly poly_from_json(const nlohmann::json& j);

/// Ordering used for tuple elements: by (degree, canonical printed form).
bool poly_less(const GPoly& p, const GPoly& q);

}  // namespace d4
