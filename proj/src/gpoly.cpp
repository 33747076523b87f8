#include "d4kit/gpoly.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>

namespace d4 {

namespace {
const GaussianInt kZero{};
}

void GPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GPoly GPoly::monomial(GaussianInt c, int k) {
    GPoly p;
    if (c.is_zero()) return p;
    p.coeffs_.assign(static_cast<size_t>(k) + 1, GaussianInt{});
    p.coeffs_.back() = std::move(c);
    return p;
}

const GaussianInt& GPoly::leading() const {
    if (coeffs_.empty()) throw D4Error(Err::DomainError, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

const GaussianInt& GPoly::coeff(int k) const {
    if (k < 0 || static_cast<size_t>(k) >= coeffs_.size()) return kZero;
    return coeffs_[static_cast<size_t>(k)];
}

GaussianInt GPoly::eval(const GaussianInt& x) const {
    GaussianInt acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

GPoly operator+(const GPoly& p, const GPoly& q) {
    std::vector<GaussianInt> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (size_t k = 0; k < out.size(); ++k)
        out[k] = p.coeff(static_cast<int>(k)) + q.coeff(static_cast<int>(k));
    return GPoly(std::move(out));
}

GPoly operator-(const GPoly& p, const GPoly& q) {
    std::vector<GaussianInt> out(std::max(p.coeffs_.size(), q.coeffs_.size()));
    for (size_t k = 0; k < out.size(); ++k)
        out[k] = p.coeff(static_cast<int>(k)) - q.coeff(static_cast<int>(k));
    return GPoly(std::move(out));
}

GPoly operator-(const GPoly& p) {
    std::vector<GaussianInt> out(p.coeffs_.size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = -p.coeffs_[k];
    return GPoly(std::move(out));
}

GPoly operator*(const GPoly& p, const GPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<GaussianInt> out(p.coeffs_.size() + q.coeffs_.size() - 1);
    for (size_t i = 0; i < p.coeffs_.size(); ++i)
        for (size_t j = 0; j < q.coeffs_.size(); ++j)
            out[i + j] = out[i + j] + p.coeffs_[i] * q.coeffs_[j];
    return GPoly(std::move(out));
}

GPoly GPoly::scale(const GaussianInt& c) const {
    std::vector<GaussianInt> out(coeffs_.size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = coeffs_[k] * c;
    return GPoly(std::move(out));
}

std::optional<GPoly> poly_div_exact(const GPoly& p, const GPoly& q) {
    if (q.is_zero()) throw D4Error(Err::DomainError, "poly_div_exact: division by zero");
    if (p.is_zero()) return GPoly{};
    if (p.deg() < q.deg()) return std::nullopt;
    // Long division; the quotient lies in Z[i][X] iff every leading-term
    // quotient stays in Z[i] and the final remainder vanishes.
    std::vector<GaussianInt> rem = p.coeffs();
    int n = p.deg(), m = q.deg();
    std::vector<GaussianInt> quot(static_cast<size_t>(n - m) + 1);
    for (int k = n - m; k >= 0; --k) {
        auto c = gi_div_exact(rem[static_cast<size_t>(k + m)], q.leading());
        if (!c) return std::nullopt;
        quot[static_cast<size_t>(k)] = *c;
        if (c->is_zero()) continue;
        for (int j = 0; j <= m; ++j)
            rem[static_cast<size_t>(k + j)] = rem[static_cast<size_t>(k + j)] - *c * q.coeff(j);
    }
    for (int j = 0; j < m; ++j)
        if (!rem[static_cast<size_t>(j)].is_zero()) return std::nullopt;
    return GPoly(std::move(quot));
}

bool poly_congruent(const GPoly& p, const GPoly& q, const GPoly& m) {
    if (m.is_zero()) throw D4Error(Err::DomainError, "poly_congruent: zero modulus");
    return poly_div_exact(p - q, m).has_value();
}

std::optional<GPoly> poly_sqrt(const GPoly& p) {
    if (p.is_zero()) return GPoly{};
    int d = p.deg();
    if (d % 2 != 0) return std::nullopt;
    int n = d / 2;
    auto lead = gi_sqrt(p.leading());
    if (!lead) return std::nullopt;
    std::vector<GaussianInt> h(static_cast<size_t>(n) + 1);
    h[static_cast<size_t>(n)] = *lead;
    GaussianInt two_lead = *lead + *lead;
    for (int k = n - 1; k >= 0; --k) {
        // coefficient of X^(n+k) in h^2 is 2*h_n*h_k plus cross terms
        GaussianInt cross;
        for (int i = k + 1; i <= n - 1; ++i) {
            int j = n + k - i;
            if (j <= i && j >= 0) {
                GaussianInt t = h[static_cast<size_t>(i)] * h[static_cast<size_t>(j)];
                cross = (i == j) ? cross + t : cross + t + t;
            }
        }
        auto hk = gi_div_exact(p.coeff(n + k) - cross, two_lead);
        if (!hk) return std::nullopt;
        h[static_cast<size_t>(k)] = *hk;
    }
    GPoly root(std::move(h));
    if (root * root != p) return std::nullopt;
    return root;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    bool done() const { return i >= s.size(); }
    char peek() const { return done() ? '\0' : s[i]; }
    void skip_ws() { while (!done() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    [[noreturn]] void fail(const std::string& expected) const { throw ParseError(i, expected); }
};

Int parse_uint_digits(Cursor& c) {
    if (!std::isdigit(static_cast<unsigned char>(c.peek()))) c.fail("digit");
    size_t start = c.i;
    while (std::isdigit(static_cast<unsigned char>(c.peek()))) ++c.i;
    return Int(c.s.substr(start, c.i - start));
}

int parse_sign(Cursor& c) {
    if (c.peek() == '+') { ++c.i; return 1; }
    if (c.peek() == '-') { ++c.i; return -1; }
    return 1;
}

// coeff := int | int? 'i' | '(' int (('+'|'-') uint? 'i')? ')'
// Returns the coefficient and whether anything at all was consumed.
std::optional<GaussianInt> parse_coeff(Cursor& c) {
    c.skip_ws();
    if (c.peek() == '(') {
        ++c.i;
        c.skip_ws();
        int s1 = parse_sign(c);
        c.skip_ws();
        Int first = parse_uint_digits(c);
        c.skip_ws();
        GaussianInt z;
        if (c.peek() == 'i') {
            ++c.i;
            z = GaussianInt{0, s1 * first};
        } else if (c.peek() == '+' || c.peek() == '-') {
            int s2 = (c.peek() == '+') ? 1 : -1;
            ++c.i;
            c.skip_ws();
            Int mag = std::isdigit(static_cast<unsigned char>(c.peek())) ? parse_uint_digits(c) : Int(1);
            c.skip_ws();
            if (c.peek() != 'i') c.fail("'i'");
            ++c.i;
            z = GaussianInt{s1 * first, s2 * mag};
        } else {
            z = GaussianInt{s1 * first};
        }
        c.skip_ws();
        if (c.peek() != ')') c.fail("')'");
        ++c.i;
        return z;
    }
    if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
        Int mag = parse_uint_digits(c);
        if (c.peek() == 'i') { ++c.i; return GaussianInt{0, mag}; }
        return GaussianInt{mag};
    }
    if (c.peek() == 'i') { ++c.i; return GaussianInt{0, 1}; }
    return std::nullopt;
}

// term := coeff | coeff? var ; var := 'X' ('^' uint)?
GPoly parse_term(Cursor& c, int sign) {
    auto coeff = parse_coeff(c);
    c.skip_ws();
    int power = 0;
    bool has_var = false;
    if (c.peek() == 'X') {
        has_var = true;
        power = 1;
        ++c.i;
        c.skip_ws();
        if (c.peek() == '^') {
            ++c.i;
            c.skip_ws();
            Int p = parse_uint_digits(c);
            if (p > 4096) c.fail("exponent <= 4096");
            power = static_cast<int>(p);
        }
    }
    if (!coeff && !has_var) c.fail("coefficient or 'X'");
    GaussianInt z = coeff.value_or(GaussianInt{1});
    if (sign < 0) z = -z;
    return GPoly::monomial(std::move(z), power);
}

std::string coeff_term_str(const GaussianInt& z, int power, bool first, std::string* sep_out) {
    // Decide the separator sign and the magnitude body for one printed term.
    bool negative = false;
    std::string body;
    if (z.im == 0) {
        Int mag = z.re < 0 ? Int(-z.re) : z.re;
        negative = z.re < 0;
        if (power == 0 || mag != 1) body = mag.str();
    } else if (z.re == 0) {
        Int mag = z.im < 0 ? Int(-z.im) : z.im;
        negative = z.im < 0;
        body = (mag == 1) ? "i" : mag.str() + "i";
    } else {
        Int imag = z.im < 0 ? Int(-z.im) : z.im;
        body = "(" + z.re.str() + (z.im < 0 ? "-" : "+") + imag.str() + "i)";
    }
    *sep_out = first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    if (power >= 1) {
        body += "X";
        if (power >= 2) body += "^" + std::to_string(power);
    }
    return body;
}

}  // namespace

GPoly poly_parse(const std::string& text) {
    Cursor c{text};
    c.skip_ws();
    if (c.done()) c.fail("polynomial");
    int sign = parse_sign(c);
    GPoly acc = parse_term(c, sign);
    c.skip_ws();
    while (!c.done()) {
        if (c.peek() != '+' && c.peek() != '-') c.fail("'+' or '-'");
        int s = parse_sign(c);
        c.skip_ws();
        acc = acc + parse_term(c, s);
        c.skip_ws();
    }
    return acc;
}

std::string GPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int k = deg(); k >= 0; --k) {
        const GaussianInt& z = coeff(k);
        if (z.is_zero()) continue;
        std::string sep;
        std::string body = coeff_term_str(z, k, first, &sep);
        out += sep + body;
        first = false;
    }
    return out;
}

nlohmann::json poly_to_json(const GPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back({c.re.str(), c.im.str()});
    return arr;
}

GPoly poly_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw D4Error(Err::Parse, "polynomial JSON must be an array");
    std::vector<GaussianInt> coeffs;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw D4Error(Err::Parse, "polynomial JSON entry must be [re, im]");
        coeffs.emplace_back(Int(e[0].get<std::string>()), Int(e[1].get<std::string>()));
    }
    return GPoly(std::move(coeffs));
}

bool poly_less(const GPoly& p, const GPoly& q) {
    if (p.deg() != q.deg()) return p.deg() < q.deg();
    return p.str() < q.str();
}

}  // namespace d4
