#include "d4kit/dtuple.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>

namespace d4 {

namespace {

const GPoly kFour{4};

GPoly halve_exact(const GPoly& p, const char* what) {
    auto h = poly_div_exact(p, GPoly{2});
    if (!h) throw D4Error(Err::HalvingFailed, std::string("not divisible by 2: ") + what);
    return *h;
}

}  // namespace

TripleWitnesses DTuple::triple_witnesses() const {
    if (elements.size() != 3) throw D4Error(Err::NotATriple, "tuple is not a triple");
    return {witnesses.at({0, 1}), witnesses.at({0, 2}), witnesses.at({1, 2})};
}

DTuple verify_dtuple(std::vector<GPoly> elements, const GaussianInt& n) {
    if (elements.empty()) throw D4Error(Err::DomainError, "empty tuple");
    std::sort(elements.begin(), elements.end(), poly_less);
    DTuple out;
    out.n = n;
    int constants = 0;
    for (size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].is_zero())
            throw D4Error(Err::ZeroElement, "tuple elements must be nonzero", static_cast<int>(i));
        if (elements[i].is_constant()) ++constants;
        if (i > 0 && elements[i] == elements[i - 1])
            throw D4Error(Err::DuplicateElement, "duplicate element: " + elements[i].str(),
                          static_cast<int>(i - 1), static_cast<int>(i));
    }
    if (constants > 1)
        out.warnings.push_back("tuple has " + std::to_string(constants) +
                               " constant elements; regularity claims do not apply");
    GPoly npoly{n};
    for (size_t i = 0; i < elements.size(); ++i) {
        for (size_t j = i + 1; j < elements.size(); ++j) {
            auto w = poly_sqrt(elements[i] * elements[j] + npoly);
            if (!w)
                throw D4Error(Err::NotATuple,
                              "product of elements " + std::to_string(i) + "," + std::to_string(j) +
                                  " plus " + n.str() + " is not a square",
                              static_cast<int>(i), static_cast<int>(j));
            out.witnesses[{static_cast<int>(i), static_cast<int>(j)}] = std::move(*w);
        }
    }
    out.elements = std::move(elements);
    return out;
}

PairExtension extend_pair_regular(const GPoly& a, const GPoly& b) {
    auto r = poly_sqrt(a * b + kFour);
    if (!r) throw D4Error(Err::NotAPair, "ab+4 is not a square");
    GPoly two_r = *r + *r;
    return {a + b + two_r, a + b - two_r, std::move(*r)};
}

TripleExtension extend_triple_regular(const GPoly& a_in, const GPoly& b_in, const GPoly& c_in) {
    std::vector<GPoly> sorted{a_in, b_in, c_in};
    std::sort(sorted.begin(), sorted.end(), poly_less);
    const GPoly &a = sorted[0], &b = sorted[1], &c = sorted[2];
    auto r = poly_sqrt(a * b + kFour);
    auto s = poly_sqrt(a * c + kFour);
    auto t = poly_sqrt(b * c + kFour);
    if (!r || !s || !t) throw D4Error(Err::NotATriple, "inputs are not a D(4)-triple");
    GPoly abc = a * b * c;
    GPoly rst = *r * *s * *t;
    GPoly base = a + b + c;
    GPoly d1 = base + halve_exact(abc + rst, "abc+rst");
    GPoly d2 = base + halve_exact(abc - rst, "abc-rst");
    bool d1_high = d1.deg() != d2.deg() ? d1.deg() > d2.deg() : d2.str() < d1.str();
    TripleExtension out;
    out.d_plus = d1_high ? std::move(d1) : std::move(d2);
    out.d_minus = d1_high ? std::move(d2) : std::move(d1);
    out.wit = {std::move(*r), std::move(*s), std::move(*t)};
    return out;
}

RegularityResult is_regular_quadruple(const GPoly& a_in, const GPoly& b_in, const GPoly& c_in,
                                      const GPoly& d_in) {
    std::vector<GPoly> e{a_in, b_in, c_in, d_in};
    for (size_t i = 0; i < 4; ++i) {
        if (e[i].is_zero()) throw D4Error(Err::ZeroElement, "quadruple elements must be nonzero");
        for (size_t j = i + 1; j < 4; ++j)
            if (e[i] == e[j]) throw D4Error(Err::DuplicateElement, "quadruple elements must be distinct");
    }
    std::sort(e.begin(), e.end(), poly_less);
    auto holds = [&](int i, int j, int k, int l) {
        GPoly lhs = e[i] + e[j] - e[k] - e[l];
        return lhs * lhs == (e[i] * e[j] + kFour) * (e[k] * e[l] + kFour);
    };
    RegularityResult out;
    if (holds(0, 1, 2, 3)) { out.split_mask |= 1u; out.regular = true; }
    if (holds(0, 2, 1, 3)) out.split_mask |= 2u;
    if (holds(0, 3, 1, 2)) out.split_mask |= 4u;
    return out;
}

std::pair<GPoly, GPoly> pair_family(const GPoly& p, const GPoly& q) {
    if (p.is_zero()) throw D4Error(Err::Degenerate, "pair_family: p = 0");
    GPoly b = p * q * q + q.scale(4);
    if (b.is_zero()) throw D4Error(Err::Degenerate, "pair_family: p*q^2 + 4q = 0");
    if (b == p) throw D4Error(Err::Degenerate, "pair_family: degenerate pair (a = b)");
    return {p, std::move(b)};
}

LiftResult lift_dminus4(const GPoly& a, const GPoly& b, const GPoly& c) {
    auto real = [](const GPoly& p) {
        return std::all_of(p.coeffs().begin(), p.coeffs().end(),
                           [](const GaussianInt& z) { return z.is_real(); });
    };
    if (!real(a) || !real(b) || !real(c))
        throw D4Error(Err::NonRealInput, "lift requires polynomials over Z[X]");
    auto rp = poly_sqrt(a * b - kFour);
    auto sp = poly_sqrt(a * c - kFour);
    auto tp = poly_sqrt(b * c - kFour);
    if (!rp || !sp || !tp || !real(*rp) || !real(*sp) || !real(*tp))
        throw D4Error(Err::NotADMinus4Triple, "inputs are not a D(-4)-triple over Z[X]");

    const GaussianInt I{0, 1};
    LiftResult out;
    out.lifted = verify_dtuple({a.scale(I), b.scale(I), c.scale(I)}, GaussianInt{4});

    GPoly abc = a * b * c;
    GPoly rst = *rp * *sp * *tp;
    GPoly neg = -(a + b + c);
    out.d_plus = neg + halve_exact(abc + rst, "abc+r's't'");
    out.d_minus = neg + halve_exact(abc - rst, "abc-r's't'");
    for (const GPoly* d : {&out.d_plus, &out.d_minus}) {
        if (d->is_zero() || *d == a || *d == b || *d == c) {
            out.d_degenerate.push_back(*d);
            continue;
        }
        for (const GPoly* e : {&a, &b, &c}) {
            auto w = poly_sqrt(*e * *d + kFour);
            if (!w || !real(*w))
                throw D4Error(Err::NotADMinus4Triple,
                              "corollary extension fails the D(-4;4) square check");
        }
        out.d_valid.push_back(*d);
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON document

nlohmann::json DTuple::to_json() const {
    nlohmann::json j;
    j["n"] = {n.re.str(), n.im.str()};
    j["elements"] = nlohmann::json::array();
    for (const auto& e : elements) j["elements"].push_back(poly_to_json(e));
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [key, poly] : witnesses)
        w[std::to_string(key.first) + "," + std::to_string(key.second)] = poly_to_json(poly);
    j["witnesses"] = std::move(w);
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
}

DTuple DTuple::from_json(const nlohmann::json& j) {
    std::vector<GPoly> elements;
    for (const auto& e : j.at("elements")) elements.push_back(poly_from_json(e));
    GaussianInt n{Int(j.at("n")[0].get<std::string>()), Int(j.at("n")[1].get<std::string>())};
    return verify_dtuple(std::move(elements), n);
}

}  // namespace d4
