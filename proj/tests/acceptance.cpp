// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every numeric oracle below was computed independently by hand or
// by a straightforward brute-force reference, not read back from the code
// under test.

#include "d4kit/search.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

using d4::GaussianInt;
using d4::GPoly;

namespace {

GPoly P(const std::string& s) { return d4::poly_parse(s); }

GPoly random_poly(std::mt19937& rng, int max_deg, int bound) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-bound, bound);
    std::vector<GaussianInt> cs(static_cast<size_t>(deg(rng)) + 1);
    for (auto& c : cs) c = GaussianInt(coeff(rng), coeff(rng));
    return GPoly(std::move(cs));
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(int criterion, bool ok, double seconds, const std::string& what) {
    if (!ok) ++failures;
    std::printf("%s  criterion %d  (%6.2fs)  %s\n", ok ? "PASS" : "FAIL", criterion, seconds,
                what.c_str());
    std::fflush(stdout);
}

// A pair/triple corpus shared by criteria 2-5: regular triples built from
// the constructive pair family (p, pq^2 + 4q) with c = a + b + 2r.
struct FamilyTriple {
    GPoly a, b, c;
};

std::vector<FamilyTriple> family_corpus(size_t want_pairs) {
    std::mt19937 rng(48611);
    std::vector<FamilyTriple> out;
    std::set<std::string> seen;
    while (out.size() < want_pairs) {
        GPoly p = random_poly(rng, 2, 5);
        GPoly q = random_poly(rng, 2, 5);
        if (p.is_zero() || q.is_zero()) continue;
        auto [a, b] = d4::pair_family(p, q);
        if (b.is_zero() || a == b) continue;
        if (a.is_constant() && b.is_constant()) continue;
        auto ext = d4::extend_pair_regular(a, b);
        GPoly c = ext.c_plus;
        if (c.is_zero() || c == a || c == b) continue;
        if (!seen.insert(a.str() + "|" + b.str() + "|" + c.str()).second) continue;
        out.push_back({a, b, c});
    }
    return out;
}

void criterion1() {
    Clock clk;
    bool ok = true;
    try {
        auto t = d4::verify_dtuple({P("2i"), P("-2iX^2 - 4iX"), P("2iX^2 + 4iX + 4i")},
                                   GaussianInt(4));
        auto w = t.triple_witnesses();
        GPoly two_sq = GPoly(2) * P("X^2 + 2X + 1");  // 2(X+1)^2
        ok = ok && (w.t == two_sq || w.t == -two_sq);
        ok = ok && (w.r * w.r == GPoly(2) * w.t);
        ok = ok && (w.s * w.s == GPoly(-2) * w.t);
    } catch (const d4::D4Error&) {
        ok = false;
    }
    double s = clk.seconds();
    report(1, ok && s < 1.0, s, "showcase Gaussian triple verifies with t = 2(X+1)^2 up to sign");
}

void criterion2(const std::vector<FamilyTriple>& corpus) {
    Clock clk;
    bool ok = true;
    for (const auto& ft : corpus) {
        auto pe = d4::extend_pair_regular(ft.a, ft.b);
        GPoly ab4 = ft.a * ft.b + GPoly(4);
        ok = ok && (pe.r * pe.r == ab4);
        for (const GPoly& c : {pe.c_plus, pe.c_minus}) {
            GPoly gap = c - ft.a - ft.b;
            ok = ok && (gap * gap == GPoly(4) * ab4);
        }
        auto te = d4::extend_triple_regular(ft.a, ft.b, ft.c);
        GPoly rhs = ft.a * ft.a + ft.b * ft.b + ft.c * ft.c -
                    GPoly(2) * (ft.a * ft.b + ft.a * ft.c + ft.b * ft.c) - GPoly(16);
        ok = ok && (te.d_plus * te.d_minus == rhs);
        if (!ok) break;
    }
    double s = clk.seconds();
    report(2, ok && s < 30.0, s,
           "regular extension and product identities on " + std::to_string(corpus.size()) +
               " random family pairs");
}

void criterion3(const std::vector<FamilyTriple>& corpus) {
    Clock clk;
    bool ok = true;
    for (const auto& ft : corpus) {
        auto sys = d4::build_system(d4::verify_dtuple({ft.a, ft.b, ft.c}, GaussianInt(4)));
        int alpha = sys.profile.alpha, beta = sys.profile.beta, gamma = sys.profile.gamma;
        ok = ok && (sys.d_plus.deg() == alpha + beta + gamma);
        ok = ok && (sys.d_minus.is_zero() || sys.d_minus.deg() == gamma - alpha - beta);
        // Degree dichotomy: c = a+b±2r or gamma >= alpha+beta.
        GPoly gap = sys.c - sys.a - sys.b;
        bool pair_regular = gap * gap == GPoly(4) * (sys.a * sys.b + GPoly(4));
        ok = ok && (pair_regular || gamma >= alpha + beta);
        if (!ok) break;
    }
    double s = clk.seconds();
    report(3, ok, s, "degree laws for d_+, d_- and the triple degree dichotomy");
}

void criteria4and5(const std::vector<FamilyTriple>& corpus) {
    Clock clk;
    size_t triples = 0;
    int recurrence_failures = 0, dichotomy_failures = 0;
    const std::set<std::string> recurrence_ids{"L4", "L6", "L7", "L8", "L4_4"};
    const std::set<std::string> dichotomy_ids{"PROP1", "GAP0"};
    for (const auto& ft : corpus) {
        if (triples >= 50) break;
        ++triples;
        auto sys = d4::build_system(d4::verify_dtuple({ft.a, ft.b, ft.c}, GaussianInt(4)));
        for (const auto& chk : d4::audit_triple(sys, 6, "acc")) {
            if (chk.status != d4::CheckStatus::Fail) continue;
            if (recurrence_ids.count(chk.lemma_id)) ++recurrence_failures;
            if (dichotomy_ids.count(chk.lemma_id)) ++dichotomy_failures;
        }
    }
    double s = clk.seconds();
    report(4, triples >= 50 && recurrence_failures == 0 && s < 300.0, s,
           "depth-6 recurrence/congruence suite (L4, L6, L7, L8, L4_4) over " +
               std::to_string(triples) + " triples");
    report(5, triples >= 50 && dichotomy_failures == 0, s,
           "depth-6 intersection dichotomy (PROP1, GAP0) over the same triples");
}

void criterion6() {
    Clock clk;
    d4::SearchBounds bounds;  // max_deg 2, coeff_bound 4
    auto first = d4::audit_theorem(bounds, 1);
    auto second = d4::audit_theorem(bounds, 2);
    bool ok = first.quadruples > 0 && first.violations.empty() && second.violations.empty() &&
              first.digest == second.digest && first.quadruples == second.quadruples;
    double s = clk.seconds();
    char digest_hex[32];
    std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                  static_cast<unsigned long long>(first.digest));
    report(6, ok && s < 1800.0, s,
           "box search (deg<=2, |coeff|<=4): " + std::to_string(first.quadruples) +
               " quadruples, all regular, digest " + digest_hex + " stable across job counts");
}

void criterion7() {
    Clock clk;
    bool ok = true;
    // Brute-force square table: squares of every w with |re|,|im| <= 15
    // cover all squares in the test box |re|,|im| <= 100.
    std::set<std::pair<long long, long long>> squares;
    for (long long re = -15; re <= 15; ++re)
        for (long long im = -15; im <= 15; ++im) {
            GaussianInt w(re, im), z = w * w;
            squares.insert({static_cast<long long>(z.re), static_cast<long long>(z.im)});
        }
    for (long long re = -100; re <= 100 && ok; ++re)
        for (long long im = -100; im <= 100; ++im) {
            GaussianInt z(re, im);
            auto r = d4::gi_sqrt(z);
            bool expect = squares.count({re, im}) != 0;
            if (r.has_value() != expect || (r && !((*r) * (*r) == z))) {
                ok = false;
                break;
            }
        }
    // Witness-driven pair enumeration against the naive double loop.
    d4::SearchBounds small;
    small.max_deg = 1;
    small.coeff_bound = 2;
    auto fast = d4::enumerate_pairs(small);
    auto naive = d4::enumerate_pairs_naive(small);
    ok = ok && fast.size() == naive.size() && !fast.empty();
    for (size_t k = 0; ok && k < fast.size(); ++k)
        ok = fast[k].a == naive[k].a && fast[k].b == naive[k].b;
    report(7, ok, clk.seconds(),
           "gi_sqrt against brute force on the 201x201 box; pair search against the naive oracle");
}

void criterion8() {
    Clock clk;
    bool ok = true;
    int lifted = 0;
    // D(-4)-triples {2, 2R^2+2, 2(R+1)^2+2} for R = cX + e:
    // pairwise products are 4R^2+4... shifted squares minus 4 by construction.
    for (int cc = 1; cc <= 3 && ok; ++cc)
        for (int e = 0; e <= 3; ++e) {
            GPoly R = GPoly(cc) * GPoly::monomial(GaussianInt(1), 1) + GPoly(e);
            GPoly a(2);
            GPoly b = GPoly(2) * R * R + GPoly(2);
            GPoly Rp1 = R + GPoly(1);
            GPoly c = GPoly(2) * Rp1 * Rp1 + GPoly(2);
            try {
                auto res = d4::lift_dminus4(a, b, c);
                if (res.lifted.elements.size() != 3 || res.d_valid.empty()) ok = false;
                for (const GPoly& d : {res.d_plus, res.d_minus})
                    for (const GPoly& x : {a, b, c})
                        if (!d.is_zero() && !d4::poly_sqrt(x * d + GPoly(4)).has_value())
                            ok = false;
                ++lifted;
            } catch (const d4::D4Error&) {
                ok = false;
            }
            if (!ok) break;
        }
    double s = clk.seconds();
    report(8, ok && lifted >= 10 && s < 10.0, s,
           "lifted " + std::to_string(lifted) + " D(-4)-triples with verified d_+/d_-");
}

}  // namespace

int main() {
    auto corpus = family_corpus(200);
    criterion1();
    criterion2(corpus);
    criterion3(corpus);
    criteria4and5(corpus);
    criterion6();
    criterion7();
    criterion8();
    return failures == 0 ? 0 : 1;
}
