#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "d4kit/pell.hpp"

#include <nlohmann/json.hpp>

using d4::GaussianInt;
using d4::GPoly;

namespace {

GPoly P(const std::string& s) { return d4::poly_parse(s); }

d4::PellSystem integer_system() {
    return d4::build_system(
        d4::verify_dtuple({P("X"), P("X + 4"), P("4X + 8")}, GaussianInt(4)));
}

d4::PellSystem gaussian_system() {
    return d4::build_system(d4::verify_dtuple(
        {P("2i"), P("-2iX^2 - 4iX"), P("2iX^2 + 4iX + 4i")}, GaussianInt(4)));
}

std::vector<d4::RecurrenceRun> runs_for(const d4::PellSystem& sys, int branch, int count) {
    std::vector<d4::RecurrenceRun> out;
    for (const auto& fund : d4::fundamental_candidates(sys, branch))
        out.push_back(d4::run_sequence(sys, branch, fund, count));
    return out;
}

}  // namespace

TEST_CASE("build_system extracts witnesses, profile and regular extensions") {
    auto sys = integer_system();
    // Sorted element order is (4X+8, X, X+4); witnesses follow it.
    CHECK(sys.wit.r == P("2X + 2"));
    CHECK(sys.wit.s == P("2X + 6"));
    CHECK(sys.wit.t == P("X + 2"));
    CHECK(sys.profile.alpha == 1);
    CHECK(sys.profile.beta == 1);
    CHECK(sys.profile.gamma == 1);
    CHECK(sys.d_plus == P("4X^3 + 24X^2 + 44X + 24"));
    CHECK(sys.d_minus.is_zero());

    auto gs = gaussian_system();
    CHECK(gs.profile.alpha == 0);
    CHECK(gs.d_minus == P("2i"));
    CHECK_THROWS_AS(
        d4::build_system(d4::verify_dtuple({P("X"), P("X + 4")}, GaussianInt(4))),
        d4::D4Error);
}

TEST_CASE("pell relations hold for the trivial solution") {
    auto sys = integer_system();
    CHECK(sys.relation_holds(1, GPoly(2), GPoly(2)));
    CHECK(sys.relation_holds(2, GPoly(2), GPoly(2)));
    CHECK_FALSE(sys.relation_holds(1, P("X"), P("X")));
}

TEST_CASE("recurrence terms match hand-computed values") {
    auto sys = integer_system();
    d4::FundamentalSolution fund;
    fund.branch = 1;
    fund.z = GPoly(2);
    fund.xy = GPoly(2);
    auto run = d4::run_sequence(sys, 1, fund, 3);
    REQUIRE(run.terms.size() == 3);
    // With (a,b,c) = (4X+8, X, X+4): v1 = (s*2 + c*2)/2 = 3X+10 and
    // v2 = s*v1 - v0 = (2X+6)(3X+10) - 2.
    CHECK(run.terms[0] == GPoly(2));
    CHECK(run.terms[1] == P("3X + 10"));
    CHECK(run.terms[2] == P("6X^2 + 38X + 58"));

    auto one = d4::run_sequence(sys, 1, fund, 1);
    REQUIRE(one.terms.size() == 1);
    CHECK(one.terms[0] == fund.z);
    CHECK_THROWS_AS(d4::run_sequence(sys, 1, fund, 0), d4::D4Error);
}

TEST_CASE("forward step and descent are inverse") {
    auto sys = integer_system();
    GPoly z(2), xy(2);
    d4::forward_step(sys, 1, z, xy);
    CHECK(sys.relation_holds(1, z, xy));
    CHECK(z.deg() > 0);

    auto res = d4::descend(sys, 1, z, xy);
    CHECK(res.steps == 1);
    CHECK(res.fund.z == GPoly(2));
    CHECK(res.fund.xy == GPoly(2));
    CHECK(res.fund.d_seed.is_zero());

    auto fixed = d4::descend(sys, 1, GPoly(2), GPoly(2));
    CHECK(fixed.steps == 0);

    // Three steps up, three steps down.
    d4::forward_step(sys, 1, z, xy);
    d4::forward_step(sys, 1, z, xy);
    CHECK(d4::descend(sys, 1, z, xy).steps == 3);

    CHECK_THROWS_AS(d4::descend(sys, 1, P("X"), P("X")), d4::D4Error);
}

TEST_CASE("fundamental candidates satisfy the relation and bounds") {
    for (const auto& sys : {integer_system(), gaussian_system()}) {
        for (int branch : {1, 2}) {
            auto cands = d4::fundamental_candidates(sys, branch);
            CHECK_FALSE(cands.empty());
            for (const auto& f : cands) {
                CHECK(sys.relation_holds(branch, f.z, f.xy));
                CHECK(f.within_bounds(sys.profile));
            }
        }
    }
}

TEST_CASE("intersections recover d_plus at low indices") {
    auto sys = integer_system();
    auto runs1 = runs_for(sys, 1, 5);
    auto runs2 = runs_for(sys, 2, 5);
    bool found_dplus = false;
    for (const auto& ra : runs1)
        for (const auto& rb : runs2)
            for (const auto& hit : d4::intersect(sys, ra, rb)) {
                bool low = (hit.m == 1 || hit.m == 2) && (hit.n == 1 || hit.n == 2);
                if (hit.d == sys.d_plus && low) {
                    found_dplus = true;
                    CHECK(hit.index_bound_ok);
                }
                // Any core-index intersection must be a regular extension;
                // d_minus can only show up at indices m, n <= 1.
                if (low) {
                    bool regular_d = hit.d == sys.d_plus || hit.d == sys.d_minus;
                    CHECK(regular_d);
                }
                if (hit.d == sys.d_minus) {
                    CHECK(hit.m <= 1);
                    CHECK(hit.n <= 1);
                }
            }
    CHECK(found_dplus);
}

TEST_CASE("rst congruence mod c") {
    auto sys = integer_system();
    auto chk = d4::check_rst_congruence(sys, sys.d_minus, "int");
    CHECK(chk.status == d4::CheckStatus::Pass);

    auto gs = gaussian_system();
    CHECK(d4::check_rst_congruence(gs, gs.d_minus, "gauss").status == d4::CheckStatus::Pass);
    // A perturbed d_minus breaks the congruence.
    CHECK(d4::check_rst_congruence(gs, gs.d_minus + GPoly(1), "bad").status ==
          d4::CheckStatus::Fail);
}

TEST_CASE("initial classification") {
    auto sys = integer_system();
    // d_minus = 0 forces z0 = z1 = ±2.
    CHECK(d4::classify_initials(sys, GPoly(2), GPoly(2), sys.d_minus) ==
          d4::InitialCase::DMinusZero);
    CHECK(d4::classify_initials(sys, GPoly(-2), GPoly(-2), sys.d_minus) ==
          d4::InitialCase::DMinusZero);
    CHECK(d4::classify_initials(sys, P("X"), GPoly(2), sys.d_minus) ==
          d4::InitialCase::Unclassified);

    auto gs = gaussian_system();
    // d_minus = a = 2i forces z0 = z1 = ±s.
    CHECK(d4::classify_initials(gs, gs.wit.s, gs.wit.s, gs.d_minus) ==
          d4::InitialCase::DMinusIsA2i);
}

TEST_CASE("alpha = 0 lemma on the Gaussian system") {
    auto gs = gaussian_system();
    auto chk = d4::check_alpha0_lemma(gs, gs.wit.s, GPoly(), "gauss");
    CHECK(chk.status == d4::CheckStatus::Pass);
    // Not applicable when alpha > 0.
    auto sys = integer_system();
    CHECK(d4::check_alpha0_lemma(sys, GPoly(2), GPoly(2), "int").status ==
          d4::CheckStatus::NotApplicable);
}

TEST_CASE("identity block for both regular extensions") {
    for (const auto& sys : {integer_system(), gaussian_system()}) {
        for (const GPoly& d : {sys.d_plus, sys.d_minus}) {
            auto rep = d4::check_identity_block(sys, d, "block");
            CHECK(d4::report_all_pass(rep));
        }
    }
}

TEST_CASE("report json encoding") {
    d4::LemmaReport rep;
    rep.push_back({"L6", "inst", d4::CheckStatus::Pass, "ok"});
    rep.push_back({"L7", "inst", d4::CheckStatus::NotApplicable, ""});
    auto j = d4::report_to_json(rep);
    REQUIRE(j.is_array());
    CHECK(j[0]["lemma_id"] == "L6");
    CHECK(j[0]["status"] == "pass");
    CHECK(j[1]["status"] == "not_applicable");
    CHECK(d4::report_all_pass(rep));
    rep.push_back({"L8", "inst", d4::CheckStatus::Fail, "boom"});
    CHECK_FALSE(d4::report_all_pass(rep));
}

TEST_CASE("full audit passes on reference triples") {
    auto rep1 = d4::audit_triple(integer_system(), 5, "integer");
    CHECK(d4::report_all_pass(rep1));
    auto rep2 = d4::audit_triple(gaussian_system(), 5, "gaussian");
    CHECK(d4::report_all_pass(rep2));

    // A pair-family triple exercised the same way.
    auto [a, b] = d4::pair_family(P("X + 1"), P("X - 1"));
    auto pe = d4::extend_pair_regular(a, b);
    auto sys = d4::build_system(d4::verify_dtuple({a, b, pe.c_plus}, GaussianInt(4)));
    CHECK(d4::report_all_pass(d4::audit_triple(sys, 5, "family")));
}
