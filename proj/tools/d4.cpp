#include "d4kit/search.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitAudit = 3;

d4::GaussianInt parse_gint(const std::string& text) {
    d4::GPoly p = d4::poly_parse(text);
    if (!p.is_constant())
        throw d4::D4Error(d4::Err::Parse, "expected a Gaussian integer, got " + text);
    return p.is_zero() ? d4::GaussianInt{} : p.coeff(0);
}

std::vector<d4::GPoly> parse_polys(const std::vector<std::string>& texts) {
    std::vector<d4::GPoly> out;
    for (const auto& t : texts) out.push_back(d4::poly_parse(t));
    return out;
}

json witnesses_json(const d4::DTuple& t) {
    json w = json::object();
    for (const auto& [ij, poly] : t.witnesses)
        w[std::to_string(ij.first) + "," + std::to_string(ij.second)] = poly.str();
    return w;
}

void print_report(const d4::LemmaReport& report, bool as_json) {
    if (as_json) {
        std::cout << d4::report_to_json(report).dump(2) << "\n";
        return;
    }
    for (const auto& chk : report) {
        const char* st = chk.status == d4::CheckStatus::Pass
                             ? "pass"
                             : chk.status == d4::CheckStatus::Fail ? "FAIL" : "n/a ";
        std::cout << st << "  " << chk.lemma_id << "  " << chk.instance_id;
        if (!chk.detail.empty()) std::cout << "  -- " << chk.detail;
        std::cout << "\n";
    }
}

int cmd_verify(const std::vector<std::string>& elems, const std::string& n_text, bool as_json) {
    d4::DTuple t;
    try {
        t = d4::verify_dtuple(parse_polys(elems), parse_gint(n_text));
    } catch (const d4::ParseError&) {
        throw;
    } catch (const d4::D4Error& e) {
        std::cerr << "not a D(n)-tuple: " << e.what() << "\n";
        return kExitVerify;
    }
    if (as_json) {
        std::cout << t.to_json().dump(2) << "\n";
    } else {
        std::cout << "D(" << t.n.str() << ")-" << t.elements.size() << "-tuple\n";
        for (size_t i = 0; i < t.elements.size(); ++i)
            std::cout << "  element " << i << ": " << t.elements[i].str() << "\n";
        for (const auto& [ij, w] : t.witnesses)
            std::cout << "  witness " << ij.first << "," << ij.second << ": " << w.str() << "\n";
        for (const auto& w : t.warnings) std::cout << "  warning: " << w << "\n";
    }
    return kExitOk;
}

int cmd_extend(const std::vector<std::string>& pair, const std::vector<std::string>& triple,
               bool as_json) {
    if (!pair.empty()) {
        auto polys = parse_polys(pair);
        d4::PairExtension ext = d4::extend_pair_regular(polys[0], polys[1]);
        if (as_json)
            std::cout << json{{"c_plus", ext.c_plus.str()},
                              {"c_minus", ext.c_minus.str()},
                              {"r", ext.r.str()}}
                             .dump(2)
                      << "\n";
        else
            std::cout << "c_plus  = " << ext.c_plus.str() << "\nc_minus = " << ext.c_minus.str()
                      << "\nr       = " << ext.r.str() << "\n";
        return kExitOk;
    }
    auto polys = parse_polys(triple);
    d4::TripleExtension ext = d4::extend_triple_regular(polys[0], polys[1], polys[2]);
    if (as_json)
        std::cout << json{{"d_plus", ext.d_plus.str()},
                          {"d_minus", ext.d_minus.str()},
                          {"r", ext.wit.r.str()},
                          {"s", ext.wit.s.str()},
                          {"t", ext.wit.t.str()}}
                         .dump(2)
                  << "\n";
    else
        std::cout << "d_plus  = " << ext.d_plus.str() << "\nd_minus = " << ext.d_minus.str()
                  << "\nr = " << ext.wit.r.str() << ", s = " << ext.wit.s.str()
                  << ", t = " << ext.wit.t.str() << "\n";
    return kExitOk;
}

int cmd_recur(const std::vector<std::string>& triple, int depth, int branch, bool as_json) {
    auto polys = parse_polys(triple);
    d4::PellSystem sys =
        d4::build_system(d4::verify_dtuple(polys, d4::GaussianInt(4)));
    json out = json::array();
    for (int b : {1, 2}) {
        if (branch != 0 && branch != b) continue;
        for (const auto& fund : d4::fundamental_candidates(sys, b)) {
            d4::RecurrenceRun run = d4::run_sequence(sys, b, fund, depth + 1);
            if (as_json) {
                json terms = json::array();
                for (const auto& t : run.terms) terms.push_back(t.str());
                out.push_back({{"branch", b},
                               {"z", fund.z.str()},
                               {"xy", fund.xy.str()},
                               {"d_seed", fund.d_seed.str()},
                               {"terms", terms}});
            } else {
                std::cout << "branch " << b << ", z = " << fund.z.str()
                          << ", xy = " << fund.xy.str() << ", d_seed = " << fund.d_seed.str()
                          << "\n";
                for (size_t k = 0; k < run.terms.size(); ++k)
                    std::cout << "  term " << k << ": " << run.terms[k].str() << "\n";
            }
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_lemmas(const std::vector<std::string>& triple, int depth, const std::string& bounds_text,
               int jobs, bool as_json) {
    d4::LemmaReport report;
    if (!triple.empty()) {
        auto polys = parse_polys(triple);
        d4::PellSystem sys =
            d4::build_system(d4::verify_dtuple(polys, d4::GaussianInt(4)));
        report = d4::audit_triple(sys, depth, "{" + polys[0].str() + "; " + polys[1].str() +
                                                  "; " + polys[2].str() + "}");
    } else {
        int max_deg = 0, coeff_bound = 0;
        if (std::sscanf(bounds_text.c_str(), "%d,%d", &max_deg, &coeff_bound) != 2)
            throw CLI::ValidationError("--bounds", "expected the form d,B");
        d4::SearchBounds bounds;
        bounds.max_deg = max_deg;
        bounds.coeff_bound = coeff_bound;
        bounds.depth = depth;
        report = d4::audit_lemmas(bounds, jobs,
                                  [](const std::string& line) { std::cerr << line << "\n"; });
    }
    print_report(report, as_json);
    return d4::report_all_pass(report) ? kExitOk : kExitAudit;
}

int cmd_search(int max_deg, int coeff_bound, int jobs, std::string out_dir, bool as_json) {
    d4::SearchBounds bounds;
    bounds.max_deg = max_deg;
    bounds.coeff_bound = coeff_bound;
    if (out_dir.empty()) {
        const char* env = std::getenv("D4KIT_OUT_DIR");
        out_dir = env && *env ? env : ".";
    }
    d4::AuditResult res = d4::audit_theorem(
        bounds, jobs, [](const std::string& line) { std::cerr << line << "\n"; });
    json manifest = d4::write_corpus(res, bounds, jobs, out_dir);
    if (as_json) {
        std::cout << manifest.dump(2) << "\n";
    } else {
        std::cout << "pairs:      " << res.pairs << "\ntriples:    " << res.triples
                  << "\nquadruples: " << res.quadruples << "\nviolations: "
                  << res.violations.size() << "\ndigest:     " << manifest["digest"]
                  << "\nelapsed:    " << res.elapsed_seconds << " s\n";
        for (const auto& v : res.violations) std::cout << "violation: " << v << "\n";
    }
    return res.violations.empty() ? kExitOk : kExitAudit;
}

int cmd_lift(const std::vector<std::string>& triple, bool as_json) {
    auto polys = parse_polys(triple);
    d4::LiftResult res;
    try {
        res = d4::lift_dminus4(polys[0], polys[1], polys[2]);
    } catch (const d4::D4Error& e) {
        std::cerr << "lift failed: " << e.what() << "\n";
        return kExitVerify;
    }
    if (as_json) {
        json valid = json::array(), degen = json::array();
        for (const auto& d : res.d_valid) valid.push_back(d.str());
        for (const auto& d : res.d_degenerate) degen.push_back(d.str());
        std::cout << json{{"lifted", res.lifted.to_json()},
                          {"d_plus", res.d_plus.str()},
                          {"d_minus", res.d_minus.str()},
                          {"d_valid", valid},
                          {"d_degenerate", degen}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "lifted D(4)-triple:";
        for (const auto& e : res.lifted.elements) std::cout << "  " << e.str();
        std::cout << "\nd_plus  = " << res.d_plus.str() << "\nd_minus = " << res.d_minus.str()
                  << "\n";
        for (const auto& d : res.d_valid) std::cout << "valid extension: " << d.str() << "\n";
        for (const auto& d : res.d_degenerate)
            std::cout << "degenerate extension: " << d.str() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"d4kit: exact D(4)-tuple toolkit over Z[i][X]"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON instead of text");

    auto* verify = app.add_subcommand("verify", "check a D(n)-tuple and print witnesses");
    std::string n_text = "4";
    std::vector<std::string> verify_elems;
    verify->add_option("--n", n_text, "the n of D(n)");
    verify->add_option("elements", verify_elems, "tuple elements")->required();

    auto* extend = app.add_subcommand("extend", "regular extensions of a pair or triple");
    std::vector<std::string> ext_pair, ext_triple;
    auto* pair_opt = extend->add_option("--pair", ext_pair, "pair a b")->expected(2);
    auto* triple_opt = extend->add_option("--triple", ext_triple, "triple a b c")->expected(3);
    pair_opt->excludes(triple_opt);

    auto* recur = app.add_subcommand("recur", "recurrence runs from fundamental solutions");
    std::vector<std::string> recur_triple;
    int recur_depth = 6, recur_branch = 0;
    recur->add_option("--triple", recur_triple, "triple a b c")->expected(3)->required();
    recur->add_option("--depth", recur_depth, "terms beyond v_0");
    recur->add_option("--branch", recur_branch, "1 or 2 (default both)")
        ->check(CLI::IsMember({0, 1, 2}));

    auto* lemmas = app.add_subcommand("lemmas", "run the lemma-audit registry");
    std::vector<std::string> lemma_triple;
    std::string lemma_bounds;
    int lemma_depth = 6, lemma_jobs = 1;
    auto* lt = lemmas->add_option("--triple", lemma_triple, "triple a b c")->expected(3);
    auto* lb = lemmas->add_option("--bounds", lemma_bounds, "search bounds d,B");
    lemmas->add_option("--depth", lemma_depth, "recurrence depth");
    lemmas->add_option("--jobs", lemma_jobs, "worker threads");
    lt->excludes(lb);

    auto* search = app.add_subcommand("search", "bounded enumeration and theorem audit");
    int s_max_deg = 2, s_coeff = 4, s_jobs = 1;
    std::string s_out;
    search->add_option("--max-deg", s_max_deg, "element degree bound");
    search->add_option("--coeff-bound", s_coeff, "coefficient box bound");
    search->add_option("--jobs", s_jobs, "worker threads");
    search->add_option("--out", s_out, "output directory for corpus/manifest");

    auto* lift = app.add_subcommand("lift", "lift a D(-4)-triple over Z[X]");
    std::vector<std::string> lift_triple;
    lift->add_option("--dminus4", lift_triple, "triple a b c over Z[X]")
        ->expected(3)
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(verify_elems, n_text, as_json);
        if (*extend) {
            if (ext_pair.empty() && ext_triple.empty()) {
                std::cerr << "extend needs --pair or --triple\n";
                return kExitUsage;
            }
            return cmd_extend(ext_pair, ext_triple, as_json);
        }
        if (*recur) return cmd_recur(recur_triple, recur_depth, recur_branch, as_json);
        if (*lemmas) {
            if (lemma_triple.empty() && lemma_bounds.empty()) {
                std::cerr << "lemmas needs --triple or --bounds\n";
                return kExitUsage;
            }
            return cmd_lemmas(lemma_triple, lemma_depth, lemma_bounds, lemma_jobs, as_json);
        }
        if (*search) return cmd_search(s_max_deg, s_coeff, s_jobs, s_out, as_json);
        if (*lift) return cmd_lift(lift_triple, as_json);
    } catch (const d4::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const d4::D4Error& e) {
        std::cerr << e.what() << "\n";
        return kExitVerify;
    }
    return kExitUsage;
}
