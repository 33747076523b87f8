#pragma once

#include "d4kit/dtuple.hpp"

#include <string>
#include <vector>

namespace d4 {

struct DegreeProfile {
    int alpha = kNegInfDeg;
    int beta = kNegInfDeg;
    int gamma = kNegInfDeg;
};

/// A sorted D(4)-triple with witnesses and the Pellian context
///   a z^2 - c x^2 = 4(a-c)   (branch 1)
///   b z^2 - c y^2 = 4(b-c)   (branch 2)
struct PellSystem {
    GPoly a, b, c;
    TripleWitnesses wit;
    DegreeProfile profile;
    GPoly d_plus, d_minus;  // regular extensions of the triple

    bool relation_holds(int branch, const GPoly& z, const GPoly& xy) const;
};

PellSystem build_system(const DTuple& triple);

struct FundamentalSolution {
    int branch = 1;
    GPoly z;       // z0 (branch 1) or z1 (branch 2)
    GPoly xy;      // x0 (branch 1) or y1 (branch 2)
    GPoly d_seed;  // c*d_seed + 4 = z^2 and a*d_seed + 4 = xy^2 (b for branch 2)

    /// Degree bounds: deg z <= (3*gamma - alpha)/4, deg xy <= (alpha+gamma)/4
    /// (beta in place of alpha for branch 2).
    bool within_bounds(const DegreeProfile& p) const;
};

/// The bounded-degree solutions the classification lemmas allow, derived
/// from extension seeds d in {0, d_minus, b or a, a when a = ±2i}. Both
/// signs of z are emitted; the partner is kept sign-fixed.
std::vector<FundamentalSolution> fundamental_candidates(const PellSystem& sys, int branch);

struct DescentResult {
    FundamentalSolution fund;
    int steps = 0;
};

/// Unit-action step (z,xy) -> ((s*z+c*xy)/2, (a*z+s*xy)/2); branch 2 uses
/// (b, t). Throws HalvingFailed if the halving leaves Z[i][X].
void forward_step(const PellSystem& sys, int branch, GPoly& z, GPoly& xy);

/// Inverse unit-action iteration from any solution down to one meeting the
/// fundamental degree bounds. Throws NotASolution for a non-solution and
/// DescentStuck if the inverse step leaves Z[i][X] (or fails to shrink)
/// before the bounds are met.
DescentResult descend(const PellSystem& sys, int branch, GPoly z, GPoly xy);

struct RecurrenceRun {
    int branch = 1;
    FundamentalSolution fund;
    std::vector<GPoly> terms;  // v_0..v_M (branch 1) / w_0..w_N (branch 2)
};

/// terms[0] = z, terms[1] = (s*z + c*xy)/2, terms[k+2] = s*terms[k+1] - terms[k]
/// (t in place of s for branch 2).
RecurrenceRun run_sequence(const PellSystem& sys, int branch, const FundamentalSolution& fund,
                           int count);

struct Intersection {
    int m = 0, n = 0;
    bool negated = false;  // v_m == -w_n rather than v_m == w_n
    GPoly d;               // (v_m^2 - 4)/c
    bool index_bound_ok = true;  // n-1 <= m <= 2n+1
};

/// All index pairs with v_m = ±w_n, with the induced extension d.
std::vector<Intersection> intersect(const PellSystem& sys, const RecurrenceRun& run_a,
                                    const RecurrenceRun& run_b);

// ---------------------------------------------------------------------------
// Lemma audit

enum class CheckStatus { Pass, Fail, NotApplicable };

struct LemmaCheck {
    std::string lemma_id;    // registry id: L2..L9, DEG_SC, D_MINUS, GAP0, ...
    std::string instance_id;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

using LemmaReport = std::vector<LemmaCheck>;

nlohmann::json report_to_json(const LemmaReport& report);
bool report_all_pass(const LemmaReport& report);

/// Lemma 6: v_{2m} = z0, v_{2m+1} = v_1 (mod c), same for w.
LemmaReport check_parity_congruences(const PellSystem& sys, const std::vector<RecurrenceRun>& runs,
                                     const std::string& instance);

/// Lemma 7: the mod-c^2 congruences for v_{2m}, 2v_{2m+1}, w_{2n}, 2w_{2n+1}.
LemmaReport check_modc2_congruences(const PellSystem& sys, const std::vector<RecurrenceRun>& runs,
                                    const std::string& instance);

/// Lemma 8: rst = 2a + 2b - 2d_- (mod c) for some sign assignment of (r,s,t).
LemmaCheck check_rst_congruence(const PellSystem& sys, const GPoly& d_minus,
                                const std::string& instance);

/// Lemma 4: deg(v_m) = (m-1)(alpha+gamma)/2 + deg(v_1) and the deg(v_1) bounds.
LemmaReport check_degree_formulas(const PellSystem& sys, const std::vector<RecurrenceRun>& runs,
                                  const std::string& instance);

/// Lemma degreesd / initial3 case label for a fundamental pair (z0, z1).
enum class InitialCase {
    DMinusZero,       // d_- = 0, z0 = z1 = ±2
    DMinusIsA2i,      // d_- = a = ±2i, z0 = z1 = ±s
    DMinusConstant,   // deg d_- = 0, d_- not in {0, a}, z0 = z1 = ±(cr±st)/2
    PosDeg_CrSt,      // z0 = z1 = ±(cr±st)/2, deg d_- <= alpha
    PosDeg_CrSt_S,    // (z0, z1) = (±(cr±st)/2, ±s)
    PosDeg_T_CrSt,    // (z0, z1) = (±t, ±(cr±st)/2), gamma = 3*alpha
    PosDeg_T_S,       // (z0, z1) = (±t, ±s)
    Unclassified,
};

const char* initial_case_name(InitialCase c);

InitialCase classify_initials(const PellSystem& sys, const GPoly& z0, const GPoly& z1,
                              const GPoly& d_minus);

/// Lemma 4.4 shift identities between sequences seeded at ±t (±s) and
/// ±(cr±st)/2, checked termwise to the given depth.
LemmaReport check_shift_identities(const PellSystem& sys, int depth, const std::string& instance);

/// Lemma 9: alpha = 0, x0 constant, z0 non-constant forces x0 = 0,
/// a = ±2i, z0 = ±s.
LemmaCheck check_alpha0_lemma(const PellSystem& sys, const GPoly& z0, const GPoly& x0,
                              const std::string& instance);

/// Section 3 identity block for d in {d_plus, d_minus}:
///   2(c-a-b-d) = abd -+ r*u*v   and   d = a+b-c+rw, a-b+c+sv, -a+b+c+tu
/// for some sign assignment; u, v, w are the canonical roots of
/// ad+4, bd+4, cd+4.
LemmaReport check_identity_block(const PellSystem& sys, const GPoly& d,
                                 const std::string& instance);

/// Every lemma checker in the registry, over runs of the given depth.
LemmaReport audit_triple(const PellSystem& sys, int depth, const std::string& instance);

}  // namespace d4
