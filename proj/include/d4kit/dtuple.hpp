#pragma once

#include "d4kit/gpoly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace d4 {

/// Canonical square roots of ab+4, ac+4, bc+4 for an ordered triple (a,b,c).
struct TripleWitnesses {
    GPoly r, s, t;
};

/// A verified D(n)-tuple: elements sorted by (degree, canonical print),
/// with a canonical witness for every pairwise product.
struct DTuple {
    GaussianInt n;
    std::vector<GPoly> elements;
    std::map<std::pair<int, int>, GPoly> witnesses;
    /// Warning-class findings (e.g. more than one constant element).
    std::vector<std::string> warnings;

    TripleWitnesses triple_witnesses() const;

    nlohmann::json to_json() const;
    static DTuple from_json(const nlohmann::json& j);
};

/// Check that every pairwise product plus n is a square; sorts the
/// elements and records all witnesses. Throws on zero elements,
/// duplicates, or a non-square product. Two or more constant elements
/// are recorded as a warning, not an error.
DTuple verify_dtuple(std::vector<GPoly> elements, const GaussianInt& n);

struct PairExtension {
    GPoly c_plus, c_minus, r;
};

/// Regular extensions c = a + b ± 2r of a D(4)-pair, r canonical.
PairExtension extend_pair_regular(const GPoly& a, const GPoly& b);

struct TripleExtension {
    GPoly d_plus, d_minus;  // d_plus is the higher-degree extension
    TripleWitnesses wit;
};

/// Regular extensions d = a + b + c + (abc ± rst)/2 of a D(4)-triple.
/// Inputs are sorted internally; witnesses returned for the sorted order.
TripleExtension extend_triple_regular(const GPoly& a, const GPoly& b, const GPoly& c);

struct RegularityResult {
    /// The defining identity for the sorted order's {a,b}|{c,d} split.
    bool regular = false;
    /// Bit k set when split k of the sorted quadruple satisfies the
    /// identity: 0 = {a,b}|{c,d}, 1 = {a,c}|{b,d}, 2 = {a,d}|{b,c}.
    unsigned split_mask = 0;
};

/// Purely symbolic test of (a+b-c-d)^2 = (ab+4)(cd+4) on the sorted
/// order, plus the same identity for the other two splits.
RegularityResult is_regular_quadruple(const GPoly& a, const GPoly& b, const GPoly& c,
                                      const GPoly& d);

/// Constructive D(4)-pair (p, p*q^2 + 4q) with witness pq + 2.
std::pair<GPoly, GPoly> pair_family(const GPoly& p, const GPoly& q);

struct LiftResult {
    DTuple lifted;                // {ai, bi, ci} as a verified D(4)-triple
    GPoly d_plus, d_minus;        // corollary extensions over Z[X]
    std::vector<GPoly> d_valid;   // the extensions that give a D(-4;4)-quadruple
    std::vector<GPoly> d_degenerate;  // extensions that duplicate an element or vanish
};

/// Corollary lift: a D(-4)-triple {a,b,c} over Z[X] maps to the D(4)-triple
/// {ai,bi,ci} over Z[i][X]; d = -(a+b+c) + (abc ± r's't')/2 are the only
/// D(-4;4) extensions. Each d is verified (ad+4, bd+4, cd+4 squares in Z[X]).
LiftResult lift_dminus4(const GPoly& a, const GPoly& b, const GPoly& c);

}  // namespace d4
