#pragma once

#include "d4kit/pell.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace d4 {

struct SearchBounds {
    int max_deg = 2;      // element degree cap
    int coeff_bound = 4;  // |re|, |im| cap per coefficient, elements and witnesses
    int depth = 6;        // recurrence depth for lemma audits

    bool valid() const { return max_deg >= 0 && coeff_bound >= 1 && depth >= 1; }
};

struct PairHit {
    GPoly a, b, r;  // a <= b in the canonical order; r the canonical witness
};

/// Optional line sink for coarse progress reporting (one short string per
/// enumeration milestone).
using ProgressFn = std::function<void(const std::string&)>;

/// All D(4)-pairs within bounds: iterate a and the witness r over the
/// coefficient grid and solve b = (r^2 - 4)/a by exact division. Unordered,
/// deduplicated, sorted canonically; pairs of two constants are excluded.
std::vector<PairHit> enumerate_pairs(const SearchBounds& bounds, int jobs = 1,
                                     const ProgressFn& progress = nullptr);

/// Reference oracle: the naive double loop over both element grids.
/// Only intended for small bounds.
std::vector<PairHit> enumerate_pairs_naive(const SearchBounds& bounds);

/// All c within bounds completing {a, b} to a D(4)-triple, via the witness
/// grid for s (c = (s^2 - 4)/a, then bc + 4 must be a square). Sorted.
std::vector<GPoly> extend_all(const GPoly& a, const GPoly& b, const SearchBounds& bounds);

/// Fourth elements d completing the triple: the witness x of ad + 4 runs
/// over the grid, d = (x^2 - 4)/a is NOT coefficient-bounded (only its
/// witness is). Sorted.
std::vector<GPoly> extend_triple_all(const GPoly& a, const GPoly& b, const GPoly& c,
                                     const SearchBounds& bounds);

struct AuditResult {
    long long pairs = 0;
    long long triples = 0;
    long long quadruples = 0;
    std::vector<std::string> violations;  // empty iff the theorem held on the box
    double elapsed_seconds = 0;
    std::uint64_t digest = 0;  // FNV-1a over the canonical corpus lines

    std::vector<DTuple> corpus;  // every verified tuple, sorted canonically
};

/// Full pipeline: pairs -> triples -> quadruples, regularity check and
/// d_+/d_- cross-check on every quadruple. Violations are data, not errors.
AuditResult audit_theorem(const SearchBounds& bounds, int jobs = 1,
                          const ProgressFn& progress = nullptr);

/// Every enumerated triple through every pell-module checker.
LemmaReport audit_lemmas(const SearchBounds& bounds, int jobs = 1,
                         const ProgressFn& progress = nullptr);

/// Write corpus.jsonl (one tuple document per line) and manifest.json
/// (bounds, counts, digest, disclaimer) into out_dir. Returns the manifest.
nlohmann::json write_corpus(const AuditResult& result, const SearchBounds& bounds, int jobs,
                            const std::string& out_dir);

std::uint64_t fnv1a64(const std::string& data, std::uint64_t seed = 14695981039346656037ULL);

}  // namespace d4
