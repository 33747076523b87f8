#include "d4kit/search.hpp"

#include "d4kit/dtuple.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <utility>

namespace d4 {

namespace {

// ---------------------------------------------------------------------------
// int64 fast lane. Elements and witnesses have tiny coefficients, so the hot
// enumeration loops run on plain machine integers; only accepted candidates
// are re-verified with exact big-integer arithmetic.

constexpr int kMaxFastDeg = 4;             // element/witness degree cap of the lane
constexpr int kMaxFastLen = 4 * kMaxFastDeg + 1;  // room for products of quotients
constexpr long long kFastCap = 1'000'000'000'000LL;  // quotient overflow guard

struct GI64 {
    long long re = 0, im = 0;
    bool is_zero() const { return re == 0 && im == 0; }
    friend GI64 operator+(GI64 a, GI64 b) { return {a.re + b.re, a.im + b.im}; }
    friend GI64 operator-(GI64 a, GI64 b) { return {a.re - b.re, a.im - b.im}; }
    friend GI64 operator*(GI64 a, GI64 b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(GI64 a, GI64 b) { return a.re == b.re && a.im == b.im; }
};

bool gi64_div_exact(GI64 n, GI64 d, GI64& q) {
    long long nrm = d.re * d.re + d.im * d.im;
    long long re = n.re * d.re + n.im * d.im;
    long long im = n.im * d.re - n.re * d.im;
    if (re % nrm != 0 || im % nrm != 0) return false;
    q = {re / nrm, im / nrm};
    return true;
}

bool gi64_canonical(GI64 x) { return x.re > 0 || (x.re == 0 && x.im >= 0); }

struct SPoly {
    int deg = -1;  // -1 encodes the zero polynomial
    std::array<GI64, kMaxFastLen> c{};

    GI64 at(int k) const { return k >= 0 && k <= deg ? c[k] : GI64{}; }
};

SPoly to_spoly(const GPoly& p) {
    SPoly out;
    if (p.deg() > kMaxFastDeg)
        throw D4Error(Err::DomainError, "polynomial too large for the search lane");
    out.deg = p.is_zero() ? -1 : p.deg();
    for (int k = 0; k <= out.deg; ++k) {
        const GaussianInt& g = p.coeff(k);
        if (abs(g.re) > kFastCap || abs(g.im) > kFastCap)
            throw D4Error(Err::DomainError, "coefficient too large for the search lane");
        out.c[k] = {static_cast<long long>(g.re), static_cast<long long>(g.im)};
    }
    return out;
}

GPoly to_gpoly(const SPoly& p) {
    std::vector<GaussianInt> cs;
    for (int k = 0; k <= p.deg; ++k) cs.emplace_back(p.c[k].re, p.c[k].im);
    return GPoly(std::move(cs));
}

long long isqrt64(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// gi_sqrt on machine integers; valid while norms fit in int64.
bool gi64_sqrt(GI64 z, GI64& out) {
    long long m = isqrt64(z.re * z.re + z.im * z.im);
    if (m * m != z.re * z.re + z.im * z.im) return false;
    long long a2 = m + z.re, b2 = m - z.re;
    if (a2 % 2 != 0 || b2 % 2 != 0) return false;
    long long a = isqrt64(a2 / 2), b = isqrt64(b2 / 2);
    if (a * a != a2 / 2 || b * b != b2 / 2) return false;
    for (long long bb : {b, -b}) {
        GI64 cand{a, bb};
        if (cand * cand == z) {
            out = gi64_canonical(cand) ? cand : GI64{-cand.re, -cand.im};
            return true;
        }
        cand = {-a, bb};
        if (cand * cand == z) {
            out = gi64_canonical(cand) ? cand : GI64{-cand.re, -cand.im};
            return true;
        }
    }
    return false;
}

/// Cheap necessary conditions for p to be a square in Z[i][X]: even degree,
/// square leading coefficient, square values at X = 0 and X = 1. Survivors
/// still get the exact big-integer poly_sqrt.
bool sp_square_plausible(const SPoly& p) {
    if (p.deg < 0) return true;
    if (p.deg % 2 != 0) return false;
    GI64 h;
    if (!gi64_sqrt(p.c[p.deg], h)) return false;
    GI64 at0 = p.c[0];
    GI64 at1{};
    long long cap = 0;
    for (int k = p.deg; k >= 0; --k) {
        at1 = at1 + p.c[k];
        cap = std::max({cap, std::abs(p.c[k].re), std::abs(p.c[k].im)});
    }
    if (cap > 100'000'000LL) return true;  // evaluation probes could overflow; defer
    return gi64_sqrt(at0, h) && gi64_sqrt(at1, h);
}

/// Witness-driven scan: for a fixed divisor a, every witness w of degree dw
/// with canonical leading coefficient and |re|,|im| <= B such that
/// q = (w^2 - 4)/a is exact in Z[i] (and |q coefficients| <= qcap when
/// qcap > 0). Quotient coefficients are checked as soon as the known top of
/// w determines them, which prunes almost all of the grid near the root.
template <typename Sink>
class QuotientScan {
public:
    QuotientScan(const SPoly& a, const GPoly* a_big, int dw, int B, long long qcap, Sink sink)
        : a_(a), a_big_(a_big), dw_(dw), dq_(2 * dw - a.deg), B_(B), qcap_(qcap),
          sink_(std::move(sink)) {}

    void run() {
        if (dq_ < 0) return;
        choose(dw_, false);
    }

private:
    GI64 pcoeff(int j, int k) const {  // coefficient j of w^2 - 4, top part known
        GI64 acc;
        for (int i = std::max(k, j - dw_); i <= std::min(dw_, j - k); ++i)
            acc = acc + w_[i] * w_[j - i];
        if (j == 0) acc.re -= 4;
        return acc;
    }

    // Returns 0 on reject, 1 on accept, 2 on overflow (stop pruning, verify
    // the full witness with big integers at the bottom).
    int process(int j, int k) {
        GI64 acc = pcoeff(j, k);
        int m = j - a_.deg;
        for (int u = std::max({m + 1, j - a_.deg, 0}); u <= std::min(dq_, j); ++u)
            acc = acc - q_[u] * a_.c[j - u];
        if (m < 0) return acc.is_zero() ? 1 : 0;  // remainder position
        if (!gi64_div_exact(acc, a_.c[a_.deg], q_[m])) return 0;
        if (qcap_ > 0 && (std::abs(q_[m].re) > qcap_ || std::abs(q_[m].im) > qcap_)) return 0;
        if (std::abs(q_[m].re) > kFastCap || std::abs(q_[m].im) > kFastCap) return 2;
        return 1;
    }

    void choose(int k, bool big_mode) {
        for (long long v = 0; v < (2LL * B_ + 1) * (2 * B_ + 1); ++v) {
            GI64 cand{v / (2 * B_ + 1) - B_, v % (2 * B_ + 1) - B_};
            if (k == dw_ && (cand.is_zero() || !gi64_canonical(cand))) continue;
            w_[k] = cand;
            bool next_big = big_mode;
            if (!big_mode) {
                int lo = k == 0 ? 0 : k + dw_;
                int verdict = 1;
                for (int j = k + dw_; j >= lo && verdict == 1; --j) verdict = process(j, k);
                if (verdict == 0) continue;
                if (verdict == 2) next_big = true;
            }
            if (k > 0) {
                choose(k - 1, next_big);
                continue;
            }
            if (!next_big) {
                SPoly q;
                q.deg = dq_;
                for (int m = 0; m <= dq_; ++m) q.c[m] = q_[m];
                sink_(q, current_witness());
            } else if (a_big_) {
                GPoly wp = to_gpoly(current_witness());
                if (auto qq = poly_div_exact(wp * wp - GPoly(4), *a_big_))
                    sink_(to_spoly(*qq), current_witness());
            }
        }
    }

    SPoly current_witness() const {
        SPoly w;
        w.deg = dw_;
        for (int k = 0; k <= dw_; ++k) w.c[k] = w_[k];
        return w;
    }

    const SPoly& a_;
    const GPoly* a_big_;
    int dw_, dq_, B_;
    long long qcap_;
    Sink sink_;
    std::array<GI64, kMaxFastLen> w_{};
    std::array<GI64, kMaxFastLen> q_{};
};

template <typename Sink>
void scan_witness(const SPoly& a, const GPoly* a_big, int dw, int B, long long qcap, Sink sink) {
    QuotientScan<Sink>(a, a_big, dw, B, qcap, std::move(sink)).run();
}

// Grid of polynomials of exact degree d (nonzero leading coefficient).
long long grid_count(int d, int B) {
    long long side2 = (2LL * B + 1) * (2 * B + 1);
    long long total = side2 - 1;
    for (int k = 0; k < d; ++k) total *= side2;
    return total;
}

SPoly grid_decode(long long idx, int d, int B) {
    long long side = 2LL * B + 1, side2 = side * side;
    long long zero_at = B * side + B;
    SPoly p;
    p.deg = d;
    for (int k = 0; k < d; ++k) {
        long long v = idx % side2;
        idx /= side2;
        p.c[k] = {v / side - B, v % side - B};
    }
    long long lead = idx < zero_at ? idx : idx + 1;  // skip the zero coefficient
    p.c[d] = {lead / side - B, lead % side - B};
    return p;
}

std::string pair_key(const GPoly& a, const GPoly& b) { return a.str() + " | " + b.str(); }

void sort_pairs(std::vector<PairHit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const PairHit& x, const PairHit& y) {
        if (poly_less(x.a, y.a)) return true;
        if (poly_less(y.a, x.a)) return false;
        return poly_less(x.b, y.b);
    });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const PairHit& x, const PairHit& y) {
                               return x.a == y.a && x.b == y.b;
                           }),
               hits.end());
}

}  // namespace

std::uint64_t fnv1a64(const std::string& data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<PairHit> enumerate_pairs(const SearchBounds& bounds, int jobs,
                                     const ProgressFn& progress) {
    if (!bounds.valid()) throw D4Error(Err::DomainError, "invalid search bounds");
    if (bounds.max_deg > kMaxFastDeg)
        throw D4Error(Err::DomainError, "max_deg above the search lane limit of 4");
    jobs = std::max(1, jobs);
    const int B = bounds.coeff_bound;

    auto worker = [&](int wid, std::vector<PairHit>& out) {
        for (int da = 0; da <= bounds.max_deg; ++da) {
            for (int db = da; db <= bounds.max_deg; ++db) {
                if (da == 0 && db == 0) continue;  // no two constants
                if ((da + db) % 2 != 0) continue;  // ab + 4 could not be square
                int dw = (da + db) / 2;
                long long n = grid_count(da, B);
                for (long long idx = wid; idx < n; idx += jobs) {
                    SPoly a = grid_decode(idx, da, B);
                    GPoly a_big = to_gpoly(a);
                    scan_witness(a, &a_big, dw, B, B, [&](const SPoly& b, const SPoly& r) {
                        GPoly bb = to_gpoly(b);
                        if (da == db) {
                            if (a_big == bb) return;
                            // each same-degree pair is met from both sides;
                            // keep the sorted orientation only
                            if (poly_less(bb, a_big)) return;
                        }
                        out.push_back({a_big, bb, to_gpoly(r)});
                    });
                }
                if (progress && wid == 0)
                    progress("pairs: scanned degree combo (" + std::to_string(da) + "," +
                             std::to_string(db) + ")");
            }
        }
    };

    std::vector<std::vector<PairHit>> buckets(jobs);
    if (jobs == 1) {
        worker(0, buckets[0]);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w, std::ref(buckets[w]));
        for (auto& t : pool) t.join();
    }

    std::vector<PairHit> hits;
    for (auto& b : buckets) hits.insert(hits.end(), b.begin(), b.end());
    for (auto& h : hits)
        if (poly_less(h.b, h.a)) std::swap(h.a, h.b);
    sort_pairs(hits);
    return hits;
}

std::vector<PairHit> enumerate_pairs_naive(const SearchBounds& bounds) {
    const int B = bounds.coeff_bound;
    long long side2 = (2LL * B + 1) * (2 * B + 1);
    long long total = 1;
    for (int k = 0; k <= bounds.max_deg; ++k) total *= side2;

    std::vector<GPoly> grid;
    for (long long idx = 0; idx < total; ++idx) {
        long long rest = idx;
        std::vector<GaussianInt> cs;
        for (int k = 0; k <= bounds.max_deg; ++k) {
            long long v = rest % side2;
            rest /= side2;
            cs.emplace_back(v / (2 * B + 1) - B, v % (2 * B + 1) - B);
        }
        GPoly p(std::move(cs));
        if (!p.is_zero()) grid.push_back(std::move(p));
    }

    std::vector<PairHit> hits;
    GPoly four(4);
    for (size_t i = 0; i < grid.size(); ++i)
        for (size_t j = i + 1; j < grid.size(); ++j) {
            if (grid[i].is_constant() && grid[j].is_constant()) continue;
            if (auto r = poly_sqrt(grid[i] * grid[j] + four)) {
                PairHit h{grid[i], grid[j], *r};
                if (poly_less(h.b, h.a)) std::swap(h.a, h.b);
                hits.push_back(std::move(h));
            }
        }
    sort_pairs(hits);
    return hits;
}

std::vector<GPoly> extend_all(const GPoly& a, const GPoly& b, const SearchBounds& bounds) {
    SPoly sa = to_spoly(a);
    SPoly sb = to_spoly(b);
    const int B = bounds.coeff_bound;
    GPoly four(4);
    std::vector<GPoly> out;
    for (int ds = (sa.deg + 1) / 2; 2 * ds - sa.deg <= bounds.max_deg; ++ds) {
        scan_witness(sa, &a, ds, B, B, [&](const SPoly& c, const SPoly&) {
            GPoly cc = to_gpoly(c);
            if (cc.is_zero() || cc == a || cc == b) return;
            SPoly prod;
            prod.deg = sb.deg + c.deg;
            for (int i = 0; i <= sb.deg; ++i)
                for (int j = 0; j <= c.deg; ++j) prod.c[i + j] = prod.c[i + j] + sb.c[i] * c.c[j];
            prod.c[0].re += 4;
            if (!sp_square_plausible(prod)) return;
            if (!poly_sqrt(b * cc + four)) return;
            out.push_back(std::move(cc));
        });
    }
    std::sort(out.begin(), out.end(), poly_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<GPoly> extend_triple_all(const GPoly& a, const GPoly& b, const GPoly& c,
                                     const SearchBounds& bounds) {
    SPoly sa = to_spoly(a);
    GPoly four(4);
    std::vector<GPoly> out;
    for (int dx = (sa.deg + 1) / 2; dx <= bounds.max_deg; ++dx) {
        scan_witness(sa, &a, dx, bounds.coeff_bound, /*qcap=*/0,
                     [&](const SPoly& d, const SPoly&) {
                         GPoly dd = to_gpoly(d);
                         if (dd.is_zero() || dd == a || dd == b || dd == c) return;
                         // quick square probes on the two remaining products
                         for (const GPoly* e : {&b, &c}) {
                             SPoly prod = to_spoly(*e);
                             SPoly big;
                             big.deg = prod.deg + d.deg;
                             for (int i = 0; i <= prod.deg; ++i)
                                 for (int j = 0; j <= d.deg; ++j)
                                     big.c[i + j] = big.c[i + j] + prod.c[i] * d.c[j];
                             big.c[0].re += 4;
                             if (!sp_square_plausible(big)) return;
                         }
                         if (!poly_sqrt(b * dd + four) || !poly_sqrt(c * dd + four)) return;
                         out.push_back(std::move(dd));
                     });
    }
    std::sort(out.begin(), out.end(), poly_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::string triple_key(const GPoly& a, const GPoly& b, const GPoly& c) {
    return a.str() + " | " + b.str() + " | " + c.str();
}

struct TripleHit {
    GPoly a, b, c;
};

std::vector<TripleHit> enumerate_triples(const SearchBounds& bounds, int jobs,
                                         const ProgressFn& progress, long long* pair_count) {
    auto pairs = enumerate_pairs(bounds, jobs, progress);
    if (pair_count) *pair_count = static_cast<long long>(pairs.size());
    std::vector<TripleHit> triples;
    std::set<std::string> seen;
    for (const auto& p : pairs) {
        for (auto& c : extend_all(p.a, p.b, bounds)) {
            std::vector<GPoly> e{p.a, p.b, c};
            std::sort(e.begin(), e.end(), poly_less);
            if (seen.insert(triple_key(e[0], e[1], e[2])).second)
                triples.push_back({e[0], e[1], e[2]});
        }
    }
    if (progress) progress("triples: " + std::to_string(triples.size()));
    return triples;
}

}  // namespace

AuditResult audit_theorem(const SearchBounds& bounds, int jobs, const ProgressFn& progress) {
    auto t0 = std::chrono::steady_clock::now();
    AuditResult res;

    auto pairs = enumerate_pairs(bounds, jobs, progress);
    res.pairs = static_cast<long long>(pairs.size());
    for (const auto& p : pairs) res.corpus.push_back(verify_dtuple({p.a, p.b}, GaussianInt(4)));

    std::set<std::string> seen_triple, seen_quad;
    std::vector<TripleHit> triples;
    for (const auto& p : pairs)
        for (auto& c : extend_all(p.a, p.b, bounds)) {
            std::vector<GPoly> e{p.a, p.b, c};
            std::sort(e.begin(), e.end(), poly_less);
            if (seen_triple.insert(triple_key(e[0], e[1], e[2])).second)
                triples.push_back({e[0], e[1], e[2]});
        }
    res.triples = static_cast<long long>(triples.size());
    if (progress) progress("triples: " + std::to_string(res.triples));
    for (const auto& t : triples)
        res.corpus.push_back(verify_dtuple({t.a, t.b, t.c}, GaussianInt(4)));

    for (const auto& t : triples) {
        for (auto& d : extend_triple_all(t.a, t.b, t.c, bounds)) {
            std::vector<GPoly> e{t.a, t.b, t.c, d};
            std::sort(e.begin(), e.end(), poly_less);
            if (!seen_quad.insert(triple_key(e[0], e[1], e[2]) + " | " + e[3].str()).second)
                continue;
            ++res.quadruples;
            res.corpus.push_back(verify_dtuple(e, GaussianInt(4)));

            RegularityResult reg = is_regular_quadruple(e[0], e[1], e[2], e[3]);
            TripleExtension ext = extend_triple_regular(e[0], e[1], e[2]);
            bool is_ext = e[3] == ext.d_plus || e[3] == ext.d_minus;
            if (!reg.regular)
                res.violations.push_back("irregular quadruple: " +
                                         triple_key(e[0], e[1], e[2]) + " | " + e[3].str());
            else if (!is_ext)
                res.violations.push_back("regular quadruple whose top element is not d_+/d_-: " +
                                         triple_key(e[0], e[1], e[2]) + " | " + e[3].str());
        }
    }
    if (progress) progress("quadruples: " + std::to_string(res.quadruples));

    std::vector<std::string> lines;
    lines.reserve(res.corpus.size());
    for (const auto& t : res.corpus) lines.push_back(t.to_json().dump());
    std::sort(lines.begin(), lines.end());
    std::uint64_t h = fnv1a64("");
    for (const auto& ln : lines) h = fnv1a64(ln + "\n", h);
    res.digest = h;

    res.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

LemmaReport audit_lemmas(const SearchBounds& bounds, int jobs, const ProgressFn& progress) {
    auto triples = enumerate_triples(bounds, jobs, progress, nullptr);
    LemmaReport report;
    std::mutex mu;
    std::atomic<size_t> next{0};
    jobs = std::max(1, jobs);

    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < triples.size(); i = next.fetch_add(1)) {
            const auto& t = triples[i];
            PellSystem sys = build_system(verify_dtuple({t.a, t.b, t.c}, GaussianInt(4)));
            LemmaReport part = audit_triple(sys, bounds.depth, triple_key(t.a, t.b, t.c));
            std::lock_guard<std::mutex> lock(mu);
            report.insert(report.end(), part.begin(), part.end());
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    // deterministic order regardless of worker interleaving
    std::stable_sort(report.begin(), report.end(), [](const LemmaCheck& x, const LemmaCheck& y) {
        return std::tie(x.instance_id, x.lemma_id, x.detail) <
               std::tie(y.instance_id, y.lemma_id, y.detail);
    });
    return report;
}

nlohmann::json write_corpus(const AuditResult& result, const SearchBounds& bounds, int jobs,
                            const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);

    std::vector<std::string> lines;
    lines.reserve(result.corpus.size());
    for (const auto& t : result.corpus) lines.push_back(t.to_json().dump());
    std::sort(lines.begin(), lines.end());

    std::ofstream corpus(std::filesystem::path(out_dir) / "corpus.jsonl");
    for (const auto& ln : lines) corpus << ln << "\n";

    char digest_hex[32];
    std::snprintf(digest_hex, sizeof digest_hex, "%016llx",
                  static_cast<unsigned long long>(result.digest));
    nlohmann::json manifest{
        {"bounds",
         {{"max_deg", bounds.max_deg},
          {"coeff_bound", bounds.coeff_bound},
          {"depth", bounds.depth}}},
        {"jobs", jobs},
        {"counts",
         {{"pairs", result.pairs},
          {"triples", result.triples},
          {"quadruples", result.quadruples}}},
        {"violations", result.violations},
        {"digest", std::string(digest_hex)},
        {"elapsed_seconds", result.elapsed_seconds},
        {"disclaimer",
         "Bounded empirical audit: elements and witnesses were enumerated over a finite "
         "degree/coefficient box. The result is evidence for the theorem on this box only; "
         "no finite search can prove the unbounded statement."},
    };
    std::ofstream mf(std::filesystem::path(out_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";
    return manifest;
}

}  // namespace d4
