#include "d4kit/gint.hpp"

namespace d4 {

std::optional<Int> isqrt_exact(const Int& n) {
    if (n < 0) return std::nullopt;
    Int r = sqrt(n);
    if (r * r != n) return std::nullopt;
    return r;
}

std::string GaussianInt::str() const {
    if (im == 0) return re.str();
    std::string i_part = (im == 1) ? "i" : (im == -1) ? "-i" : im.str() + "i";
    if (re == 0) return i_part;
    return re.str() + (im > 0 ? "+" : "") + i_part;
}

std::optional<GaussianInt> gi_div_exact(const GaussianInt& a, const GaussianInt& b) {
    if (b.is_zero()) throw D4Error(Err::DomainError, "gi_div_exact: division by zero");
    Int n = b.norm();
    GaussianInt t = a * b.conj();
    if (t.re % n != 0 || t.im % n != 0) return std::nullopt;
    return GaussianInt{t.re / n, t.im / n};
}

bool gi_is_canonical(const GaussianInt& x) {
    return x.re > 0 || (x.re == 0 && x.im >= 0);
}

std::optional<GaussianInt> gi_sqrt(const GaussianInt& z) {
    if (z.is_zero()) return GaussianInt{};
    auto m = isqrt_exact(z.norm());
    if (!m) return std::nullopt;
    Int two_a2 = *m + z.re;
    Int two_b2 = *m - z.re;
    if (two_a2 % 2 != 0 || two_b2 % 2 != 0) return std::nullopt;
    auto a = isqrt_exact(two_a2 / 2);
    auto b = isqrt_exact(two_b2 / 2);
    if (!a || !b) return std::nullopt;
    // sign(im(x)) fixed by 2ab = im(z); try both and keep the one that squares back
    const Int neg_b = -*b;
    for (const Int& bi : {*b, neg_b}) {
        GaussianInt x{*a, bi};
        if (x * x == z) return gi_is_canonical(x) ? x : -x;
    }
    return std::nullopt;
}

}  // namespace d4
