#include "ectl/rational.hpp"

#include <cctype>

namespace ectl {

Rational parse_rational(const std::string& s) {
    // Accept: optional sign, digits, optionally "/" digits (denominator > 0
    // after sign normalization).  Anything else is a parse error.
    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw ParseError("invalid rational literal: '" + s + "'");
    Integer n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
    Rational r(n, d);
    // The two-integer constructor is documented to canonicalize, but make the
    // invariant explicit rather than relying on backend detail.
    mpq_canonicalize(r.backend().data());
    return r;
}

std::string to_string(const Rational& r) { return r.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return RatInterval(std::move(lo), std::move(hi));
}

RatInterval operator/(const RatInterval& a, const RatInterval& b) {
    if (b.contains_zero()) throw InternalError("RatInterval division by interval containing zero");
    Rational p1 = a.lo_ / b.lo_, p2 = a.lo_ / b.hi_, p3 = a.hi_ / b.lo_, p4 = a.hi_ / b.hi_;
    Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
    Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
    return RatInterval(std::move(lo), std::move(hi));
}

std::string to_string(const RatInterval& iv) {
    if (iv.is_point()) return to_string(iv.lo());
    return "[" + to_string(iv.lo()) + ", " + to_string(iv.hi()) + "]";
}

}  // namespace ectl
