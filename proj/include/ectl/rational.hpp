#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>

#include "ectl/errors.hpp"

namespace ectl {

// All exact scalar arithmetic runs on GMP-backed rationals: always in lowest
// terms, denominator positive, no rounding anywhere.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Parses "p", "-p", or "p/q" (q > 0 after normalization).  Rejects anything
// else, including a zero denominator.
Rational parse_rational(const std::string& s);

// Canonical text form: "p" or "p/q" with q > 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Closed interval with exact rational endpoints.  Interval arithmetic here is
// outward-exact: endpoint operations are themselves exact rationals, so the
// result always contains the true value of the operation on any members.
class RatInterval {
  public:
    RatInterval() : lo_(0), hi_(0) {}
    RatInterval(const Rational& point) : lo_(point), hi_(point) {}
    RatInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw InternalError("RatInterval: lo > hi");
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / 2; }
    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return sign(lo_) <= 0 && sign(hi_) >= 0; }
    bool intersects(const RatInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    // Sign certified from the enclosure alone: +1/-1 when the interval is
    // strictly one-signed, 0 when it is exactly {0}, nullopt when it straddles
    // zero without being a point (not certifiable at this width).
    std::optional<int> certified_sign() const {
        if (sign(lo_) > 0) return 1;
        if (sign(hi_) < 0) return -1;
        if (is_point()) return 0;
        return std::nullopt;
    }

    RatInterval operator-() const { return RatInterval(-hi_, -lo_); }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return RatInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);
    // Requires 0 not in b (certified); throws InternalError otherwise.
    friend RatInterval operator/(const RatInterval& a, const RatInterval& b);

    friend bool operator==(const RatInterval& a, const RatInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

  private:
    Rational lo_, hi_;
};

std::string to_string(const RatInterval& iv);

}  // namespace ectl
