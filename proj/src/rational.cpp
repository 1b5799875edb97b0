#include "icfb/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace icfb {

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

std::int64_t add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("rational arithmetic overflow");
    return r;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b)
{
    return Rational(add(mul(a.num_, b.den_), mul(b.num_, a.den_)), mul(a.den_, b.den_));
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + (-b);
}

Rational operator*(const Rational& a, const Rational& b)
{
    return Rational(mul(a.num_, b.num_), mul(a.den_, b.den_));
}

Rational operator/(const Rational& a, const Rational& b)
{
    if (b.num_ == 0)
        throw std::domain_error("rational division by zero");
    return Rational(mul(a.num_, b.den_), mul(a.den_, b.num_));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    return mul(a.num_, b.den_) <=> mul(b.num_, a.den_);
}

} // namespace icfb
