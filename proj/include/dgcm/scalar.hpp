#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dgcm {

using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact field element over Q (p == 0) or F_p (p prime). Elements carry their
// characteristic so mixed-field arithmetic faults immediately.
class Scalar {
public:
    Scalar() : p_(0), v_(0) {}
    Scalar(long n, uint32_t p) : p_(p), v_(n) { normalize(); }
    Scalar(BigRat v, uint32_t p) : p_(p), v_(std::move(v)) { normalize(); }

    static Scalar zero(uint32_t p) { return Scalar(0, p); }
    static Scalar one(uint32_t p) { return Scalar(1, p); }
    static Scalar from_string(const std::string& s, uint32_t p) { return Scalar(BigRat(s), p); }

    uint32_t characteristic() const { return p_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    const BigRat& value() const { return v_; }

    Scalar operator-() const { return Scalar(-v_, p_); }
    Scalar operator+(const Scalar& o) const { match(o); return Scalar(v_ + o.v_, p_); }
    Scalar operator-(const Scalar& o) const { match(o); return Scalar(v_ - o.v_, p_); }
    Scalar operator*(const Scalar& o) const { match(o); return Scalar(v_ * o.v_, p_); }
    Scalar operator/(const Scalar& o) const {
        match(o);
        if (o.is_zero()) throw std::domain_error("scalar division by zero");
        if (p_ == 0) return Scalar(v_ / o.v_, p_);
        return *this * o.inverse();
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("scalar inverse of zero");
        if (p_ == 0) return Scalar(1 / v_, p_);
        // extended Euclid on the canonical representative
        int64_t a = static_cast<int64_t>(boost::multiprecision::numerator(v_).convert_to<int64_t>());
        int64_t b = p_, x0 = 1, x1 = 0;
        int64_t aa = a;
        while (b != 0) {
            int64_t q = aa / b;
            int64_t t = aa - q * b; aa = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        return Scalar(x0, p_);
    }

    bool operator==(const Scalar& o) const { match(o); return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // canonical text: "a/b" over Q, representative in [0,p) over F_p
    std::string str() const { return v_.str(); }

private:
    void normalize() {
        if (p_ == 0) return;
        if (boost::multiprecision::denominator(v_) != 1) {
            Scalar num(BigRat(boost::multiprecision::numerator(v_)), p_);
            Scalar den(BigRat(boost::multiprecision::denominator(v_)), p_);
            v_ = (num / den).v_;
            return;
        }
        BigInt n = boost::multiprecision::numerator(v_) % p_;
        if (n < 0) n += p_;
        v_ = BigRat(n);
    }
    void match(const Scalar& o) const {
        if (p_ != o.p_) throw std::logic_error("scalar field mismatch");
    }

    uint32_t p_;
    BigRat v_;
};

} // namespace dgcm
