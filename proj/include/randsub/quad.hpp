#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(delta)).
//
// A QuadNumber is p + q*sqrt(delta) with rational p, q and a fixed
// square-free delta >= 0.  delta == 0 encodes a plain rational (q unused,
// kept 0).  Signs and comparisons are exact; nothing here rounds.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "randsub/core.hpp"

namespace randsub {

using BigRat = boost::multiprecision::cpp_rational;

struct FieldMismatch : Error {
    FieldMismatch() : Error("quadratic numbers live in different fields") {}
};

inline std::int64_t square_free_part(std::int64_t n, std::int64_t* square = nullptr) {
    if (n < 0) throw Error("square_free_part of a negative number");
    std::int64_t sq = 1, rest = n;
    for (std::int64_t p = 2; p * p <= rest; ++p)
        while (rest % (p * p) == 0) {
            rest /= p * p;
            sq *= p;
        }
    if (square) *square = sq;
    return rest;
}

class QuadNumber {
public:
    QuadNumber() : delta_(0) {}
    QuadNumber(BigRat rational)  // NOLINT: implicit by design
        : p_(std::move(rational)), delta_(0) {}
    QuadNumber(long n) : p_(n), delta_(0) {}  // NOLINT
    QuadNumber(int n) : p_(n), delta_(0) {}   // NOLINT

    // p + q*sqrt(delta); delta need not be square-free, it is reduced here.
    QuadNumber(BigRat p, BigRat q, std::int64_t delta)
        : p_(std::move(p)), q_(std::move(q)), delta_(delta) {
        std::int64_t sq = 1;
        delta_ = square_free_part(delta, &sq);
        q_ *= sq;
        normalize();
    }

    const BigRat& rational_part() const { return p_; }
    const BigRat& surd_part() const { return q_; }
    std::int64_t delta() const { return delta_; }
    bool is_rational() const { return delta_ == 0 || q_ == 0; }

    friend QuadNumber operator+(const QuadNumber& a, const QuadNumber& b) {
        std::int64_t d = merge_delta(a, b);
        return make(a.p_ + b.p_, a.q_ + b.q_, d);
    }
    friend QuadNumber operator-(const QuadNumber& a, const QuadNumber& b) {
        std::int64_t d = merge_delta(a, b);
        return make(a.p_ - b.p_, a.q_ - b.q_, d);
    }
    QuadNumber operator-() const { return make(-p_, -q_, delta_); }

    friend QuadNumber operator*(const QuadNumber& a, const QuadNumber& b) {
        std::int64_t d = merge_delta(a, b);
        return make(a.p_ * b.p_ + a.q_ * b.q_ * d, a.p_ * b.q_ + a.q_ * b.p_, d);
    }

    friend QuadNumber operator/(const QuadNumber& a, const QuadNumber& b) {
        if (b.is_zero()) throw Error("division by zero");
        std::int64_t d = merge_delta(a, b);
        BigRat norm = b.p_ * b.p_ - b.q_ * b.q_ * d;
        // b * conj(b) = norm is a nonzero rational for square-free d.
        QuadNumber conj = make(b.p_, -b.q_, d);
        QuadNumber num = a * conj;
        return make(num.p_ / norm, num.q_ / norm, d);
    }

    bool is_zero() const { return p_ == 0 && q_ == 0; }

    // Exact sign of p + q*sqrt(delta).
    int sign() const {
        if (q_ == 0) return sgn(p_);
        if (delta_ == 0) return sgn(p_);
        if (p_ == 0) return sgn(q_);
        int sp = sgn(p_), sq = sgn(q_);
        if (sp == sq) return sp;
        // Compare |p| and |q|*sqrt(delta) via squares.
        BigRat lhs = p_ * p_, rhs = q_ * q_ * delta_;
        if (lhs == rhs) return 0;
        return (lhs > rhs) ? sp : sq;
    }

    QuadNumber abs() const { return sign() >= 0 ? *this : -*this; }

    friend bool operator==(const QuadNumber& a, const QuadNumber& b) {
        return (a - b).is_zero();
    }
    friend bool operator<(const QuadNumber& a, const QuadNumber& b) {
        return (a - b).sign() < 0;
    }
    friend bool operator<=(const QuadNumber& a, const QuadNumber& b) {
        return (a - b).sign() <= 0;
    }
    friend bool operator>(const QuadNumber& a, const QuadNumber& b) {
        return b < a;
    }
    friend bool operator>=(const QuadNumber& a, const QuadNumber& b) {
        return b <= a;
    }

    double to_double() const {
        double v = static_cast<double>(p_);
        if (delta_ != 0)
            v += static_cast<double>(q_) *
                 std::sqrt(static_cast<double>(delta_));
        return v;
    }

    std::string str() const {
        std::string out = p_.str();
        if (delta_ != 0 && q_ != 0) {
            BigRat aq = q_ < 0 ? BigRat(-q_) : q_;
            out += (q_ > 0 ? " + " : " - ") + aq.str() + "*sqrt(" +
                   std::to_string(delta_) + ")";
        }
        return out;
    }

private:
    static QuadNumber make(BigRat p, BigRat q, std::int64_t delta) {
        QuadNumber r;
        r.p_ = std::move(p);
        r.q_ = std::move(q);
        r.delta_ = delta;
        r.normalize();
        return r;
    }

    static std::int64_t merge_delta(const QuadNumber& a, const QuadNumber& b) {
        if (a.delta_ == 0 || a.q_ == 0) return (b.q_ == 0) ? 0 : b.delta_;
        if (b.delta_ == 0 || b.q_ == 0) return a.delta_;
        if (a.delta_ != b.delta_) throw FieldMismatch();
        return a.delta_;
    }

    void normalize() {
        if (delta_ == 1) {  // sqrt(1) = 1
            p_ += q_;
            q_ = 0;
            delta_ = 0;
        }
        if (q_ == 0) delta_ = 0;
    }

    static int sgn(const BigRat& r) { return r == 0 ? 0 : (r > 0 ? 1 : -1); }

    BigRat p_, q_;
    std::int64_t delta_ = 0;
};

inline QuadNumber sqrt_of(std::int64_t n) {
    std::int64_t sq = 1;
    std::int64_t rest = square_free_part(n, &sq);
    if (rest == 1) return QuadNumber(BigRat(sq));
    return QuadNumber(BigRat(0), BigRat(sq), rest);
}

}  // namespace randsub
