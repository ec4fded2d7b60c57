#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

#include "gasket/errors.hpp"

namespace gasket {

/// Exact dyadic rational num / 2^exp.  Canonical form has num odd or exp == 0,
/// so equality is plain member comparison.  The numerator is signed; callers
/// that need the [0,1] coordinate range check it where the invariant applies.
class Dyadic {
   public:
    Dyadic() : num_(0), exp_(0) {}
    Dyadic(long v) : num_(v), exp_(0) {}
    Dyadic(mpz_class num, unsigned exp) : num_(std::move(num)), exp_(exp) { reduce(); }

    static Dyadic one_over_pow2(unsigned k) { return Dyadic(1, k); }

    /// Converts an exact rational; throws DomainError unless the denominator
    /// is a power of two.
    static Dyadic from_mpq(const mpq_class& q) {
        mpz_class den = q.get_den();
        mp_bitcnt_t k = mpz_scan1(den.get_mpz_t(), 0);
        mpz_class shifted = den >> k;
        if (shifted != 1) throw DomainError("rational is not dyadic: " + q.get_str());
        return Dyadic(q.get_num(), static_cast<unsigned>(k));
    }

    const mpz_class& numerator() const { return num_; }
    unsigned exponent() const { return exp_; }

    mpq_class to_mpq() const {
        mpq_class q(num_, mpz_class(1) << exp_);
        q.canonicalize();
        return q;
    }

    double to_double() const { return to_mpq().get_d(); }

    bool is_zero() const { return num_ == 0; }
    bool is_one() const { return exp_ == 0 && num_ == 1; }

    Dyadic operator+(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        return Dyadic(scaled(e) + o.scaled(e), e);
    }
    Dyadic operator-(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        return Dyadic(scaled(e) - o.scaled(e), e);
    }
    Dyadic operator-() const { return Dyadic(-num_, exp_); }
    Dyadic operator*(const Dyadic& o) const { return Dyadic(num_ * o.num_, exp_ + o.exp_); }

    /// Value divided by 2^k (exact).
    Dyadic shifted_down(unsigned k) const { return Dyadic(num_, exp_ + k); }
    /// Value times 2^k (exact).
    Dyadic shifted_up(unsigned k) const {
        if (k >= exp_) return Dyadic(num_ << (k - exp_), 0);
        return Dyadic(num_, exp_ - k);
    }

    std::strong_ordering operator<=>(const Dyadic& o) const {
        unsigned e = std::max(exp_, o.exp_);
        mpz_class a = scaled(e), b = o.scaled(e);
        int c = cmp(a, b);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    bool operator==(const Dyadic& o) const { return num_ == o.num_ && exp_ == o.exp_; }

    /// "k/2^m" (or a bare integer when m == 0).
    std::string str() const {
        if (exp_ == 0) return num_.get_str();
        return num_.get_str() + "/2^" + std::to_string(exp_);
    }
    /// Plain fraction "p/q".
    std::string frac_str() const {
        mpq_class q = to_mpq();
        if (q.get_den() == 1) return q.get_num().get_str();
        return q.get_str();
    }

   private:
    mpz_class scaled(unsigned e) const { return num_ << (e - exp_); }

    void reduce() {
        if (num_ == 0) {
            exp_ = 0;
            return;
        }
        mp_bitcnt_t k = mpz_scan1(num_.get_mpz_t(), 0);
        if (k > exp_) k = exp_;
        num_ >>= k;
        exp_ -= static_cast<unsigned>(k);
    }

    mpz_class num_;
    unsigned exp_;
};

}  // namespace gasket
