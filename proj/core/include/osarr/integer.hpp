#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>

#include <gmpxx.h>

namespace osarr {

// Arbitrary-precision integer. Values that fit in int64 are stored inline;
// anything larger spills into a heap-allocated mpz_class. The representation
// is normalized: big_ is non-null iff the value does not fit in int64.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : small_(v) {}
  Integer(long long v) noexcept : small_(v) {}
  explicit Integer(const mpz_class& v) { assign(v); }

  Integer(const Integer& o) : small_(o.small_) {
    if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
  }
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      if (o.big_) {
        big_ = std::make_unique<mpz_class>(*o.big_);
      } else {
        big_.reset();
      }
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  /// Parses an optionally signed decimal literal. Throws std::invalid_argument.
  static Integer parse(std::string_view text);

  bool is_small() const noexcept { return !big_; }
  /// Only meaningful when is_small().
  std::int64_t small_value() const noexcept { return small_; }
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  bool is_one() const noexcept { return !big_ && small_ == 1; }
  bool is_unit() const noexcept { return !big_ && (small_ == 1 || small_ == -1); }
  int sign() const noexcept {
    if (big_) return sgn(*big_);
    return (small_ > 0) - (small_ < 0);
  }
  /// True when |value| < 2^53, i.e. exactly representable as a JSON number.
  bool fits_double_exactly() const noexcept {
    constexpr std::int64_t limit = std::int64_t{1} << 53;
    return !big_ && small_ < limit && small_ > -limit;
  }

  mpz_class to_mpz() const { return big_ ? *big_ : mpz_class(static_cast<long>(small_)); }
  std::string to_string() const;
  /// Residue in [0, m) for a positive machine modulus.
  std::uint64_t mod_u64(std::uint64_t m) const;

  Integer operator-() const {
    Integer r;
    if (!big_ && !__builtin_sub_overflow(std::int64_t{0}, small_, &r.small_)) return r;
    return Integer(mpz_class(-to_mpz()));
  }

  Integer& operator+=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return assign(to_mpz() + o.to_mpz());
  }
  Integer& operator-=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return assign(to_mpz() - o.to_mpz());
  }
  Integer& operator*=(const Integer& o) {
    std::int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
    return assign(to_mpz() * o.to_mpz());
  }
  /// this += a * b
  void add_mul(const Integer& a, const Integer& b) {
    std::int64_t p, s;
    if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_add_overflow(small_, p, &s)) {
      small_ = s;
      return;
    }
    assign(to_mpz() + a.to_mpz() * b.to_mpz());
  }
  /// this -= a * b
  void sub_mul(const Integer& a, const Integer& b) {
    std::int64_t p, s;
    if (!big_ && !a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &p) &&
        !__builtin_sub_overflow(small_, p, &s)) {
      small_ = s;
      return;
    }
    assign(to_mpz() - a.to_mpz() * b.to_mpz());
  }

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

  /// Truncating division (C semantics). Divisor must be nonzero.
  friend Integer operator/(const Integer& a, const Integer& b);
  /// Remainder of truncating division; sign follows the dividend.
  friend Integer operator%(const Integer& a, const Integer& b);

  friend bool operator==(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // normalized: a big value never equals a small one
  }
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Integer& v);

 private:
  Integer& assign(const mpz_class& v);

  std::int64_t small_ = 0;
  std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& v);
/// Non-negative greatest common divisor; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);
/// Returns (g, s, t) with g = gcd(a, b) >= 0 and s*a + t*b = g.
std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b);
/// Exact division; the caller guarantees b | a.
Integer div_exact(const Integer& a, const Integer& b);
/// Floor division and the matching non-negative remainder (for b > 0).
Integer floor_div(const Integer& a, const Integer& b);
Integer floor_mod(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);

}  // namespace osarr
