#include "osarr/integer.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace osarr {

Integer& Integer::assign(const mpz_class& v) {
  if (mpz_fits_slong_p(v.get_mpz_t())) {
    small_ = mpz_get_si(v.get_mpz_t());
    big_.reset();
  } else if (big_) {
    *big_ = v;
  } else {
    big_ = std::make_unique<mpz_class>(v);
  }
  return *this;
}

Integer Integer::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(mpz_class(s, 10));
}

std::string Integer::to_string() const {
  if (big_) return big_->get_str(10);
  return std::to_string(small_);
}

std::uint64_t Integer::mod_u64(std::uint64_t m) const {
  if (!big_) {
    std::int64_t r = small_ % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
  }
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), big_->get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_ui();
}

Integer operator/(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (!(a.small_value() == std::numeric_limits<std::int64_t>::min() && b.small_value() == -1)) {
      return Integer(static_cast<long long>(a.small_value() / b.small_value()));
    }
  }
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer operator%(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small()) {
    if (b.small_value() == -1) return Integer(0);
    return Integer(static_cast<long long>(a.small_value() % b.small_value()));
  }
  mpz_class r;
  mpz_tdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.to_string(); }

Integer abs(const Integer& v) { return v.sign() < 0 ? -v : v; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    std::int64_t x = a.small_value(), y = b.small_value();
    if (x != std::numeric_limits<std::int64_t>::min() && y != std::numeric_limits<std::int64_t>::min()) {
      x = x < 0 ? -x : x;
      y = y < 0 ? -y : y;
      while (y != 0) {
        std::int64_t t = x % y;
        x = y;
        y = t;
      }
      return Integer(static_cast<long long>(x));
    }
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(g);
}

std::tuple<Integer, Integer, Integer> extended_gcd(const Integer& a, const Integer& b) {
  mpz_class g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.to_mpz().get_mpz_t(),
             b.to_mpz().get_mpz_t());
  return {Integer(g), Integer(s), Integer(t)};
}

Integer div_exact(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && b.small_value() != -1) {
    return Integer(static_cast<long long>(a.small_value() / b.small_value()));
  }
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(q);
}

Integer floor_mod(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.is_small() && b.is_small() && b.small_value() > 0) {
    std::int64_t r = a.small_value() % b.small_value();
    if (r < 0) r += b.small_value();
    return Integer(static_cast<long long>(r));
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
  return Integer(r);
}

bool divides(const Integer& d, const Integer& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

}  // namespace osarr
