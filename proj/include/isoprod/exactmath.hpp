#pragma once

// Exact arithmetic: rationals, elements of cyclotomic fields Q(z_N), and
// prime-field scalars used by the character-table engine.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace isoprod
{

class Rational
{
public:
  Rational() = default;
  Rational(long value) : _q(value) {}
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  static Rational parse(std::string_view text);

  mpz_class numerator() const { return _q.get_num(); }
  mpz_class denominator() const { return _q.get_den(); }

  bool is_zero() const { return sgn(_q) == 0; }
  bool is_integer() const { return _q.get_den() == 1; }
  int sign() const { return sgn(_q); }

  // Throws std::domain_error unless the value is an integer fitting in long.
  long to_long() const;

  Rational operator-() const { return Rational(mpq_class(-_q)); }
  Rational &operator+=(Rational const &o) { _q += o._q; return *this; }
  Rational &operator-=(Rational const &o) { _q -= o._q; return *this; }
  Rational &operator*=(Rational const &o) { _q *= o._q; return *this; }
  Rational &operator/=(Rational const &o);

  friend Rational operator+(Rational a, Rational const &b) { return a += b; }
  friend Rational operator-(Rational a, Rational const &b) { return a -= b; }
  friend Rational operator*(Rational a, Rational const &b) { return a *= b; }
  friend Rational operator/(Rational a, Rational const &b) { return a /= b; }

  friend bool operator==(Rational const &a, Rational const &b) { return a._q == b._q; }
  friend std::strong_ordering operator<=>(Rational const &a, Rational const &b)
  {
    int c = cmp(a._q, b._q);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const { return _q.get_str(); }
  mpq_class const &raw() const { return _q; }

private:
  mpq_class _q;
};

std::ostream &operator<<(std::ostream &os, Rational const &q);

// Element of Q(z_N), z_N = exp(2 pi i / N), stored in the power basis
// 1, z, ..., z^(phi(N)-1) modulo the N-th cyclotomic polynomial.  The
// conductor is always the smallest N whose field contains the value, so two
// values are equal iff conductors and coefficient vectors coincide.
class Cyclotomic
{
public:
  Cyclotomic() : _conductor(1), _coeffs(1) {}
  Cyclotomic(long value) : _conductor(1), _coeffs{Rational(value)} {}
  Cyclotomic(Rational value) : _conductor(1), _coeffs{std::move(value)} {}

  // z_n^k.
  static Cyclotomic root_of_unity(long n, long k = 1);

  // Canonical form of sum_k a_k z_n^k; exponents are taken mod n.
  static Cyclotomic from_power_sum(long n, std::span<std::pair<long, Rational> const> terms);
  static Cyclotomic from_power_sum(long n, std::vector<std::pair<long, Rational>> const &terms)
  { return from_power_sum(n, std::span<std::pair<long, Rational> const>(terms)); }

  // Parses "a0 + a1*z(N)^1 - z(7)^3 + ..." (terms may use different N).
  static Cyclotomic parse(std::string_view text);

  long conductor() const { return _conductor; }
  std::vector<Rational> const &coefficients() const { return _coeffs; }

  bool is_zero() const { return _conductor == 1 && _coeffs[0].is_zero(); }
  bool is_rational() const { return _conductor == 1; }
  bool is_real() const;
  // Throws std::domain_error when the value is not rational.
  Rational to_rational() const;

  // Image under z -> z^t; t must be coprime to the conductor.
  Cyclotomic galois(long t) const;
  Cyclotomic conj() const { return galois(-1); }

  Cyclotomic inverse() const;

  Cyclotomic operator-() const;
  friend Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b);
  friend Cyclotomic operator/(Cyclotomic const &a, Cyclotomic const &b) { return a * b.inverse(); }
  Cyclotomic &operator+=(Cyclotomic const &o) { return *this = *this + o; }
  Cyclotomic &operator-=(Cyclotomic const &o) { return *this = *this - o; }
  Cyclotomic &operator*=(Cyclotomic const &o) { return *this = *this * o; }

  friend bool operator==(Cyclotomic const &a, Cyclotomic const &b)
  { return a._conductor == b._conductor && a._coeffs == b._coeffs; }

  // Total order: conductor first, then coefficients lexicographically.
  friend std::strong_ordering operator<=>(Cyclotomic const &a, Cyclotomic const &b);

  std::string to_string() const;

  // Re-expresses the value in Q(z_n); n must be a multiple of the conductor.
  std::vector<Rational> coefficients_in(long n) const;

private:
  Cyclotomic(long n, std::vector<Rational> coeffs);
  void minimize();

  long _conductor;
  std::vector<Rational> _coeffs;
};

std::ostream &operator<<(std::ostream &os, Cyclotomic const &x);

long euler_phi(long n);
std::vector<long> prime_factors(long n);
bool is_prime(std::uint64_t n);

// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<long> cyclotomic_polynomial(long n);

// Arithmetic in F_p for primes below 2^31.
class PrimeField
{
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return _p; }

  std::uint32_t reduce(long long v) const
  {
    long long r = v % static_cast<long long>(_p);
    return static_cast<std::uint32_t>(r < 0 ? r + _p : r);
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const
  { std::uint32_t s = a + b; return s >= _p ? s - _p : s; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const
  { return a >= b ? a - b : a + _p - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
  { return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % _p); }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;

  // Smallest generator of the multiplicative group.
  std::uint32_t primitive_root() const;

private:
  std::uint32_t _p;
};

class PrimeFieldElement
{
public:
  PrimeFieldElement(std::uint32_t p, long long value);

  std::uint32_t modulus() const { return _p; }
  std::uint32_t value() const { return _v; }

  PrimeFieldElement operator+(PrimeFieldElement const &o) const;
  PrimeFieldElement operator-(PrimeFieldElement const &o) const;
  PrimeFieldElement operator*(PrimeFieldElement const &o) const;
  PrimeFieldElement inverse() const;
  friend bool operator==(PrimeFieldElement const &, PrimeFieldElement const &) = default;

private:
  PrimeFieldElement(std::uint32_t p, std::uint32_t v, int) : _p(p), _v(v) {}
  void check_same(PrimeFieldElement const &o) const;

  std::uint32_t _p;
  std::uint32_t _v;
};

} // namespace isoprod
