#include "isoprod/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace isoprod
{

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den)
{
  if (den == 0)
    throw std::domain_error("rational with zero denominator");
  _q = mpq_class(num, den);
  _q.canonicalize();
}

Rational::Rational(mpq_class value) : _q(std::move(value))
{
  _q.canonicalize();
}

Rational &Rational::operator/=(Rational const &o)
{
  if (o.is_zero())
    throw std::domain_error("division by zero");
  _q /= o._q;
  return *this;
}

long Rational::to_long() const
{
  if (!is_integer() || !_q.get_num().fits_slong_p())
    throw std::domain_error("rational " + to_string() + " is not a machine integer");
  return _q.get_num().get_si();
}

Rational Rational::parse(std::string_view text)
{
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty())
    throw std::invalid_argument("empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto digits_ok = [&](std::size_t b, std::size_t e) {
    if (b >= e)
      return false;
    for (std::size_t i = b; i < e; ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        return false;
    return true;
  };
  std::size_t num_end = slash == std::string::npos ? s.size() : slash;
  if (!digits_ok(start, num_end) || (slash != std::string::npos && !digits_ok(slash + 1, s.size())))
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  return Rational(q);
}

std::ostream &operator<<(std::ostream &os, Rational const &q)
{
  return os << q.to_string();
}

// ---------------------------------------------------------- number theory

long euler_phi(long n)
{
  long result = n;
  for (long p : prime_factors(n))
    result = result / p * (p - 1);
  return result;
}

std::vector<long> prime_factors(long n)
{
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    ps.push_back(n);
  return ps;
}

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace
{

int moebius(long n)
{
  int mu = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0)
      continue;
    n /= p;
    if (n % p == 0)
      return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

} // namespace

std::vector<long> cyclotomic_polynomial(long n)
{
  if (n < 1)
    throw std::invalid_argument("cyclotomic polynomial of non-positive index");
  // Phi_n = prod_{d | n} (x^d - 1)^mu(n/d).
  std::vector<long> poly{1};
  std::vector<long> divisors;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0)
      continue;
    int mu = moebius(n / d);
    if (mu == 1) {
      std::vector<long> next(poly.size() + d, 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i + d] += poly[i];
        next[i] -= poly[i];
      }
      poly = std::move(next);
    } else if (mu == -1) {
      divisors.push_back(d);
    }
  }
  for (long d : divisors) {
    // Exact division by x^d - 1, from the top.
    std::vector<long> quot(poly.size() - d, 0);
    for (std::size_t i = poly.size() - 1; i + 1 > static_cast<std::size_t>(d); --i) {
      long c = poly[i];
      quot[i - d] = c;
      poly[i] -= c;
      poly[i - d] += c;
    }
    poly = std::move(quot);
  }
  return poly;
}

// ------------------------------------------------------------- field data

namespace
{

struct FieldData
{
  long n;
  long phi;
  std::vector<long> poly;             // Phi_n, lowest first
  std::vector<std::vector<long>> red; // red[k]: z^k in the power basis, k < n
};

struct DescentData
{
  long big, small;
  std::vector<std::vector<long>> embed; // embed[j] = image of z_small^j in Q(z_big)
  std::vector<std::size_t> pivots;      // rows of embed used for solving
  std::vector<std::vector<Rational>> inv; // inverse of embed restricted to pivots
};

FieldData make_field(long n)
{
  FieldData f;
  f.n = n;
  f.poly = cyclotomic_polynomial(n);
  f.phi = static_cast<long>(f.poly.size()) - 1;
  f.red.assign(n, std::vector<long>(f.phi, 0));
  for (long k = 0; k < n; ++k) {
    if (k < f.phi) {
      f.red[k][k] = 1;
      continue;
    }
    auto const &prev = f.red[k - 1];
    auto &cur = f.red[k];
    long top = prev[f.phi - 1];
    for (long i = f.phi - 1; i > 0; --i)
      cur[i] = prev[i - 1];
    cur[0] = 0;
    for (long i = 0; i < f.phi; ++i)
      cur[i] -= top * f.poly[i];
  }
  return f;
}

std::mutex &cache_mutex()
{
  static std::mutex m;
  return m;
}

FieldData const &field(long n)
{
  static std::map<long, std::unique_ptr<FieldData const>> cache;
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(n);
    if (it != cache.end())
      return *it->second;
  }
  auto built = std::make_unique<FieldData const>(make_field(n));
  std::lock_guard lock(cache_mutex());
  auto [it, inserted] = cache.emplace(n, std::move(built));
  return *it->second;
}

DescentData make_descent(long big, long small)
{
  FieldData const &fb = field(big);
  FieldData const &fs = field(small);
  DescentData d;
  d.big = big;
  d.small = small;
  long step = big / small;
  d.embed.resize(fs.phi);
  for (long j = 0; j < fs.phi; ++j)
    d.embed[j] = fb.red[(j * step) % big];

  // Pick phi(small) independent rows of the phi(big) x phi(small) matrix.
  std::size_t rows = static_cast<std::size_t>(fb.phi), cols = static_cast<std::size_t>(fs.phi);
  std::vector<std::vector<Rational>> work(rows, std::vector<Rational>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      work[r][c] = Rational(d.embed[c][r]);
  std::vector<std::vector<Rational>> reduced; // echelon rows found so far
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < rows && d.pivots.size() < cols; ++r) {
    auto v = work[r];
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (v[lead[i]].is_zero())
        continue;
      Rational f = v[lead[i]];
      for (std::size_t c = 0; c < cols; ++c)
        v[c] -= f * reduced[i][c];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](Rational const &q) { return !q.is_zero(); });
    if (nz == v.end())
      continue;
    std::size_t lc = static_cast<std::size_t>(nz - v.begin());
    Rational f = v[lc];
    for (auto &q : v)
      q /= f;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      if (reduced[i][lc].is_zero())
        continue;
      Rational g = reduced[i][lc];
      for (std::size_t c = 0; c < cols; ++c)
        reduced[i][c] -= g * v[c];
    }
    reduced.push_back(std::move(v));
    lead.push_back(lc);
    d.pivots.push_back(r);
  }
  if (d.pivots.size() != cols)
    throw std::logic_error("cyclotomic embedding is not injective");

  // Invert the square submatrix on the pivot rows by Gauss-Jordan.
  std::vector<std::vector<Rational>> a(cols, std::vector<Rational>(2 * cols));
  for (std::size_t i = 0; i < cols; ++i) {
    for (std::size_t c = 0; c < cols; ++c)
      a[i][c] = work[d.pivots[i]][c];
    a[i][cols + i] = Rational(1);
  }
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = c;
    while (a[p][c].is_zero())
      ++p;
    std::swap(a[p], a[c]);
    Rational f = a[c][c];
    for (auto &q : a[c])
      q /= f;
    for (std::size_t r = 0; r < cols; ++r) {
      if (r == c || a[r][c].is_zero())
        continue;
      Rational g = a[r][c];
      for (std::size_t k = 0; k < 2 * cols; ++k)
        a[r][k] -= g * a[c][k];
    }
  }
  d.inv.assign(cols, std::vector<Rational>(cols));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      d.inv[i][j] = a[i][cols + j];
  return d;
}

DescentData const &descent(long big, long small)
{
  static std::map<std::pair<long, long>, std::unique_ptr<DescentData const>> cache;
  auto key = std::make_pair(big, small);
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(key);
    if (it != cache.end())
      return *it->second;
  }
  auto built = std::make_unique<DescentData const>(make_descent(big, small));
  std::lock_guard lock(cache_mutex());
  auto [it, inserted] = cache.emplace(key, std::move(built));
  return *it->second;
}

long mod(long a, long n)
{
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Reduces a dense power-sum vector (index = exponent mod n) to the basis.
std::vector<Rational> reduce_dense(FieldData const &f, std::vector<Rational> const &dense)
{
  std::vector<Rational> out(f.phi);
  for (long k = 0; k < f.n; ++k) {
    if (dense[k].is_zero())
      continue;
    if (k < f.phi) {
      out[k] += dense[k];
      continue;
    }
    auto const &r = f.red[k];
    for (long i = 0; i < f.phi; ++i)
      if (r[i] != 0)
        out[i] += dense[k] * Rational(r[i]);
  }
  return out;
}

using Poly = std::vector<Rational>;

void trim(Poly &p)
{
  while (!p.empty() && p.back().is_zero())
    p.pop_back();
}

// a = q*b + r
void poly_divmod(Poly a, Poly const &b, Poly &q, Poly &r)
{
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational());
  Rational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] -= f * b[i];
    trim(a);
  }
  r = std::move(a);
}

Poly poly_mul(Poly const &a, Poly const &b)
{
  if (a.empty() || b.empty())
    return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_sub(Poly a, Poly const &b)
{
  if (a.size() < b.size())
    a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  trim(a);
  return a;
}

} // namespace

// ------------------------------------------------------------- Cyclotomic

Cyclotomic::Cyclotomic(long n, std::vector<Rational> coeffs)
  : _conductor(n), _coeffs(std::move(coeffs))
{
  minimize();
}

void Cyclotomic::minimize()
{
  bool rational = std::all_of(_coeffs.begin() + 1, _coeffs.end(),
                              [](Rational const &q) { return q.is_zero(); });
  if (rational) {
    _coeffs.resize(1);
    _conductor = 1;
    return;
  }
  bool progress = true;
  while (progress && _conductor > 1) {
    progress = false;
    for (long p : prime_factors(_conductor)) {
      long small = _conductor / p;
      DescentData const &d = descent(_conductor, small);
      std::size_t cols = d.inv.size();
      std::vector<Rational> b(cols);
      for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (!d.inv[i][j].is_zero())
            b[i] += d.inv[i][j] * _coeffs[d.pivots[j]];
      // Membership holds iff the re-embedded solution reproduces the value.
      bool ok = true;
      for (std::size_t r = 0; r < _coeffs.size() && ok; ++r) {
        Rational acc;
        for (std::size_t j = 0; j < cols; ++j)
          if (d.embed[j][r] != 0)
            acc += b[j] * Rational(d.embed[j][r]);
        ok = acc == _coeffs[r];
      }
      if (ok) {
        _conductor = small;
        _coeffs = std::move(b);
        progress = true;
        break;
      }
    }
  }
  if (_conductor == 1)
    _coeffs.resize(1);
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k)
{
  if (n < 1)
    throw std::invalid_argument("root of unity of non-positive order");
  std::vector<std::pair<long, Rational>> t{{k, Rational(1)}};
  return from_power_sum(n, t);
}

Cyclotomic Cyclotomic::from_power_sum(long n, std::span<std::pair<long, Rational> const> terms)
{
  if (n < 1)
    throw std::invalid_argument("conductor must be positive");
  FieldData const &f = field(n);
  std::vector<Rational> dense(n);
  for (auto const &[k, a] : terms)
    dense[mod(k, n)] += a;
  return Cyclotomic(n, reduce_dense(f, dense));
}

std::vector<Rational> Cyclotomic::coefficients_in(long n) const
{
  if (n % _conductor != 0)
    throw std::invalid_argument("target conductor is not a multiple of the element's conductor");
  if (n == _conductor)
    return _coeffs;
  FieldData const &f = field(n);
  long step = n / _conductor;
  std::vector<Rational> dense(n);
  for (std::size_t k = 0; k < _coeffs.size(); ++k)
    dense[(static_cast<long>(k) * step) % n] += _coeffs[k];
  return reduce_dense(f, dense);
}

bool Cyclotomic::is_real() const
{
  return _conductor <= 2 || galois(-1) == *this;
}

Rational Cyclotomic::to_rational() const
{
  if (!is_rational())
    throw std::domain_error("cyclotomic value " + to_string() + " is not rational");
  return _coeffs[0];
}

Cyclotomic Cyclotomic::galois(long t) const
{
  long n = _conductor;
  if (n == 1)
    return *this;
  if (std::gcd(mod(t, n), n) != 1)
    throw std::invalid_argument("Galois exponent " + std::to_string(t) +
                                " is not coprime to conductor " + std::to_string(n));
  FieldData const &f = field(n);
  std::vector<Rational> dense(n);
  for (std::size_t k = 0; k < _coeffs.size(); ++k)
    if (!_coeffs[k].is_zero())
      dense[mod(static_cast<long>(k) * t, n)] += _coeffs[k];
  Cyclotomic out;
  out._conductor = n;
  out._coeffs = reduce_dense(f, dense);
  return out;
}

Cyclotomic Cyclotomic::operator-() const
{
  Cyclotomic out = *this;
  for (auto &q : out._coeffs)
    q = -q;
  return out;
}

Cyclotomic operator+(Cyclotomic const &a, Cyclotomic const &b)
{
  long n = std::lcm(a._conductor, b._conductor);
  auto x = a.coefficients_in(n);
  auto y = b.coefficients_in(n);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] += y[i];
  return Cyclotomic(n, std::move(x));
}

Cyclotomic operator-(Cyclotomic const &a, Cyclotomic const &b)
{
  return a + (-b);
}

Cyclotomic operator*(Cyclotomic const &a, Cyclotomic const &b)
{
  if (a.is_rational() && b.is_rational())
    return Cyclotomic(a._coeffs[0] * b._coeffs[0]);
  if (a.is_rational() || b.is_rational()) {
    Cyclotomic const &r = a.is_rational() ? a : b;
    Cyclotomic out = a.is_rational() ? b : a;
    if (r.is_zero())
      return Cyclotomic();
    for (auto &q : out._coeffs)
      q *= r._coeffs[0];
    return out;
  }
  long n = std::lcm(a._conductor, b._conductor);
  auto x = a.coefficients_in(n);
  auto y = b.coefficients_in(n);
  FieldData const &f = field(n);
  std::vector<Rational> dense(n);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero())
      continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!y[j].is_zero())
        dense[(i + j) % n] += x[i] * y[j];
  }
  return Cyclotomic(n, reduce_dense(f, dense));
}

Cyclotomic Cyclotomic::inverse() const
{
  if (is_zero())
    throw std::domain_error("inverse of zero");
  if (is_rational())
    return Cyclotomic(Rational(1) / _coeffs[0]);
  // Extended Euclid: find s with s*a = 1 mod Phi_n.
  FieldData const &f = field(_conductor);
  Poly m(f.poly.begin(), f.poly.end());
  Poly a = _coeffs;
  trim(a);
  Poly r0 = m, r1 = a;
  Poly s0{}, s1{Rational(1)};
  while (!(r1.size() == 1)) {
    Poly q, r;
    poly_divmod(r0, r1, q, r);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty())
      throw std::logic_error("cyclotomic polynomial shares a factor with a nonzero element");
  }
  Rational c = r1[0];
  Poly q, rem;
  poly_divmod(s1, m, q, rem);
  std::vector<Rational> coeffs(f.phi);
  for (std::size_t i = 0; i < rem.size(); ++i)
    coeffs[i] = rem[i] / c;
  return Cyclotomic(_conductor, std::move(coeffs));
}

std::strong_ordering operator<=>(Cyclotomic const &a, Cyclotomic const &b)
{
  if (auto c = a._conductor <=> b._conductor; c != 0)
    return c;
  for (std::size_t i = 0; i < a._coeffs.size(); ++i)
    if (auto c = a._coeffs[i] <=> b._coeffs[i]; c != 0)
      return c;
  return std::strong_ordering::equal;
}

std::string Cyclotomic::to_string() const
{
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < _coeffs.size(); ++k) {
    Rational const &c = _coeffs[k];
    if (c.is_zero())
      continue;
    Rational mag = c.sign() < 0 ? -c : c;
    if (first)
      os << (c.sign() < 0 ? "-" : "");
    else
      os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != Rational(1))
      os << mag << '*';
    os << "z(" << _conductor << ")^" << k;
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, Cyclotomic const &x)
{
  return os << x.to_string();
}

namespace
{

class CycloParser
{
public:
  explicit CycloParser(std::string_view s) : _s(s) {}

  Cyclotomic parse()
  {
    skip();
    if (_i >= _s.size())
      fail("empty expression");
    Cyclotomic acc;
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (_i < _s.size() && (_s[_i] == '+' || _s[_i] == '-')) {
        sign = _s[_i] == '-' ? -1 : 1;
        ++_i;
      } else if (!first) {
        break;
      }
      first = false;
      Cyclotomic t = term();
      acc += sign < 0 ? -t : t;
      skip();
      if (_i >= _s.size())
        break;
    }
    skip();
    if (_i != _s.size())
      fail("unexpected character");
    return acc;
  }

private:
  Cyclotomic term()
  {
    Cyclotomic t = factor();
    skip();
    while (_i < _s.size() && _s[_i] == '*') {
      ++_i;
      t *= factor();
      skip();
    }
    return t;
  }

  Cyclotomic factor()
  {
    skip();
    if (_i < _s.size() && _s[_i] == 'z') {
      ++_i;
      expect('(');
      long n = integer(false);
      expect(')');
      long k = 1;
      skip();
      if (_i < _s.size() && _s[_i] == '^') {
        ++_i;
        k = integer(true);
      }
      if (n < 1)
        fail("conductor must be positive");
      return Cyclotomic::root_of_unity(n, k);
    }
    long num = integer(false);
    skip();
    if (_i < _s.size() && _s[_i] == '/') {
      ++_i;
      long den = integer(false);
      if (den == 0)
        fail("zero denominator");
      return Cyclotomic(Rational(num, den));
    }
    return Cyclotomic(num);
  }

  long integer(bool allow_sign)
  {
    skip();
    bool neg = false;
    if (allow_sign && _i < _s.size() && (_s[_i] == '-' || _s[_i] == '+')) {
      neg = _s[_i] == '-';
      ++_i;
    }
    std::size_t start = _i;
    long v = 0;
    while (_i < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_i]))) {
      if (v > (std::numeric_limits<long>::max() - 9) / 10)
        fail("integer literal too large");
      v = v * 10 + (_s[_i] - '0');
      ++_i;
    }
    if (start == _i)
      fail("expected integer");
    return neg ? -v : v;
  }

  void expect(char c)
  {
    skip();
    if (_i >= _s.size() || _s[_i] != c)
      fail(std::string("expected '") + c + "'");
    ++_i;
  }

  void skip()
  {
    while (_i < _s.size() && std::isspace(static_cast<unsigned char>(_s[_i])))
      ++_i;
  }

  [[noreturn]] void fail(std::string const &what) const
  {
    throw std::invalid_argument("cyclotomic parse error at offset " + std::to_string(_i) + ": " +
                                what + " in '" + std::string(_s) + "'");
  }

  std::string_view _s;
  std::size_t _i = 0;
};

} // namespace

Cyclotomic Cyclotomic::parse(std::string_view text)
{
  return CycloParser(text).parse();
}

// ------------------------------------------------------------ prime fields

PrimeField::PrimeField(std::uint32_t p) : _p(p)
{
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const
{
  std::uint64_t result = 1 % _p, base = a % _p;
  while (e) {
    if (e & 1)
      result = result * base % _p;
    base = base * base % _p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
  if (a % _p == 0)
    throw std::domain_error("inverse of zero in F_p");
  return pow(a, _p - 2);
}

std::uint32_t PrimeField::primitive_root() const
{
  if (_p == 2)
    return 1;
  auto qs = prime_factors(static_cast<long>(_p - 1));
  for (std::uint32_t r = 2; r < _p; ++r) {
    bool ok = std::all_of(qs.begin(), qs.end(),
                          [&](long q) { return pow(r, (_p - 1) / q) != 1; });
    if (ok)
      return r;
  }
  throw std::logic_error("no primitive root found");
}

PrimeFieldElement::PrimeFieldElement(std::uint32_t p, long long value)
  : _p(PrimeField(p).modulus()), _v(PrimeField(p).reduce(value))
{}

void PrimeFieldElement::check_same(PrimeFieldElement const &o) const
{
  if (o._p != _p)
    throw std::invalid_argument("mixed prime-field moduli");
}

PrimeFieldElement PrimeFieldElement::operator+(PrimeFieldElement const &o) const
{
  check_same(o);
  std::uint32_t s = _v + o._v;
  return {_p, s >= _p ? s - _p : s, 0};
}

PrimeFieldElement PrimeFieldElement::operator-(PrimeFieldElement const &o) const
{
  check_same(o);
  return {_p, _v >= o._v ? _v - o._v : _v + _p - o._v, 0};
}

PrimeFieldElement PrimeFieldElement::operator*(PrimeFieldElement const &o) const
{
  check_same(o);
  return {_p, static_cast<std::uint32_t>(static_cast<std::uint64_t>(_v) * o._v % _p), 0};
}

PrimeFieldElement PrimeFieldElement::inverse() const
{
  // PrimeField construction re-checks primality; avoid it on the hot path.
  if (_v == 0)
    throw std::domain_error("inverse of zero in F_p");
  std::uint64_t result = 1, base = _v, e = _p - 2;
  while (e) {
    if (e & 1)
      result = result * base % _p;
    base = base * base % _p;
    e >>= 1;
  }
  return {_p, static_cast<std::uint32_t>(result), 0};
}

} // namespace isoprod
