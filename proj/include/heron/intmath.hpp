#pragma once

// Integer primitives: checked 128-bit arithmetic, Jacobi symbols, l-adic
// valuations, primality, modular square roots and square-free factorisation.

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "heron/error.hpp"

namespace heron {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using i128 = __int128;
using u128 = unsigned __int128;

inline constexpr int kInfVal = INT_MAX;

inline std::optional<i128> checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline std::optional<i128> checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

inline BigInt to_big(i128 x) {
  bool neg = x < 0;
  u128 u = neg ? u128(0) - u128(x) : u128(x);
  BigInt r = BigInt(uint64_t(u >> 64));
  r <<= 64;
  r += uint64_t(u);
  return neg ? BigInt(-r) : r;
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return uint64_t(u128(a) * b % m);
}

inline uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

/// Non-negative residue of a mod m.
inline uint64_t residue(const BigInt& a, uint64_t m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r.convert_to<uint64_t>();
}

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all 64-bit inputs.
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline int jacobi(uint64_t a, uint64_t n) {
  if (n == 0 || (n & 1) == 0) throw Error(Errc::InvalidArgument, "jacobi modulus must be odd and positive");
  a %= n;
  int t = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      uint64_t r = n & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

inline int jacobi(const BigInt& a, const BigInt& n) {
  if (n <= 0 || (n & 1) == 0) throw Error(Errc::InvalidArgument, "jacobi modulus must be odd and positive");
  if (n <= BigInt(UINT64_MAX)) {
    uint64_t nn = n.convert_to<uint64_t>();
    return jacobi(residue(a, nn), nn);
  }
  BigInt x = mod_floor(a, n), y = n;
  int t = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      int r = int(y % 8);
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) t = -t;
    x %= y;
  }
  return y == 1 ? t : 0;
}

/// Legendre symbol of a modulo an odd prime l.
inline int legendre(const BigInt& a, uint64_t l) { return jacobi(residue(a, l), l); }

template <class T>
struct Valuation {
  int exponent;
  T unit;
  bool operator==(const Valuation&) const = default;
};

/// Exponent of l in x, kInfVal for zero.
inline int vl(const BigInt& x, uint64_t l) {
  if (x == 0) return kInfVal;
  if (l == 2) return int(boost::multiprecision::lsb(boost::multiprecision::abs(x)));
  int c = 0;
  BigInt y = x, q, r;
  for (;;) {
    boost::multiprecision::divide_qr(y, BigInt(l), q, r);
    if (r != 0) return c;
    y.swap(q);
    ++c;
  }
}

inline Valuation<BigInt> valuation(const BigInt& x, uint64_t l) {
  if (l < 2) throw Error(Errc::InvalidArgument, "valuation base must be at least 2");
  if (x == 0) throw Error(Errc::InfiniteValuation, "valuation of zero");
  int e = vl(x, l);
  BigInt u = x;
  for (int i = 0; i < e; ++i) u /= l;
  return {e, u};
}

inline Valuation<BigRational> valuation(const BigRational& x, uint64_t l) {
  if (x == 0) throw Error(Errc::InfiniteValuation, "valuation of zero");
  auto a = valuation(BigInt(boost::multiprecision::numerator(x)), l);
  auto b = valuation(BigInt(boost::multiprecision::denominator(x)), l);
  return {a.exponent - b.exponent, BigRational(a.unit, b.unit)};
}

inline BigInt ipow(uint64_t base, int e) {
  BigInt r = 1;
  BigInt b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// A square root of a modulo the prime l, when one exists.
inline std::optional<uint64_t> sqrt_mod(uint64_t a, uint64_t l) {
  a %= l;
  if (l == 2 || a == 0) return a;
  if (powmod(a, (l - 1) / 2, l) != 1) return std::nullopt;
  if (l % 4 == 3) return powmod(a, (l + 1) / 4, l);
  uint64_t q = l - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  uint64_t z = 2;
  while (powmod(z, (l - 1) / 2, l) != l - 1) ++z;
  uint64_t c = powmod(z, q, l), x = powmod(a, (q + 1) / 2, l), t = powmod(a, q, l);
  int mm = s;
  while (t != 1) {
    int i = 0;
    uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, l);
      ++i;
    }
    uint64_t b = c;
    for (int j = 0; j < mm - i - 1; ++j) b = mulmod(b, b, l);
    x = mulmod(x, b, l);
    c = mulmod(b, b, l);
    t = mulmod(t, c, l);
    mm = i;
  }
  return x;
}

inline std::optional<uint64_t> sqrt_mod(const BigInt& a, uint64_t l) { return sqrt_mod(residue(a, l), l); }

inline uint64_t isqrt(u128 x) {
  if (x == 0) return 0;
  uint64_t r = uint64_t(std::sqrt((long double)x));
  while (u128(r) * r > x) --r;
  while (u128(r + 1) * (r + 1) <= x) ++r;
  return r;
}

inline std::optional<BigInt> exact_sqrt(const BigInt& x) {
  if (x < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(x);
  if (r * r == x) return r;
  return std::nullopt;
}

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

inline uint64_t gcd64(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline uint64_t pollard_brent(uint64_t n) {
  if (n % 2 == 0) return 2;
  uint64_t state = n;
  for (;;) {
    uint64_t y = splitmix64(state) % n, c = splitmix64(state) % (n - 1) + 1;
    uint64_t m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
    while (g == 1) {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd64(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = gcd64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factors with multiplicity, ascending.
inline std::vector<uint64_t> factor(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p < 1000 && p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Distinct prime factors of an odd square-free n >= 1.
inline std::vector<uint64_t> factor_squarefree(uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "n must be positive");
  if (n % 2 == 0) throw Error(Errc::NotOdd, std::to_string(n) + " is even");
  auto f = factor(n);
  if (std::adjacent_find(f.begin(), f.end()) != f.end())
    throw Error(Errc::NotSquareFree, std::to_string(n) + " is not square-free");
  return f;
}

inline std::string to_string(const BigInt& x) { return x.str(); }

}  // namespace heron
