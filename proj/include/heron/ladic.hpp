#pragma once

// Helpers for l-adic squares on integer representatives.

#include "heron/intmath.hpp"

namespace heron {

inline BigInt strip(const BigInt& x, uint64_t l, int e) {
  BigInt u = x;
  for (int i = 0; i < e; ++i) u /= l;
  return u;
}

/// Whether a nonzero integer is a square in Q_l.
inline bool is_square_qp(const BigInt& x, uint64_t l) {
  int v = vl(x, l);
  if (v & 1) return false;
  BigInt u = strip(x, l, v);
  if (l == 2) return mod_floor(u, 8) == 1;
  return legendre(u, l) == 1;
}

inline BigInt inv_mod(const BigInt& a, const BigInt& mod) {
  BigInt g0 = mod, g1 = mod_floor(a, mod), s0 = 0, s1 = 1;
  while (g1 != 0) {
    BigInt t = g0 / g1;
    BigInt g2 = g0 - t * g1, s2 = s0 - t * s1;
    g0 = g1;
    g1 = g2;
    s0 = s1;
    s1 = s2;
  }
  if (g0 != 1) throw Error(Errc::InvalidArgument, "not invertible");
  return mod_floor(s0, mod);
}

/// r with r^2 = u mod l^prec, for an l-adic unit u that is a square.
inline BigInt sqrt_unit(const BigInt& u, uint64_t l, int prec) {
  if (l == 2) {
    BigInt r = 1;
    for (int k = 3; k < prec; ++k) {
      BigInt mod = BigInt(1) << (k + 1);
      if (mod_floor(r * r - u, mod) != 0) r += BigInt(1) << (k - 1);
    }
    return r;
  }
  auto r0 = sqrt_mod(u, l);
  if (!r0 || *r0 == 0) throw Error(Errc::InvalidArgument, "not a unit square");
  BigInt r = *r0;
  BigInt mod = l;
  int have = 1;
  while (have < prec) {
    have = std::min(2 * have, prec);
    mod = ipow(l, have);
    BigInt f = r * r - u;
    r = mod_floor(r - f * inv_mod(2 * r, mod), mod);
  }
  return r;
}

/// r with r^2 = x mod l^(v(x) + prec), for a nonzero square x of Q_l.
inline BigInt sqrt_ladic(const BigInt& x, uint64_t l, int prec) {
  int v = vl(x, l);
  BigInt u = strip(x, l, v);
  return ipow(l, v / 2) * sqrt_unit(u, l, prec);
}

}  // namespace heron
