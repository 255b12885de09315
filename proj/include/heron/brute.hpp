#pragma once

// Reference decision procedure: depth-first lifting of primitive tuples
// modulo l, l^2, ... with no use of the torsor's structure. Slow, and only
// meant for small l, where it cross-checks the refinement solver.

#include "heron/localsolve.hpp"

namespace heron {

namespace detail {

inline boost::multiprecision::uint256_t to_u256(u128 x) {
  boost::multiprecision::uint256_t r = uint64_t(x >> 64);
  r <<= 64;
  return r + uint64_t(x);
}

inline u128 from_u256(const boost::multiprecision::uint256_t& x) {
  return (u128(uint64_t(x >> 64)) << 64) | uint64_t(x & UINT64_MAX);
}

inline u128 big_residue(const BigInt& a, u128 m) {
  BigInt r = mod_floor(a, to_big(i128(m)));
  return (u128(uint64_t(r >> 64)) << 64) | uint64_t(r & UINT64_MAX);
}

}  // namespace detail

struct BruteLimits {
  uint64_t max_nodes = 2'000'000;
};

inline LocalVerdict brute_oracle(const HomogeneousSpace& h, uint64_t l, int depth, BruteLimits limits = {}) {
  if (l < 2 || l > 1000 || !is_prime(l)) throw Error(Errc::InvalidArgument, "brute oracle needs a prime l <= 1000");
  if (depth < 1) throw Error(Errc::InvalidArgument, "depth must be positive");
  LocalVerdict verdict;
  verdict.place = Place::prime(l);

  // Residues are kept modulo l^(top+1) < 2^124; products go through 256 bits.
  using u256 = boost::multiprecision::uint256_t;
  int top = 0;
  u128 M = l;
  while (M * l < (u128(1) << 124) && top < depth) {
    M *= l;
    ++top;
  }
  const u128 mod = M;
  const u256 mod256 = detail::to_u256(mod);
  const bool clamped = top < depth;
  (void)mod256;
  auto mulm = [&](u128 a, u128 b, u128 md) {
    if (md < (u128(1) << 63)) return a * b % md;
    return detail::from_u256(detail::to_u256(a) * detail::to_u256(b) % detail::to_u256(md));
  };

  // Lifting runs on each form divided by its l-content (same zero set);
  // certification still uses the minors of the original forms.
  auto reduced = [&](const DiagonalForm& f) {
    int content = kInfVal;
    for (auto& c : f.coef) content = std::min(content, vl(c, l));
    BigInt lc = ipow(l, content);
    std::array<u128, 4> r;
    for (int i = 0; i < 4; ++i) r[i] = detail::big_residue(f.coef[i] / lc, mod);
    return r;
  };
  const std::array<u128, 4> c1 = reduced(h.q1), c2 = reduced(h.q2);
  std::array<std::array<int, 4>, 4> vdet{};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      vdet[i][j] = vl(h.q1.coef[i] * h.q2.coef[j] - h.q1.coef[j] * h.q2.coef[i], l);
  const int v4 = l == 2 ? 2 : 0;
  std::vector<u128> lpow(top + 2, 1);
  for (int k = 1; k <= top + 1; ++k) lpow[k] = lpow[k - 1] * l;

  auto vval = [&](u128 x) {
    if (x == 0) return kInfVal;
    int c = 0;
    while (x % l == 0) {
      x /= l;
      ++c;
    }
    return c;
  };
  // Q1, Q2 at x modulo md, a power of l dividing mod.
  auto forms = [&](const std::array<u128, 4>& x, u128& f1, u128& f2, u128 md) {
    f1 = f2 = 0;
    for (int i = 0; i < 4; ++i) {
      u128 xi = x[i] % md;
      u128 s = mulm(xi, xi, md);
      f1 = (f1 + mulm(c1[i] % md, s, md)) % md;
      f2 = (f2 + mulm(c2[i] % md, s, md)) % md;
    }
  };
  auto minor_val = [&](const std::array<u128, 4>& x) {
    int vx[4];
    for (int i = 0; i < 4; ++i) vx[i] = vval(x[i]);
    int best = kInfVal;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        if (vx[i] == kInfVal || vx[j] == kInfVal || vdet[i][j] == kInfVal) continue;
        best = std::min(best, v4 + vx[i] + vx[j] + vdet[i][j]);
      }
    return best;
  };

  struct Node {
    std::array<u128, 4> x;
    int k;
    int pivot;
  };
  std::vector<Node> stack;
  // Level one: tuples mod l normalised so the first unit coordinate is 1.
  for (int piv = 3; piv >= 0; --piv) {
    int free = 3 - piv;
    uint64_t count = 1;
    for (int i = 0; i < free; ++i) count *= l;
    for (uint64_t idx = count; idx-- > 0;) {
      std::array<u128, 4> x{};
      x[piv] = 1;
      uint64_t t = idx;
      for (int i = 3; i > piv; --i) {
        x[i] = t % l;
        t /= l;
      }
      u128 f1, f2;
      forms(x, f1, f2, l);
      if (f1 == 0 && f2 == 0) stack.push_back({x, 1, piv});
    }
  }

  uint64_t nodes = 0;
  bool cut = false;
  int reached = 1;
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (++nodes > limits.max_nodes) {
      cut = true;
      break;
    }
    reached = std::max(reached, nd.k);
    int e = minor_val(nd.x);
    if (e != kInfVal && nd.k >= 2 * e + 1) {
      Point4 p;
      for (int i = 0; i < 4; ++i) p[i] = to_big(i128(nd.x[i]));
      verdict.status = Status::Solvable;
      verdict.point = PointCertificate{l, nd.k, e, p, "brute"};
      return verdict;
    }
    if (nd.k >= top) {
      cut = true;
      continue;
    }
    const u128 step = lpow[nd.k], next = lpow[nd.k + 1];
    std::vector<Node> kids;
    auto try_child = [&](const uint64_t* y) {
      std::array<u128, 4> x = nd.x;
      for (int i = 0; i < 4; ++i) x[i] += step * y[i];
      u128 f1, f2;
      forms(x, f1, f2, next);
      if (f1 == 0 && f2 == 0) kids.push_back({x, nd.k + 1, nd.pivot});
    };
    if (l == 2) {
      for (uint64_t idx = 0; idx < 8; ++idx) {
        uint64_t y[4] = {0, 0, 0, 0};
        uint64_t t = idx;
        for (int i = 3; i >= 0; --i) {
          if (i == nd.pivot) continue;
          y[i] = t & 1;
          t >>= 1;
        }
        try_child(y);
      }
    } else {
      // For k >= 1, Q(x + l^k y) = Q(x) + l^k grad Q(x).y mod l^(k+1), so the
      // surviving y form the solutions of a 2x3 linear system mod l.
      u128 f1, f2;
      forms(nd.x, f1, f2, next);
      uint64_t a[2] = {uint64_t(f1 / step % l), uint64_t(f2 / step % l)};
      uint64_t g[2][4];
      for (int i = 0; i < 4; ++i) {
        uint64_t xi = uint64_t(nd.x[i] % l);
        g[0][i] = mulmod(mulmod(2, uint64_t(c1[i] % l), l), xi, l);
        g[1][i] = mulmod(mulmod(2, uint64_t(c2[i] % l), l), xi, l);
      }
      int fr[3], nf = 0;
      for (int i = 0; i < 4; ++i)
        if (i != nd.pivot) fr[nf++] = i;
      // Rows [coefficients of the three free coordinates | right-hand side].
      uint64_t R[2][4];
      for (int e = 0; e < 2; ++e) {
        for (int j = 0; j < 3; ++j) R[e][j] = g[e][fr[j]];
        R[e][3] = a[e] ? l - a[e] : 0;
      }
      int pivcol[2], rank = 0;
      for (int col = 0; col < 3 && rank < 2; ++col) {
        int row = -1;
        for (int e = rank; e < 2; ++e)
          if (R[e][col]) row = e;
        if (row < 0) continue;
        std::swap(R[row], R[rank]);
        uint64_t inv = powmod(R[rank][col], l - 2, l);
        for (int j = 0; j < 4; ++j) R[rank][j] = mulmod(R[rank][j], inv, l);
        for (int e = 0; e < 2; ++e) {
          if (e == rank || !R[e][col]) continue;
          uint64_t f = R[e][col];
          for (int j = 0; j < 4; ++j) R[e][j] = (R[e][j] + l - mulmod(f, R[rank][j], l)) % l;
        }
        pivcol[rank++] = col;
      }
      bool consistent = true;
      for (int e = rank; e < 2; ++e)
        if (R[e][3]) consistent = false;
      if (consistent) {
        int freecols[3], nfree = 0;
        for (int col = 0; col < 3; ++col)
          if (std::find(pivcol, pivcol + rank, col) == pivcol + rank) freecols[nfree++] = col;
        uint64_t combos = 1;
        for (int i = 0; i < nfree; ++i) combos *= l;
        for (uint64_t idx = 0; idx < combos; ++idx) {
          uint64_t z[3] = {0, 0, 0};
          uint64_t t = idx;
          for (int i = nfree - 1; i >= 0; --i) {
            z[freecols[i]] = t % l;
            t /= l;
          }
          for (int e = 0; e < rank; ++e) {
            uint64_t v = R[e][3];
            for (int i = 0; i < nfree; ++i) v = (v + l - mulmod(R[e][freecols[i]], z[freecols[i]], l)) % l;
            z[pivcol[e]] = v;
          }
          uint64_t y[4] = {0, 0, 0, 0};
          for (int j = 0; j < 3; ++j) y[fr[j]] = z[j];
          try_child(y);
        }
      }
    }
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }

  if (cut) {
    verdict.status = Status::Undecided;
    verdict.note = clamped ? "depth clamped to " + std::to_string(top) : "depth or node budget exhausted";
    return verdict;
  }
  verdict.status = Status::Insolvable;
  Refutation r;
  r.criterion = "exhaustive";
  r.depth = reached + 1;
  r.balls = nodes;
  verdict.refutation = r;
  return verdict;
}

}  // namespace heron
