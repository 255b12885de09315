#pragma once

// The torsor attached to a pair (b1, b2): the intersection of two diagonal
// quadrics in P^3.
//   Q1 = b1 x1^2 - b2 x2^2 - A x0^2
//   Q2 = b1 x1^2 - b1 b2 x3^2 + B x0^2
//   Q3 = Q2 - Q1 = b2 x2^2 - b1 b2 x3^2 + C x0^2

#include <array>
#include <optional>
#include <string>

#include "heron/curve.hpp"

namespace heron {

using Point4 = std::array<BigInt, 4>;

struct DiagonalForm {
  std::array<BigInt, 4> coef;  // x0, x1, x2, x3

  BigInt operator()(const Point4& x) const {
    BigInt s = 0;
    for (int i = 0; i < 4; ++i) s += coef[i] * x[i] * x[i];
    return s;
  }
  DiagonalForm operator-(const DiagonalForm& o) const {
    DiagonalForm r;
    for (int i = 0; i < 4; ++i) r.coef[i] = coef[i] - o.coef[i];
    return r;
  }
  bool operator==(const DiagonalForm&) const = default;
  std::string str() const {
    std::string s;
    for (int i : {1, 2, 3, 0}) {
      if (coef[i] == 0) continue;
      BigInt c = coef[i];
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      if (abs(c) != 1) s += BigInt(abs(c)).str() + "*";
      s += "x" + std::to_string(i) + "^2";
    }
    return s.empty() ? "0" : s;
  }
};

struct HomogeneousSpace {
  DescentPair pair;
  BigInt b1, b2;
  BigInt A, B, C;
  DiagonalForm q1, q2, q3;
};

inline HomogeneousSpace build(const HeronCurve& c, const DescentPair& pair) {
  HomogeneousSpace h;
  h.pair = pair;
  h.b1 = pair.b1.value();
  h.b2 = pair.b2.value();
  h.A = c.A();
  h.B = c.B();
  h.C = c.C();
  h.q1.coef = {-h.A, h.b1, -h.b2, 0};
  h.q2.coef = {h.B, h.b1, 0, -h.b1 * h.b2};
  h.q3 = h.q2 - h.q1;
  return h;
}

/// (Q1, Q2) at the point, reduced to [0, l^k).
inline std::pair<BigInt, BigInt> evaluate(const HomogeneousSpace& h, const Point4& x, uint64_t l, int k) {
  BigInt mod = ipow(l, k);
  return {mod_floor(h.q1(x), mod), mod_floor(h.q2(x), mod)};
}

inline bool vanishes_mod(const HomogeneousSpace& h, const Point4& x, const BigInt& mod) {
  return h.q1(x) % mod == 0 && h.q2(x) % mod == 0;
}

/// Gradients of Q1 and Q2; row r, column i is d Qr / d x_i = 2 a_i x_i.
struct JacobianMatrix {
  std::array<std::array<BigInt, 4>, 2> rows;
  BigInt minor(int i, int j) const { return rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]; }
};

inline JacobianMatrix jacobian(const HomogeneousSpace& h, const Point4& x) {
  JacobianMatrix J;
  for (int i = 0; i < 4; ++i) {
    J.rows[0][i] = 2 * h.q1.coef[i] * x[i];
    J.rows[1][i] = 2 * h.q2.coef[i] * x[i];
  }
  return J;
}

/// Smallest l-adic valuation among the six 2x2 minors; nullopt if all vanish.
inline std::optional<int> jacobian_minor_valuation(const HomogeneousSpace& h, const Point4& x, uint64_t l) {
  auto J = jacobian(h, x);
  int best = kInfVal;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) best = std::min(best, vl(J.minor(i, j), l));
  if (best == kInfVal) return std::nullopt;
  return best;
}

}  // namespace heron
