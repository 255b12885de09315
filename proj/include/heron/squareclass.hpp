#pragma once

// Elements of Q(S,2), the classes of Q*/Q*^2 supported on S = {-1} and a
// finite prime set, stored as exponent bitmasks over the generators.

#include <memory>
#include <string>
#include <vector>

#include "heron/intmath.hpp"

namespace heron {

/// The finite primes of S, ascending. Bit 0 of a mask is the sign, bit i+1 is primes[i].
struct Ambient {
  std::vector<uint64_t> primes;
  bool operator==(const Ambient&) const = default;
  int rank() const { return int(primes.size()) + 1; }
};

using AmbientPtr = std::shared_ptr<const Ambient>;

class SquareClass {
 public:
  SquareClass() = default;
  SquareClass(AmbientPtr amb, uint64_t mask) : amb_(std::move(amb)), mask_(mask) {}

  const AmbientPtr& ambient() const { return amb_; }
  uint64_t mask() const { return mask_; }
  int sign() const { return (mask_ & 1) ? -1 : 1; }
  bool is_one() const { return mask_ == 0; }

  std::vector<uint64_t> support() const {
    std::vector<uint64_t> s;
    for (size_t i = 0; i < amb_->primes.size(); ++i)
      if (mask_ >> (i + 1) & 1) s.push_back(amb_->primes[i]);
    return s;
  }

  /// The square-free integer representing the class.
  BigInt value() const {
    BigInt v = 1;
    for (uint64_t p : support()) v *= p;
    return sign() < 0 ? BigInt(-v) : v;
  }

  std::string str() const { return value().str(); }

  bool operator==(const SquareClass& o) const {
    return mask_ == o.mask_ && (amb_ == o.amb_ || (amb_ && o.amb_ && *amb_ == *o.amb_));
  }

 private:
  AmbientPtr amb_;
  uint64_t mask_ = 0;
};

/// Positive classes first, then by magnitude of the representative.
inline bool canonical_less(const SquareClass& a, const SquareClass& b) {
  if (a.sign() != b.sign()) return a.sign() > b.sign();
  BigInt va = abs(a.value()), vb = abs(b.value());
  if (va != vb) return va < vb;
  return a.mask() < b.mask();
}

inline void require_same_ambient(const SquareClass& a, const SquareClass& b) {
  if (!(a.ambient() == b.ambient() || (a.ambient() && b.ambient() && *a.ambient() == *b.ambient())))
    throw Error(Errc::MismatchedAmbient, "classes live in different Q(S,2)");
}

inline SquareClass class_mul(const SquareClass& a, const SquareClass& b) {
  require_same_ambient(a, b);
  return SquareClass(a.ambient(), a.mask() ^ b.mask());
}

inline SquareClass from_integer(const BigInt& x, const AmbientPtr& amb) {
  if (x == 0) throw Error(Errc::InvalidArgument, "zero has no square class");
  uint64_t mask = x < 0 ? 1 : 0;
  BigInt r = abs(x);
  for (size_t i = 0; i < amb->primes.size(); ++i) {
    int e = 0;
    while (r % amb->primes[i] == 0) {
      r /= amb->primes[i];
      ++e;
    }
    if (e & 1) mask |= uint64_t(1) << (i + 1);
  }
  if (!exact_sqrt(r)) throw Error(Errc::OutsideSupport, x.str() + " has odd valuation at a prime outside S");
  return SquareClass(amb, mask);
}

inline SquareClass from_rational(const BigRational& x, const AmbientPtr& amb) {
  BigInt num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  return from_integer(num * den, amb);
}

/// All 2^(|S|) classes, in canonical order.
inline std::vector<SquareClass> enumerate_qs2(const AmbientPtr& amb) {
  std::vector<SquareClass> out;
  uint64_t total = uint64_t(1) << amb->rank();
  out.reserve(total);
  for (uint64_t m = 0; m < total; ++m) out.emplace_back(amb, m);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

struct DescentPair {
  SquareClass b1, b2;
  bool operator==(const DescentPair&) const = default;
  std::string str() const { return "(" + b1.str() + "," + b2.str() + ")"; }
  uint64_t key() const { return (b1.mask() << 32) | b2.mask(); }
};

inline DescentPair pair_mul(const DescentPair& a, const DescentPair& b) {
  return {class_mul(a.b1, b.b1), class_mul(a.b2, b.b2)};
}

/// Ordering used to pick coset representatives: pairs of positive classes
/// first, then |b1*b2|, then b1, then b2.
inline bool pair_less(const DescentPair& a, const DescentPair& b) {
  bool na = a.b1.sign() < 0 || a.b2.sign() < 0, nb = b.b1.sign() < 0 || b.b2.sign() < 0;
  if (na != nb) return nb;
  BigInt pa = abs(a.b1.value() * a.b2.value()), pb = abs(b.b1.value() * b.b2.value());
  if (pa != pb) return pa < pb;
  if (!(a.b1 == b.b1)) return canonical_less(a.b1, b.b1);
  return canonical_less(a.b2, b.b2);
}

}  // namespace heron
