#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace wonder {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
class Rat {
public:
  Rat() = default;
  Rat(int v) : q_(v) {}
  Rat(long v) : q_(v) {}
  Rat(long long v) : q_(static_cast<long>(v)) {}
  Rat(unsigned v) : q_(v) {}
  Rat(unsigned long v) : q_(v) {}
  Rat(long num, long den) : q_(num, den) { q_.canonicalize(); }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p" or "p/q"; throws std::invalid_argument on bad input or a
  /// zero denominator.
  static Rat parse(std::string_view text);

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  const mpq_class& value() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
  mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

/// n choose k as an exact rational; zero outside 0 <= k <= n.
Rat binomial(long n, long k);

}  // namespace wonder

namespace Eigen {

template <>
struct NumTraits<wonder::Rat> : GenericNumTraits<wonder::Rat> {
  using Real = wonder::Rat;
  using NonInteger = wonder::Rat;
  using Literal = wonder::Rat;
  using Nested = wonder::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static inline Real epsilon() { return wonder::Rat(0); }
  static inline Real dummy_precision() { return wonder::Rat(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
