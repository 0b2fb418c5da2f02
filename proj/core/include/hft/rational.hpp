#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace hft {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy surfaced through the CLI exit codes: input errors are the
// caller's fault (bad file, bad ids, violated preconditions), internal errors
// indicate a broken invariant in the engine itself.
enum class ErrorKind { Input, Window, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) {
  throw Error(ErrorKind::Input, msg);
}
[[noreturn]] inline void fail_window(const std::string& msg) {
  throw Error(ErrorKind::Window, msg);
}
[[noreturn]] inline void fail_internal(const std::string& msg) {
  throw Error(ErrorKind::Internal, msg);
}

// Parses "a/b" or "a" (reduced on the way in). Rejects zero denominators.
Rat parse_rat(const std::string& s);

// Canonical serialization, always "a/b" with b > 0 and gcd(a,b) = 1.
std::string rat_str(const Rat& r);

struct RationalPoint {
  Rat x, y;
  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
  bool operator!=(const RationalPoint& o) const { return !(*this == o); }
};

inline RationalPoint operator-(const RationalPoint& a, const RationalPoint& b) {
  return {a.x - b.x, a.y - b.y};
}

// Cross product of vectors ab and ac; > 0 iff c lies left of the ray a->b.
inline Rat cross(const RationalPoint& a, const RationalPoint& b,
                 const RationalPoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

inline Rat cross(const RationalPoint& u, const RationalPoint& v) {
  return u.x * v.y - u.y * v.x;
}

inline Rat dot(const RationalPoint& u, const RationalPoint& v) {
  return u.x * v.x + u.y * v.y;
}

inline int sgn(const Rat& r) { return sgn(r.get_num()); }

}  // namespace hft
