#ifndef FLAGOPS_NUMERIC_HPP
#define FLAGOPS_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace flagops {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rat& r) { return rat_den(r) == 1; }

/// Inverse of a mod p (p prime, a not divisible by p).
Int mod_inverse(const Int& a, const Int& p);

/// Canonical representative of a mod p in [0, p).
Int mod_reduce(const Int& a, const Int& p);

bool is_prime(unsigned n);

std::string rat_to_string(const Rat& r);

} // namespace flagops

#endif
