#pragma once

#include <gmpxx.h>
#include <string>

namespace faber {

using Integer = mpz_class;
using Rational = mpq_class;

// p/q reduced to lowest terms with positive denominator.
inline Rational make_rational(const Integer &num, const Integer &den)
{
	Rational q(num, den);
	q.canonicalize();
	return q;
}

inline Rational make_rational(long num, long den = 1)
{
	return make_rational(Integer(num), Integer(den));
}

// "p" for integers, "p/q" otherwise; never a float.
inline std::string to_string(const Rational &q) { return q.get_str(); }
inline std::string to_string(const Integer &n) { return n.get_str(); }

} // namespace faber
