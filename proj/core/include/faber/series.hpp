#pragma once

#include <faber/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace faber {

// Monomial key v^{v_pow} y^{y_pow} prod_k gen_k^{eps[k]}.  v and y are
// Laurent (exponents of either sign); the eps generators are nilpotent
// formal variables with nonnegative exponents.
struct Exponent {
	int v_pow = 0;
	int y_pow = 0;
	std::vector<int> eps;

	int eps_degree() const;
	bool operator==(const Exponent &) const = default;
};

// Canonical term order: (eps lexicographic, v_pow, y_pow).  Map iteration
// in this order doubles as the serialization order for reports.
struct ExponentOrder {
	bool operator()(const Exponent &a, const Exponent &b) const;
};

// Terms violating either cap are dropped at creation and after every
// arithmetic operation.  per_generator_cap of 1 realizes square-zero
// generators; total_eps_degree_cap bounds the grading globally.
struct TruncationPolicy {
	int total_eps_degree_cap = 0;
	std::vector<int> per_generator_cap;

	int generator_count() const { return static_cast<int>(per_generator_cap.size()); }
	bool admits(const Exponent &e) const;
	bool operator==(const TruncationPolicy &) const = default;
};

TruncationPolicy square_zero_policy(int generators);
TruncationPolicy degree_cap_policy(int generators, int cap);

using TermMap = std::map<Exponent, Rational, ExponentOrder>;

// Sparse truncated series with exact rational coefficients.  No zero
// coefficient is ever stored; every stored exponent satisfies the policy.
// Values are immutable from the caller's point of view: all operations
// return fresh series.
class Series {
public:
	explicit Series(TruncationPolicy policy);

	static Series zero(const TruncationPolicy &policy);
	static Series constant(const TruncationPolicy &policy, const Rational &c);
	static Series monomial(const TruncationPolicy &policy, const Rational &c,
	                       const Exponent &e);
	// Convenience for c * v^{v_pow} y^{y_pow} (no generator part).
	static Series vy_monomial(const TruncationPolicy &policy, const Rational &c,
	                          int v_pow, int y_pow);

	const TruncationPolicy &policy() const { return policy_; }
	const TermMap &terms() const { return terms_; }
	std::size_t term_count() const { return terms_.size(); }
	bool is_zero() const { return terms_.empty(); }

	// True when every term has eps degree >= 1 (the empty series counts).
	bool is_infinitesimal() const;

	Series &operator+=(const Series &g);
	Series &operator-=(const Series &g);
	Series &operator*=(const Rational &c);
	Series operator-() const;

	friend Series operator+(Series f, const Series &g) { return f += g; }
	friend Series operator-(Series f, const Series &g) { return f -= g; }
	friend Series operator*(Series f, const Rational &c) { return f *= c; }
	friend Series operator*(const Rational &c, Series f) { return f *= c; }
	friend Series operator*(const Series &f, const Series &g);

	bool operator==(const Series &) const = default;

	void add_term(const Exponent &e, const Rational &c);

private:
	TruncationPolicy policy_;
	TermMap terms_;
};

// (1+u)^s = sum_j rational_binomial(s,j) u^j, truncated at the policy's
// total degree cap.  Exact because u is required to be infinitesimal and
// hence nilpotent under the policy; otherwise throws.
Series one_plus_pow(const Series &u, const Rational &s);

// (1/y) d/dy: maps q v^i y^m x^a to q m v^i y^{m-2} x^a.
Series dy_operator(const Series &f);

// y -> -y: maps q v^i y^m x^a to q (-1)^m v^i y^m x^a.
Series subst_y_negate(const Series &f);

// Multiply by v^{dv} y^{dy}.
Series vy_shift(const Series &f, int dv, int dy);

// Stored coefficient or exact zero.
Rational coeff(const Series &f, const Exponent &e);

// Partition of the terms by eps vector; each slice is a Laurent polynomial
// in (v,y) (eps zeroed out).  f == sum over slices of x^eps * slice.
std::map<std::vector<int>, Series> slice_by_eps(const Series &f);

// Canonical rendering: terms in (eps lex, v_pow, y_pow) order, each as
// "q * v^i * y^j * gen_k^e"; rationals as "p/q".  Empty series renders "0".
std::string to_string(const Exponent &e, const std::vector<std::string> &gen_names = {});
std::string to_string(const Series &f, const std::vector<std::string> &gen_names = {});

} // namespace faber
