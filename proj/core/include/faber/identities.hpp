#pragma once

#include <faber/combinatorics.hpp>
#include <faber/series.hpp>

#include <random>
#include <string>
#include <utility>
#include <vector>

namespace faber {

// One term coeff * gen * X^power of the polynomial P(X).
struct PolyTerm {
	int power = 0;
	int generator = 0;
	long coeff = 1;
};

// P(X) = sum of coeff * gen * X^power with formal nilpotent generators.
// generic mode: one generator c_a per distinct power, truncated at a total
// eps degree cap.  faber mode: square-zero generators x_1..x_n, one term
// per generator.
struct PolySpec {
	enum class Mode { generic, faber };

	Mode mode = Mode::generic;
	std::vector<PolyTerm> terms;
	int generator_count = 0;

	// c_0..c_{max_power}, unit coefficients.
	static PolySpec generic(int max_power);
	// One generator c_{power} per (power, coeff) entry; powers must be distinct.
	static PolySpec generic_terms(const std::vector<std::pair<int, long>> &power_coeffs);
	// x_1..x_n with powers a_1..a_n.
	static PolySpec faber(const std::vector<int> &a);

	std::vector<std::string> generator_names() const;
	void validate() const;
};

// Truncation policy implied by the spec: per-generator square-zero caps in
// faber mode (degree_cap is then the generator count), a flat total-degree
// cap in generic mode.
TruncationPolicy make_policy(const PolySpec &spec, int degree_cap);

// Parameters (g, n, a_1..a_n) with sum a = 2g-3+n.
struct FaberInstance {
	long g = 2;
	long n = 2;
	std::vector<int> a;

	long d_total() const { return g - 2 + n; }
	long a_total() const { return 2 * g - 3 + n; }
	PolySpec poly_spec() const;
	void validate() const;
};

struct SliceMismatch {
	std::string monomial;
	std::string expected;
	std::string computed;
};

// Structured pass/fail record for one identity instance.  pass holds iff
// mismatches is empty and expected equals computed.
struct CheckReport {
	std::string check;
	std::vector<std::pair<std::string, std::string>> params;
	bool pass = false;
	std::string expected;
	std::string computed;
	std::vector<SliceMismatch> mismatches;
	double elapsed_ms = 0.0;
};

// ---- series builders ------------------------------------------------

// P(v (1 + y_sign*y)^2) = sum coeff * gen * v^a (1 + y_sign*y)^{2a}.
Series build_P_composed(const PolySpec &spec, int degree_cap, int y_sign);

// A(v,y) = v^{-1} P(v(1+y)^2).
Series build_A(const PolySpec &spec, int degree_cap);

// A(v,w) = v^{-1} P(v(1+w)^2) for a series argument w; powers of (1+w)
// are computed by plain series multiplication.
Series build_A_at(const PolySpec &spec, const Series &w);

// T = y + sum_{r>=1} (1/r!) ((1/y) d/dy)^{r-1} ((1+y)/y * A^r), truncated
// at r = r_max (exact: A^r is zero beyond the eps cap).  A must be
// infinitesimal.
Series build_T_explicit(const Series &A, int r_max);

// S = y + sum_{r=1}^{n} (1/r!) ((1/y) d/dy)^{r-1}
//       (((1+y) P(v(1+y)^2)^r + (1-y) P(v(1-y)^2)^r) / (2y)).
Series build_S(const FaberInstance &inst);

// The series w = sign*y + (infinitesimal) solving w^2 = y^2 + 2 A(v,w),
// by the fixed-point iteration w <- sign*y*(1 + 2A(v,w)/y^2)^{1/2}.
// Throws if one extra iteration fails to reproduce the fixed point.
Series solve_w(const PolySpec &spec, int sign, int degree_cap);

// w^2 - 2 A(v,w) - y^2; exactly zero for the solve_w output.
Series functional_equation_residual(const PolySpec &spec, int degree_cap,
                                    const Series &w);

// ---- scalar evaluations ----------------------------------------------

// Brute-force evaluation of the combinatorial identity: over block counts
// k, ordered set partitions into k blocks and compositions d of g-2+n,
// sum (-1)^k (2g-3+k)!/k! prod_j binom(2 a_[I_j]+1, 2 d_j)
// odd_falling_product(d_j, |I_j|).
Rational direct_faber_sum(const FaberInstance &inst);

struct FaberSumStats {
	Rational value;
	unsigned long long partitions = 0;
	unsigned long long products = 0;
};
FaberSumStats direct_faber_sum_stats(const FaberInstance &inst);

// (2g-3)! [x_1..x_n v^{2g+n-3} y^{-2}] S^{2-2g}: the generating-series
// route to the same number.
Rational gf_faber_value(const FaberInstance &inst);

// ---- checks ------------------------------------------------------------

// T-sum equals w + A(v,w) with w = solve_w(+1).
CheckReport lemma_check(const PolySpec &spec, int degree_cap);

// gf_faber_value == direct_faber_sum (both values recorded; vanishing of
// the direct sum is recorded separately in params).
CheckReport proposition_check(const FaberInstance &inst);

// [v^{N-1} y^{-2}] ((T(v,y)-T(v,-y))/2)^{-N} equals
// -(2N+1)!/((N-1)!(N+1)!) c_N for even N and vanishes for odd N, with all
// other eps monomials up to the cap zero.
CheckReport theorem1_check(int N, int a_max_power, int degree_cap);

// [v^{N-1} y^{-2}] ((T(v,y)+y)/2)^{-N} equals -(N/4) binom(2N+2,N+1) c_N
// for all N >= 1.
CheckReport theorem2_check(int N, int a_max_power, int degree_cap);

// (T(v,y)-T(v,-y))/2 built from P(v(1+y)^2) equals S(v,y); the generator
// rescaling x_l -> x_l * v is absorbed into the T-side builder so all
// exponents stay integral.
CheckReport t_s_consistency_check(const FaberInstance &inst);

// ---- report assembly -----------------------------------------------

// Full-series comparison with per-eps-monomial mismatch slices.
CheckReport compare_series_report(std::string check,
                                  std::vector<std::pair<std::string, std::string>> params,
                                  const Series &expected, const Series &computed,
                                  const std::vector<std::string> &gen_names);

// Scalar comparison.
CheckReport compare_value_report(std::string check,
                                 std::vector<std::pair<std::string, std::string>> params,
                                 const Rational &expected, const Rational &computed);

// Random generic P for the lemma trials: a nonempty subset of the powers
// 0..max_power with nonzero integer coefficients in [-max_coeff, max_coeff].
PolySpec random_generic_spec(std::mt19937_64 &rng, int max_power = 4,
                             long max_coeff = 3);

std::string render_poly(const PolySpec &spec);

} // namespace faber
