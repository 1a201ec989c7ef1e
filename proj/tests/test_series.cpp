#include <doctest.h>

#include <faber/series.hpp>

#include <random>

using namespace faber;

namespace {

Exponent exp_of(const TruncationPolicy &policy, int v, int y, std::vector<int> eps = {})
{
	Exponent e;
	e.v_pow = v;
	e.y_pow = y;
	if (eps.empty())
		eps.assign(policy.generator_count(), 0);
	e.eps = std::move(eps);
	return e;
}

// Random small series: exponents in [-3,3], eps degree <= 2,
// coefficients in {-3,...,3}.
Series random_series(std::mt19937_64 &rng, const TruncationPolicy &policy)
{
	std::uniform_int_distribution<int> n_terms(0, 6);
	std::uniform_int_distribution<int> vy(-3, 3);
	std::uniform_int_distribution<int> coeff(-3, 3);
	std::uniform_int_distribution<int> gen(0, policy.generator_count() - 1);
	std::uniform_int_distribution<int> deg(0, 2);

	Series f(policy);
	int terms = n_terms(rng);
	for (int t = 0; t < terms; ++t) {
		Exponent e = exp_of(policy, vy(rng), vy(rng));
		int d = deg(rng);
		for (int i = 0; i < d; ++i)
			e.eps[gen(rng)] += 1;
		f.add_term(e, Rational(coeff(rng)));
	}
	return f;
}

// Random infinitesimal series (every term of eps degree 1 or 2).
Series random_infinitesimal(std::mt19937_64 &rng, const TruncationPolicy &policy)
{
	std::uniform_int_distribution<int> n_terms(1, 5);
	std::uniform_int_distribution<int> vy(-2, 2);
	std::uniform_int_distribution<int> coeff(-3, 3);
	std::uniform_int_distribution<int> gen(0, policy.generator_count() - 1);
	std::uniform_int_distribution<int> deg(1, 2);

	Series f(policy);
	int terms = n_terms(rng);
	for (int t = 0; t < terms; ++t) {
		Exponent e = exp_of(policy, vy(rng), vy(rng));
		int d = deg(rng);
		for (int i = 0; i < d; ++i)
			e.eps[gen(rng)] += 1;
		f.add_term(e, Rational(coeff(rng)));
	}
	return f;
}

void check_no_stored_zeros(const Series &f)
{
	for (const auto &[e, q] : f.terms()) {
		CHECK(sgn(q) != 0);
		CHECK(f.policy().admits(e));
	}
}

} // namespace

TEST_CASE("series arithmetic: basic identities")
{
	TruncationPolicy policy = degree_cap_policy(2, 2);
	Series y = Series::vy_monomial(policy, 1, 0, 1);
	Series zero(policy);

	CHECK(y + zero == y);
	CHECK((y + (-y)).is_zero());

	Series vc = Series::monomial(policy, 1, exp_of(policy, -1, 0, {1, 0}));
	CHECK(vc + vc == Rational(2) * vc);
}

TEST_CASE("series multiplication: truncation and Laurent exponents")
{
	// x_1 * x_1 = 0 under square-zero caps
	TruncationPolicy sq = square_zero_policy(2);
	Series x1 = Series::monomial(sq, 1, exp_of(sq, 0, 0, {1, 0}));
	CHECK((x1 * x1).is_zero());

	// (y + y^-1)(y - y^-1) = y^2 - y^-2
	TruncationPolicy p = degree_cap_policy(1, 2);
	Series a = Series::vy_monomial(p, 1, 0, 1) + Series::vy_monomial(p, 1, 0, -1);
	Series b = Series::vy_monomial(p, 1, 0, 1) - Series::vy_monomial(p, 1, 0, -1);
	Series expect = Series::vy_monomial(p, 1, 0, 2) - Series::vy_monomial(p, 1, 0, -2);
	CHECK(a * b == expect);

	// c_1 c_2 * c_0 dropped at total cap 2
	TruncationPolicy cap2 = degree_cap_policy(3, 2);
	Series c12 = Series::monomial(cap2, 1, exp_of(cap2, 0, 0, {0, 1, 1}));
	Series c0 = Series::monomial(cap2, 1, exp_of(cap2, 0, 0, {1, 0, 0}));
	CHECK((c12 * c0).is_zero());
}

TEST_CASE("series operations reject mismatched policies")
{
	Series f(degree_cap_policy(2, 2));
	Series g(degree_cap_policy(2, 3));
	Series h(degree_cap_policy(3, 2));
	CHECK_THROWS_AS(f + g, std::invalid_argument);
	CHECK_THROWS_AS(f * g, std::invalid_argument);
	CHECK_THROWS_AS(f - h, std::invalid_argument);
}

TEST_CASE("ring axioms on seeded random series")
{
	std::mt19937_64 rng(20240811);
	TruncationPolicy policy = degree_cap_policy(3, 2);
	for (int trial = 0; trial < 100; ++trial) {
		Series f = random_series(rng, policy);
		Series g = random_series(rng, policy);
		Series h = random_series(rng, policy);
		CHECK(f + g == g + f);
		CHECK((f + g) + h == f + (g + h));
		CHECK(f * g == g * f);
		CHECK((f * g) * h == f * (g * h));
		CHECK(f * (g + h) == f * g + f * h);
		check_no_stored_zeros(f * g);
		check_no_stored_zeros(f - f);
	}
}

TEST_CASE("one_plus_pow: explicit expansions")
{
	TruncationPolicy policy = degree_cap_policy(1, 2);
	Series zero(policy);
	CHECK(one_plus_pow(zero, make_rational(5, 7)) == Series::constant(policy, 1));

	// u = c_0 y, s = -1: geometric series 1 - c_0 y + c_0^2 y^2
	Series u = Series::monomial(policy, 1, exp_of(policy, 0, 1, {1}));
	Series geom = Series::constant(policy, 1) -
	              Series::monomial(policy, 1, exp_of(policy, 0, 1, {1})) +
	              Series::monomial(policy, 1, exp_of(policy, 0, 2, {2}));
	CHECK(one_plus_pow(u, Rational(-1)) == geom);

	// u = c_0, s = 1/2: 1 + c_0/2 - c_0^2/8
	Series c0 = Series::monomial(policy, 1, exp_of(policy, 0, 0, {1}));
	Series root = Series::constant(policy, 1) +
	              Series::monomial(policy, make_rational(1, 2), exp_of(policy, 0, 0, {1})) +
	              Series::monomial(policy, make_rational(-1, 8), exp_of(policy, 0, 0, {2}));
	CHECK(one_plus_pow(c0, make_rational(1, 2)) == root);
}

TEST_CASE("one_plus_pow rejects non-infinitesimal arguments")
{
	TruncationPolicy policy = degree_cap_policy(1, 2);
	Series bad = Series::vy_monomial(policy, 1, 0, 1);
	CHECK_THROWS_AS(one_plus_pow(bad, Rational(2)), std::invalid_argument);
}

TEST_CASE("one_plus_pow: inverse and addition laws on seeded random series")
{
	std::mt19937_64 rng(7);
	TruncationPolicy policy = degree_cap_policy(3, 3);
	Series one = Series::constant(policy, 1);
	const Rational exponents[] = {make_rational(1, 2), make_rational(-1, 2),
	                              Rational(-1), Rational(-4)};
	for (int trial = 0; trial < 20; ++trial) {
		Series u = random_infinitesimal(rng, policy);
		for (const Rational &s : exponents)
			CHECK(one_plus_pow(u, s) * one_plus_pow(u, -s) == one);
		Rational a = make_rational(3, 2), b = Rational(-2);
		CHECK(one_plus_pow(u, a) * one_plus_pow(u, b) == one_plus_pow(u, a + b));
	}
}

TEST_CASE("dy_operator")
{
	TruncationPolicy policy = degree_cap_policy(1, 1);
	CHECK(dy_operator(Series::vy_monomial(policy, 1, 0, 2)) ==
	      Series::vy_monomial(policy, 2, 0, 0));
	CHECK(dy_operator(Series::vy_monomial(policy, 1, 0, -1)) ==
	      Series::vy_monomial(policy, -1, 0, -3));
	CHECK(dy_operator(Series::constant(policy, 5)).is_zero());
	for (int k = -5; k <= 5; ++k) {
		if (k == 0)
			continue;
		CHECK(dy_operator(Series::vy_monomial(policy, 1, 0, 2 * k)) ==
		      Series::vy_monomial(policy, 2 * k, 0, 2 * k - 2));
	}
}

TEST_CASE("subst_y_negate: involution and ring homomorphism")
{
	TruncationPolicy policy = degree_cap_policy(2, 2);
	CHECK(subst_y_negate(Series::vy_monomial(policy, 1, 0, 1)) ==
	      Series::vy_monomial(policy, -1, 0, 1));
	CHECK(subst_y_negate(Series::vy_monomial(policy, 1, 0, 2)) ==
	      Series::vy_monomial(policy, 1, 0, 2));

	std::mt19937_64 rng(99);
	for (int trial = 0; trial < 30; ++trial) {
		Series f = random_series(rng, policy);
		Series g = random_series(rng, policy);
		CHECK(subst_y_negate(subst_y_negate(f)) == f);
		CHECK(subst_y_negate(f * g) == subst_y_negate(f) * subst_y_negate(g));
		CHECK(subst_y_negate(f + g) == subst_y_negate(f) + subst_y_negate(g));
	}
}

TEST_CASE("coeff extraction")
{
	TruncationPolicy policy = degree_cap_policy(2, 2);
	Series y = Series::vy_monomial(policy, 1, 0, 1);
	CHECK(coeff(y, exp_of(policy, 0, 1)) == Rational(1));
	CHECK(coeff(Series(policy), exp_of(policy, 3, -2)) == Rational(0));
	Series f = Series::monomial(policy, 2, exp_of(policy, -1, 0, {1, 0}));
	CHECK(coeff(f, exp_of(policy, -1, 0, {1, 0})) == Rational(2));
}

TEST_CASE("slice_by_eps: partition and reassembly")
{
	TruncationPolicy policy = degree_cap_policy(1, 2);
	Series f = Series::vy_monomial(policy, 1, 0, 1) +
	           Series::monomial(policy, 1, exp_of(policy, 1, 0, {1}));
	auto slices = slice_by_eps(f);
	REQUIRE(slices.size() == 2);
	CHECK(slices.at({0}) == Series::vy_monomial(policy, 1, 0, 1));
	CHECK(slices.at({1}) == Series::vy_monomial(policy, 1, 1, 0));

	CHECK(slice_by_eps(Series(policy)).empty());

	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 20; ++trial) {
		Series g = random_series(rng, policy);
		Series rebuilt(policy);
		for (const auto &[eps, slice] : slice_by_eps(g)) {
			Exponent mono;
			mono.eps = eps;
			rebuilt += Series::monomial(policy, 1, mono) * slice;
		}
		CHECK(rebuilt == g);
	}
}

TEST_CASE("canonical rendering")
{
	TruncationPolicy policy = degree_cap_policy(2, 2);
	CHECK(to_string(Series(policy)) == "0");
	CHECK(to_string(Series::constant(policy, make_rational(1, 5760))) == "1/5760");

	Series f = Series::monomial(policy, -20, exp_of(policy, 1, -2, {0, 1}));
	CHECK(to_string(f, {"c_1", "c_2"}) == "-20 * v * y^-2 * c_2");

	// eps-lexicographic major order, then v, then y
	Series g = Series::vy_monomial(policy, 1, 2, 0) +
	           Series::vy_monomial(policy, 1, -1, 3) +
	           Series::monomial(policy, 3, exp_of(policy, 0, 0, {1, 0}));
	CHECK(to_string(g, {"a", "b"}) == "1 * v^-1 * y^3 + 1 * v^2 + 3 * a");
}
