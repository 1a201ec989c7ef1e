#include <faber/series.hpp>

#include <faber/combinatorics.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace faber {

int Exponent::eps_degree() const
{
	return std::accumulate(eps.begin(), eps.end(), 0);
}

bool ExponentOrder::operator()(const Exponent &a, const Exponent &b) const
{
	if (a.eps != b.eps)
		return a.eps < b.eps;
	if (a.v_pow != b.v_pow)
		return a.v_pow < b.v_pow;
	return a.y_pow < b.y_pow;
}

bool TruncationPolicy::admits(const Exponent &e) const
{
	if (static_cast<int>(e.eps.size()) != generator_count())
		return false;
	int total = 0;
	for (int k = 0; k < generator_count(); ++k) {
		if (e.eps[k] < 0 || e.eps[k] > per_generator_cap[k])
			return false;
		total += e.eps[k];
	}
	return total <= total_eps_degree_cap;
}

TruncationPolicy square_zero_policy(int generators)
{
	return TruncationPolicy{generators, std::vector<int>(generators, 1)};
}

TruncationPolicy degree_cap_policy(int generators, int cap)
{
	return TruncationPolicy{cap, std::vector<int>(generators, cap)};
}

Series::Series(TruncationPolicy policy) : policy_(std::move(policy)) {}

Series Series::zero(const TruncationPolicy &policy) { return Series(policy); }

Series Series::constant(const TruncationPolicy &policy, const Rational &c)
{
	Exponent e;
	e.eps.assign(policy.generator_count(), 0);
	return monomial(policy, c, e);
}

Series Series::monomial(const TruncationPolicy &policy, const Rational &c,
                        const Exponent &e)
{
	if (static_cast<int>(e.eps.size()) != policy.generator_count())
		throw std::invalid_argument("Series::monomial: eps length does not match policy");
	Series f(policy);
	f.add_term(e, c);
	return f;
}

Series Series::vy_monomial(const TruncationPolicy &policy, const Rational &c,
                           int v_pow, int y_pow)
{
	Exponent e;
	e.v_pow = v_pow;
	e.y_pow = y_pow;
	e.eps.assign(policy.generator_count(), 0);
	return monomial(policy, c, e);
}

bool Series::is_infinitesimal() const
{
	for (const auto &[e, q] : terms_)
		if (e.eps_degree() == 0)
			return false;
	return true;
}

void Series::add_term(const Exponent &e, const Rational &c)
{
	if (sgn(c) == 0 || !policy_.admits(e))
		return;
	auto [it, inserted] = terms_.emplace(e, c);
	if (!inserted) {
		it->second += c;
		if (sgn(it->second) == 0)
			terms_.erase(it);
	}
}

namespace {

void require_same_policy(const Series &f, const Series &g, const char *op)
{
	if (!(f.policy() == g.policy()))
		throw std::invalid_argument(std::string(op) +
		                            ": operands carry different truncation policies");
}

} // namespace

Series &Series::operator+=(const Series &g)
{
	require_same_policy(*this, g, "Series::operator+=");
	for (const auto &[e, q] : g.terms_)
		add_term(e, q);
	return *this;
}

Series &Series::operator-=(const Series &g)
{
	require_same_policy(*this, g, "Series::operator-=");
	for (const auto &[e, q] : g.terms_)
		add_term(e, -q);
	return *this;
}

Series &Series::operator*=(const Rational &c)
{
	if (sgn(c) == 0) {
		terms_.clear();
		return *this;
	}
	for (auto &[e, q] : terms_)
		q *= c;
	return *this;
}

Series Series::operator-() const
{
	Series r(policy_);
	for (const auto &[e, q] : terms_)
		r.terms_.emplace(e, -q);
	return r;
}

Series operator*(const Series &f, const Series &g)
{
	require_same_policy(f, g, "Series::operator*");
	const TruncationPolicy &policy = f.policy();
	const int cap = policy.total_eps_degree_cap;

	// Bucket g by eps degree so that term pairs exceeding the total cap
	// are never formed; the dominant cost in the identity checks is this
	// product, and most cross-degree pairs truncate to zero.
	using TermPtr = const std::pair<const Exponent, Rational> *;
	std::vector<std::vector<TermPtr>> buckets(cap + 1);
	for (const auto &t : g.terms())
		buckets[t.first.eps_degree()].push_back(&t);

	Series out(policy);
	Exponent e;
	const int gens = policy.generator_count();
	e.eps.assign(gens, 0);
	for (const auto &[ea, qa] : f.terms()) {
		const int da = ea.eps_degree();
		for (int db = 0; da + db <= cap; ++db) {
			for (TermPtr t : buckets[db]) {
				const Exponent &eb = t->first;
				e.v_pow = ea.v_pow + eb.v_pow;
				e.y_pow = ea.y_pow + eb.y_pow;
				bool ok = true;
				for (int k = 0; k < gens; ++k) {
					e.eps[k] = ea.eps[k] + eb.eps[k];
					if (e.eps[k] > policy.per_generator_cap[k])
						ok = false;
				}
				if (!ok)
					continue;
				out.add_term(e, qa * t->second);
			}
		}
	}
	return out;
}

Series one_plus_pow(const Series &u, const Rational &s)
{
	if (!u.is_infinitesimal())
		throw std::invalid_argument(
		    "one_plus_pow: argument has a non-infinitesimal term, expansion would not terminate");
	const int cap = u.policy().total_eps_degree_cap;
	Series result = Series::constant(u.policy(), 1);
	Series upow = Series::constant(u.policy(), 1);
	for (int j = 1; j <= cap; ++j) {
		upow = upow * u;
		if (upow.is_zero())
			break;
		result += rational_binomial(s, j) * upow;
	}
	return result;
}

Series dy_operator(const Series &f)
{
	Series r(f.policy());
	for (const auto &[e, q] : f.terms()) {
		if (e.y_pow == 0)
			continue;
		Exponent d = e;
		d.y_pow -= 2;
		r.add_term(d, q * Rational(e.y_pow));
	}
	return r;
}

Series subst_y_negate(const Series &f)
{
	Series r(f.policy());
	for (const auto &[e, q] : f.terms())
		r.add_term(e, (e.y_pow % 2 == 0) ? q : -q);
	return r;
}

Series vy_shift(const Series &f, int dv, int dy)
{
	Series r(f.policy());
	for (const auto &[e, q] : f.terms()) {
		Exponent s = e;
		s.v_pow += dv;
		s.y_pow += dy;
		r.add_term(s, q);
	}
	return r;
}

Rational coeff(const Series &f, const Exponent &e)
{
	auto it = f.terms().find(e);
	return it == f.terms().end() ? Rational(0) : it->second;
}

std::map<std::vector<int>, Series> slice_by_eps(const Series &f)
{
	std::map<std::vector<int>, Series> slices;
	for (const auto &[e, q] : f.terms()) {
		auto it = slices.find(e.eps);
		if (it == slices.end())
			it = slices.emplace(e.eps, Series(f.policy())).first;
		Exponent vy = e;
		vy.eps.assign(e.eps.size(), 0);
		it->second.add_term(vy, q);
	}
	return slices;
}

namespace {

std::string generator_name(std::size_t k, const std::vector<std::string> &names)
{
	if (k < names.size())
		return names[k];
	return "gen_" + std::to_string(k);
}

} // namespace

std::string to_string(const Exponent &e, const std::vector<std::string> &gen_names)
{
	std::ostringstream os;
	bool any = false;
	if (e.v_pow != 0) {
		os << "v";
		if (e.v_pow != 1)
			os << "^" << e.v_pow;
		any = true;
	}
	if (e.y_pow != 0) {
		if (any)
			os << " * ";
		os << "y";
		if (e.y_pow != 1)
			os << "^" << e.y_pow;
		any = true;
	}
	for (std::size_t k = 0; k < e.eps.size(); ++k) {
		if (e.eps[k] == 0)
			continue;
		if (any)
			os << " * ";
		os << generator_name(k, gen_names);
		if (e.eps[k] != 1)
			os << "^" << e.eps[k];
		any = true;
	}
	if (!any)
		os << "1";
	return os.str();
}

std::string to_string(const Series &f, const std::vector<std::string> &gen_names)
{
	if (f.is_zero())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto &[e, q] : f.terms()) {
		if (!first)
			os << " + ";
		first = false;
		os << to_string(q);
		std::string mono = to_string(e, gen_names);
		if (mono != "1")
			os << " * " << mono;
	}
	return os.str();
}

} // namespace faber
