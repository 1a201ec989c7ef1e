#include <faber/combinatorics.hpp>

#include <stdexcept>

namespace faber {

OrderedSetPartitionStream::OrderedSetPartitionStream(int n, int k)
    : n_(n), k_(k), assign_(n > 0 ? n : 0, -1), count_(k > 0 ? k : 0, 0),
      empty_blocks_(k), pos_(0), done_(false)
{
	if (n_ < 1)
		throw std::invalid_argument("ordered_set_partitions: n must be positive");
	if (k_ < 1 || k_ > n_)
		done_ = true; // empty stream, not an error
}

std::optional<OrderedSetPartition> OrderedSetPartitionStream::next()
{
	if (done_)
		return std::nullopt;

	// Backtracking over block assignments of elements 1..n.  A value v is
	// admissible at position pos only if the blocks still empty after
	// placing it can all be filled by the remaining elements.
	int pos = pos_;
	while (true) {
		int v = assign_[pos] + 1;
		if (assign_[pos] >= 0) {
			if (--count_[assign_[pos]] == 0)
				++empty_blocks_;
			assign_[pos] = -1;
		}
		bool placed = false;
		for (; v < k_; ++v) {
			int would_be_empty = empty_blocks_ - (count_[v] == 0 ? 1 : 0);
			if (would_be_empty <= n_ - pos - 1) {
				assign_[pos] = v;
				if (count_[v]++ == 0)
					--empty_blocks_;
				placed = true;
				break;
			}
		}
		if (!placed) {
			if (pos == 0) {
				done_ = true;
				return std::nullopt;
			}
			--pos;
			continue;
		}
		if (pos == n_ - 1) {
			pos_ = pos;
			OrderedSetPartition p;
			p.blocks.assign(k_, {});
			for (int j = 0; j < k_; ++j)
				p.blocks[j].reserve(count_[j]);
			for (int i = 0; i < n_; ++i)
				p.blocks[assign_[i]].push_back(i + 1);
			return p;
		}
		++pos;
	}
}

CompositionStream::CompositionStream(long total, int k)
    : total_(total), k_(k), head_(k > 0 ? k - 1 : 0, 0), head_sum_(0),
      started_(false), done_(false)
{
	if (total_ < 0)
		throw std::invalid_argument("compositions: total must be nonnegative");
	if (k_ < 1)
		throw std::invalid_argument("compositions: k must be positive");
}

std::optional<Composition> CompositionStream::next()
{
	if (done_)
		return std::nullopt;
	if (started_) {
		// Advance the first k-1 parts as a bounded odometer; the last part
		// absorbs the remainder.
		int i = k_ - 2;
		while (i >= 0) {
			long prefix = head_sum_ - head_[i];
			if (prefix + head_[i] + 1 <= total_) {
				++head_[i];
				head_sum_ = prefix + head_[i];
				for (int j = i + 1; j < k_ - 1; ++j) {
					head_sum_ -= head_[j];
					head_[j] = 0;
				}
				break;
			}
			head_sum_ -= head_[i];
			head_[i] = 0;
			--i;
		}
		if (i < 0) {
			done_ = true;
			return std::nullopt;
		}
	}
	started_ = true;
	Composition c;
	c.parts.reserve(k_);
	c.parts.assign(head_.begin(), head_.end());
	c.parts.push_back(total_ - head_sum_);
	return c;
}

Integer factorial(long n)
{
	if (n < 0)
		throw std::invalid_argument("factorial: negative argument");
	Integer r;
	mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
	return r;
}

Integer binomial(long n, long k)
{
	if (n < 0)
		throw std::invalid_argument("binomial: negative n");
	if (k < 0 || k > n)
		return 0;
	Integer r;
	mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
	             static_cast<unsigned long>(k));
	return r;
}

Integer odd_falling_product(long d, long m)
{
	if (d < 0 || m < 1)
		throw std::invalid_argument("odd_falling_product: require d >= 0, m >= 1");
	Integer r = 1;
	for (long j = 1; j <= m - 1; ++j)
		r *= 2 * d - 2 * j + 1;
	return r;
}

Rational rational_binomial(const Rational &s, long j)
{
	if (j < 0)
		throw std::invalid_argument("rational_binomial: negative j");
	Rational r = 1;
	for (long i = 0; i < j; ++i) {
		r *= s - Rational(i);
		r /= Rational(i + 1);
	}
	return r;
}

Rational bernoulli(long m)
{
	if (m < 0)
		throw std::invalid_argument("bernoulli: negative index");
	std::vector<Rational> b;
	b.reserve(m + 1);
	b.emplace_back(1);
	for (long i = 1; i <= m; ++i) {
		Rational acc = 0;
		for (long k = 0; k < i; ++k)
			acc += Rational(binomial(i + 1, k)) * b[k];
		acc /= Rational(i + 1);
		b.push_back(-acc);
	}
	return b[m];
}

Rational faber_constant(long g)
{
	if (g < 2)
		throw std::invalid_argument("faber_constant: require g >= 2");
	Rational b = bernoulli(2 * g);
	Rational num = abs(b);
	Integer den = 1;
	mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(),
	             static_cast<unsigned long>(2 * g - 1));
	den *= factorial(2 * g);
	return num / Rational(den);
}

} // namespace faber
