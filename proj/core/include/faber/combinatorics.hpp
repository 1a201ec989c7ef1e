#pragma once

#include <faber/rational.hpp>

#include <optional>
#include <vector>

namespace faber {

// Ordered partition of {1,...,n} into k pairwise disjoint nonempty blocks.
// Blocks are stored in order; each block lists its elements ascending.
struct OrderedSetPartition {
	std::vector<std::vector<int>> blocks;

	int block_count() const { return static_cast<int>(blocks.size()); }
};

// k nonnegative integers summing to a fixed total.
struct Composition {
	std::vector<long> parts;
};

// Streams every ordered partition of {1,...,n} into exactly k nonempty
// blocks, each exactly once.  k < 1 or k > n yields the empty stream.
// Constant memory per item; total count is k! * Stirling2(n,k).
class OrderedSetPartitionStream {
public:
	OrderedSetPartitionStream(int n, int k);

	std::optional<OrderedSetPartition> next();

private:
	int n_;
	int k_;
	std::vector<int> assign_; // assign_[i]: block of element i+1, -1 = unset
	std::vector<int> count_;  // elements currently in each block
	int empty_blocks_;
	int pos_;
	bool done_;
};

// Streams every k-tuple of nonnegative integers with the given sum, in
// lexicographic order.  Count is binomial(total+k-1, k-1).
class CompositionStream {
public:
	CompositionStream(long total, int k);

	std::optional<Composition> next();

private:
	long total_;
	int k_;
	std::vector<long> head_; // first k-1 parts; last part is derived
	long head_sum_;
	bool started_;
	bool done_;
};

Integer factorial(long n);

// Standard binomial coefficient; 0 outside 0 <= k <= n.  Negative n is a
// caller bug and throws.
Integer binomial(long n, long k);

// prod_{j=1}^{m-1} (2d - 2j + 1): the value of (2d-1)!!/(2d+1-2m)!! forced
// by applying ((1/y) d/dy)^{m-1} to y^{2d-1}.  Defined for all d >= 0,
// m >= 1, including where the double-factorial quotient itself is not.
Integer odd_falling_product(long d, long m);

// s(s-1)...(s-j+1)/j! for arbitrary rational s.
Rational rational_binomial(const Rational &s, long j);

// Bernoulli number B_m via the defining recurrence
// sum_{j=0}^{m} binomial(m+1,j) B_j = 0, with B_1 = -1/2.
Rational bernoulli(long m);

// |B_{2g}| / (2^{2g-1} (2g)!) for g >= 2.
Rational faber_constant(long g);

} // namespace faber
