#include <benchmark/benchmark.h>

#include <faber/identities.hpp>

namespace {

// g=2 instance with a = (2,1,...,1), the smallest spread for a given n.
faber::FaberInstance balanced_instance(int n)
{
	faber::FaberInstance inst;
	inst.g = 2;
	inst.n = n;
	inst.a.assign(n, 1);
	inst.a[0] = 2;
	return inst;
}

// Brute-force route: work grows with the Fubini numbers.
void BM_direct_faber_sum(benchmark::State &state)
{
	const faber::FaberInstance inst = balanced_instance(static_cast<int>(state.range(0)));
	faber::FaberSumStats stats;
	for (auto _ : state) {
		stats = faber::direct_faber_sum_stats(inst);
		if (stats.value != faber::Rational(0))
			state.SkipWithError("nonzero sum");
	}
	state.counters["partitions"] = static_cast<double>(stats.partitions);
	state.counters["products"] = static_cast<double>(stats.products);
}
BENCHMARK(BM_direct_faber_sum)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

// Generating-series route to the same number.
void BM_gf_faber_value(benchmark::State &state)
{
	const faber::FaberInstance inst = balanced_instance(static_cast<int>(state.range(0)));
	for (auto _ : state) {
		faber::Rational value = faber::gf_faber_value(inst);
		if (value != faber::Rational(0))
			state.SkipWithError("nonzero value");
		benchmark::DoNotOptimize(value);
	}
	state.counters["s_terms"] = static_cast<double>(faber::build_S(inst).term_count());
}
BENCHMARK(BM_gf_faber_value)->DenseRange(2, 8)->Unit(benchmark::kMillisecond);

void BM_theorem1_check(benchmark::State &state)
{
	const int N = static_cast<int>(state.range(0));
	for (auto _ : state) {
		faber::CheckReport r = faber::theorem1_check(N, N + 1, 3);
		if (!r.pass)
			state.SkipWithError("check failed");
		benchmark::DoNotOptimize(r);
	}
}
BENCHMARK(BM_theorem1_check)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
