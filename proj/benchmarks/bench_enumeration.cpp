#include <benchmark/benchmark.h>

#include <faber/combinatorics.hpp>

namespace {

// Full ordered-set-partition sweep (all k): Fubini-number many items.
void BM_ordered_set_partitions(benchmark::State &state)
{
	const int n = static_cast<int>(state.range(0));
	unsigned long long count = 0;
	for (auto _ : state) {
		count = 0;
		for (int k = 1; k <= n; ++k) {
			faber::OrderedSetPartitionStream stream(n, k);
			while (auto p = stream.next()) {
				benchmark::DoNotOptimize(p->blocks);
				++count;
			}
		}
	}
	state.counters["partitions"] = static_cast<double>(count);
	state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
	                        static_cast<int64_t>(count));
}
BENCHMARK(BM_ordered_set_partitions)->DenseRange(4, 9)->Unit(benchmark::kMillisecond);

void BM_compositions(benchmark::State &state)
{
	const long total = state.range(0);
	unsigned long long count = 0;
	for (auto _ : state) {
		count = 0;
		faber::CompositionStream stream(total, 6);
		while (auto c = stream.next()) {
			benchmark::DoNotOptimize(c->parts);
			++count;
		}
	}
	state.counters["compositions"] = static_cast<double>(count);
	state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
	                        static_cast<int64_t>(count));
}
BENCHMARK(BM_compositions)->DenseRange(6, 16, 2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
