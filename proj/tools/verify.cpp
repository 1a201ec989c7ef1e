// verify: runs the identity-check suites over parameter ranges and emits
// one report per check instance, as fixed-width text or json-lines.
//
// Exit codes: 0 all checks pass, 1 at least one failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <faber/identities.hpp>

#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

struct RunConfig {
	std::string suite;
	int g_lo = 2, g_hi = 3;
	int n_lo = 2, n_hi = 4;
	std::vector<int> n_list = {1, 2, 3, 4};
	int degree = 3;
	int trials = 10;
	unsigned long long seed = 1;
	std::string format = "text";
	int jobs = 1;
	bool bench = false;
	bool sorted = false;
	bool inject_fault = false;
};

bool parse_range(const std::string &text, int &lo, int &hi)
{
	try {
		auto pos = text.find("..");
		if (pos == std::string::npos) {
			lo = hi = std::stoi(text);
		} else {
			lo = std::stoi(text.substr(0, pos));
			hi = std::stoi(text.substr(pos + 2));
		}
	} catch (const std::exception &) {
		return false;
	}
	return lo <= hi;
}

double ms_since(Clock::time_point t0)
{
	return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string join_ints(const std::vector<int> &v)
{
	std::ostringstream os;
	for (std::size_t i = 0; i < v.size(); ++i)
		os << (i ? "," : "") << v[i];
	return os.str();
}

std::vector<faber::FaberInstance> instances_for(int g, int n)
{
	std::vector<faber::FaberInstance> out;
	faber::CompositionStream a_vectors(2L * g - 3 + n, n);
	while (auto a = a_vectors.next()) {
		faber::FaberInstance inst;
		inst.g = g;
		inst.n = n;
		inst.a.assign(a->parts.begin(), a->parts.end());
		out.push_back(inst);
	}
	return out;
}

ordered_json report_to_json(const faber::CheckReport &r)
{
	ordered_json j;
	j["check"] = r.check;
	ordered_json params = ordered_json::object();
	for (const auto &[key, value] : r.params)
		params[key] = value;
	j["params"] = params;
	j["status"] = r.pass ? "pass" : "fail";
	j["expected"] = r.expected;
	j["computed"] = r.computed;
	ordered_json mismatches = ordered_json::array();
	for (const auto &m : r.mismatches)
		mismatches.push_back({{"monomial", m.monomial},
		                      {"expected", m.expected},
		                      {"computed", m.computed}});
	j["mismatches"] = mismatches;
	j["elapsed_ms"] = r.elapsed_ms;
	return j;
}

std::string report_to_text(const faber::CheckReport &r)
{
	std::ostringstream os;
	std::ostringstream params;
	for (const auto &[key, value] : r.params)
		params << key << "=" << value << " ";
	os << (r.pass ? "pass  " : "FAIL  ") << std::left << std::setw(14) << r.check
	   << std::setw(52) << params.str() << std::right << std::fixed
	   << std::setprecision(1) << std::setw(8) << r.elapsed_ms << " ms";
	for (const auto &m : r.mismatches) {
		os << "\n      [" << m.monomial << "] expected: " << m.expected
		   << "  computed: " << m.computed;
	}
	return os.str();
}

using Task = std::function<faber::CheckReport()>;

faber::CheckReport run_constant(int g)
{
	auto t0 = Clock::now();
	std::string value = faber::to_string(faber::faber_constant(g));
	faber::CheckReport r;
	r.check = "constants";
	r.params = {{"g", std::to_string(g)}};
	r.pass = true;
	r.expected = value;
	r.computed = value;
	r.elapsed_ms = ms_since(t0);
	return r;
}

faber::CheckReport run_faber(const faber::FaberInstance &inst, bool bench)
{
	auto t0 = Clock::now();
	faber::FaberSumStats stats = faber::direct_faber_sum_stats(inst);
	std::vector<std::pair<std::string, std::string>> params = {
	    {"g", std::to_string(inst.g)},
	    {"n", std::to_string(inst.n)},
	    {"a", join_ints(inst.a)}};
	if (bench) {
		params.push_back({"partitions", std::to_string(stats.partitions)});
		params.push_back({"products", std::to_string(stats.products)});
	}
	faber::CheckReport r = faber::compare_value_report(
	    "faber", std::move(params), faber::Rational(0), stats.value);
	r.elapsed_ms = ms_since(t0);
	return r;
}

faber::CheckReport run_proposition(const faber::FaberInstance &inst, bool bench)
{
	if (!bench)
		return faber::proposition_check(inst);
	auto t0 = Clock::now();
	faber::FaberSumStats stats = faber::direct_faber_sum_stats(inst);
	faber::Rational gf = faber::gf_faber_value(inst);
	faber::CheckReport r = faber::compare_value_report(
	    "proposition",
	    {{"g", std::to_string(inst.g)},
	     {"n", std::to_string(inst.n)},
	     {"a", join_ints(inst.a)},
	     {"direct_is_zero", sgn(stats.value) == 0 ? "true" : "false"},
	     {"gf_is_zero", sgn(gf) == 0 ? "true" : "false"},
	     {"partitions", std::to_string(stats.partitions)},
	     {"products", std::to_string(stats.products)},
	     {"s_terms", std::to_string(faber::build_S(inst).term_count())}},
	    stats.value, gf);
	r.elapsed_ms = ms_since(t0);
	return r;
}

void append_bench_terms(faber::CheckReport &r, const std::string &key,
                        std::size_t count)
{
	r.params.push_back({key, std::to_string(count)});
}

std::vector<Task> build_tasks(const RunConfig &cfg)
{
	std::vector<Task> tasks;
	const bool bench = cfg.bench;

	auto add_constants = [&] {
		for (int g = cfg.g_lo; g <= cfg.g_hi; ++g)
			tasks.push_back([g] { return run_constant(g); });
	};
	auto add_faber = [&] {
		for (int g = cfg.g_lo; g <= cfg.g_hi; ++g)
			for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
				for (const auto &inst : instances_for(g, n))
					tasks.push_back([inst, bench] { return run_faber(inst, bench); });
	};
	auto add_proposition = [&] {
		for (int g = cfg.g_lo; g <= cfg.g_hi; ++g)
			for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
				for (const auto &inst : instances_for(g, n))
					tasks.push_back(
					    [inst, bench] { return run_proposition(inst, bench); });
	};
	auto add_theorem = [&](int which) {
		for (int N : cfg.n_list) {
			int degree = cfg.degree;
			tasks.push_back([which, N, degree, bench] {
				faber::CheckReport r = which == 1
				                           ? faber::theorem1_check(N, N + 1, degree)
				                           : faber::theorem2_check(N, N + 1, degree);
				if (bench) {
					faber::PolySpec spec = faber::PolySpec::generic(N + 1);
					append_bench_terms(
					    r, "t_terms",
					    faber::build_T_explicit(faber::build_A(spec, degree), degree)
					        .term_count());
				}
				return r;
			});
		}
	};
	auto add_lemma = [&] {
		std::mt19937_64 rng(cfg.seed);
		for (int trial = 0; trial < cfg.trials; ++trial) {
			faber::PolySpec spec = faber::random_generic_spec(rng);
			int degree = cfg.degree;
			unsigned long long seed = cfg.seed;
			tasks.push_back([spec, degree, trial, seed, bench] {
				faber::CheckReport r = faber::lemma_check(spec, degree);
				r.params.push_back({"trial", std::to_string(trial)});
				r.params.push_back({"seed", std::to_string(seed)});
				if (bench)
					append_bench_terms(r, "w_terms",
					                   faber::solve_w(spec, +1, degree).term_count());
				return r;
			});
		}
	};
	auto add_consistency = [&] {
		for (int g = cfg.g_lo; g <= cfg.g_hi; ++g)
			for (int n = cfg.n_lo; n <= cfg.n_hi; ++n)
				for (const auto &inst : instances_for(g, n))
					tasks.push_back([inst, bench] {
						faber::CheckReport r = faber::t_s_consistency_check(inst);
						if (bench)
							append_bench_terms(r, "s_terms",
							                   faber::build_S(inst).term_count());
						return r;
					});
	};

	if (cfg.suite == "constants" || cfg.suite == "all")
		add_constants();
	if (cfg.suite == "faber" || cfg.suite == "all")
		add_faber();
	if (cfg.suite == "proposition" || cfg.suite == "all")
		add_proposition();
	if (cfg.suite == "theorem1" || cfg.suite == "all")
		add_theorem(1);
	if (cfg.suite == "theorem2" || cfg.suite == "all")
		add_theorem(2);
	if (cfg.suite == "lemma" || cfg.suite == "all")
		add_lemma();
	if (cfg.suite == "consistency" || cfg.suite == "all")
		add_consistency();

	if (cfg.inject_fault) {
		tasks.push_back([] {
			auto t0 = Clock::now();
			faber::TruncationPolicy policy = faber::square_zero_policy(1);
			faber::Exponent x1;
			x1.eps = {1};
			faber::CheckReport r = faber::compare_series_report(
			    "fault-injection", {{"note", "deliberately perturbed"}},
			    faber::Series(policy),
			    faber::Series::monomial(policy, 1, x1), {"x_1"});
			r.elapsed_ms = ms_since(t0);
			return r;
		});
	}
	return tasks;
}

int run(const RunConfig &cfg)
{
	std::vector<Task> tasks = build_tasks(cfg);
	std::vector<faber::CheckReport> results(tasks.size());

	std::atomic<std::size_t> next{0};
	std::atomic<bool> any_fail{false};
	std::mutex write_mutex;

	auto emit = [&](const faber::CheckReport &r) {
		if (cfg.format == "json")
			std::cout << report_to_json(r).dump() << "\n";
		else
			std::cout << report_to_text(r) << "\n";
	};

	auto worker = [&] {
		for (;;) {
			std::size_t i = next.fetch_add(1);
			if (i >= tasks.size())
				break;
			faber::CheckReport report;
			try {
				report = tasks[i]();
			} catch (const std::exception &e) {
				report.check = "internal-error";
				report.params = {{"what", e.what()}};
				report.pass = false;
				report.mismatches.push_back({"error", "no exception", e.what()});
			}
			if (!report.pass)
				any_fail = true;
			if (cfg.sorted) {
				results[i] = std::move(report);
			} else {
				std::lock_guard<std::mutex> lock(write_mutex);
				emit(report);
			}
		}
	};

	int width = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
	std::vector<std::thread> pool;
	for (int i = 1; i < width; ++i)
		pool.emplace_back(worker);
	worker();
	for (auto &t : pool)
		t.join();

	if (cfg.sorted)
		for (const auto &r : results)
			emit(r);

	return any_fail ? 1 : 0;
}

} // namespace

int main(int argc, char **argv)
{
	RunConfig cfg;
	std::string g_range = "2..3";
	std::string n_range = "2..4";

	CLI::App app{"exact verification of the generating-series identities "
	             "behind Faber's intersection number conjecture"};
	app.add_option("suite", cfg.suite, "which checks to run")
	    ->required()
	    ->check(CLI::IsMember({"faber", "proposition", "theorem1", "theorem2",
	                           "lemma", "consistency", "constants", "all"}));
	app.add_option("--g", g_range, "genus range A..B (default 2..3)");
	app.add_option("--n", n_range, "marked-point range A..B (default 2..4)");
	app.add_option("--N", cfg.n_list, "N values for the theorem suites")
	    ->delimiter(',');
	app.add_option("--degree", cfg.degree, "eps-degree truncation cap (default 3)");
	app.add_option("--trials", cfg.trials, "random trials for the lemma suite");
	app.add_option("--seed", cfg.seed, "seed for the lemma trials");
	app.add_option("--format", cfg.format, "text or json (json-lines)")
	    ->check(CLI::IsMember({"text", "json"}));
	app.add_option("--jobs", cfg.jobs, "parallel worker count (default 1)");
	app.add_flag("--bench", cfg.bench, "add work counters to each record");
	app.add_flag("--sorted", cfg.sorted, "emit records in deterministic order");
	app.add_flag("--inject-fault", cfg.inject_fault)->group("");

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return 2;
	}

	if (!parse_range(g_range, cfg.g_lo, cfg.g_hi) ||
	    !parse_range(n_range, cfg.n_lo, cfg.n_hi)) {
		std::cerr << "verify: invalid range (expected A or A..B with A <= B)\n";
		return 2;
	}
	bool needs_theorems = cfg.suite == "theorem1" || cfg.suite == "theorem2" ||
	                      cfg.suite == "all";
	if (cfg.g_lo < 2 || cfg.n_lo < 2 || cfg.degree < 1 || cfg.trials < 1 ||
	    cfg.jobs < 1 || cfg.n_list.empty()) {
		std::cerr << "verify: invalid configuration (need g >= 2, n >= 2, "
		             "degree >= 1, trials >= 1, jobs >= 1, nonempty N list)\n";
		return 2;
	}
	for (int N : cfg.n_list) {
		if (N < 1) {
			std::cerr << "verify: N values must be >= 1\n";
			return 2;
		}
	}
	if (needs_theorems && cfg.degree < 2) {
		std::cerr << "verify: theorem suites need --degree >= 2\n";
		return 2;
	}

	return run(cfg);
}
