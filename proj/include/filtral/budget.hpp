#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace filtral {

/// Resource caps shared by the search-heavy operations. Values can be
/// overridden per-call, via subcategory config files, or globally through the
/// FILTRAL_BUDGET environment variable (a JSON object, see io_json.hpp).
struct Budget {
    int pd_cutoff = 12;
    long submodule_cap = 100000;
    long sweep_cap = 1L << 20;   // endomorphism/hom coefficient sweeps
    long enum_cap = 4000000;     // brute-force representation tuples per dimension vector
    int closure_samples = 200;   // short exact sequences per closure check
    unsigned long seed = 12345;  // RNG seed for sampled checks
    int threads = 1;
};

/// Runs fn(i) for i in [0, n). Each call must touch only its own output slot;
/// chunks are handed out dynamically but results are index-addressed, so the
/// outcome is independent of the thread count.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn)
{
    if (threads <= 1 || n < 64) {
        for (long i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<long> next{0};
    const long chunk = std::max(1L, n / (static_cast<long>(threads) * 8));
    auto worker = [&]() {
        for (;;) {
            long begin = next.fetch_add(chunk);
            if (begin >= n)
                return;
            long end = std::min(n, begin + chunk);
            for (long i = begin; i < end; ++i)
                fn(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace filtral
