#include "ffmoments/parallel.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace ffm {

int resolve_threads(int threads) {
    if (threads < 0) threads = 1;
    if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return threads;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), n);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(w);
    std::vector<std::size_t> error_at(w, std::numeric_limits<std::size_t>::max());
    auto run = [&](std::size_t shard) {
        const std::size_t lo = n * shard / w, hi = n * (shard + 1) / w;
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[shard] = std::current_exception();
                error_at[shard] = i;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(w - 1);
    for (std::size_t s = 1; s < w; ++s) pool.emplace_back(run, s);
    run(0);
    for (auto& t : pool) t.join();
    // shards are ordered, so the first failing shard holds the smallest index
    for (std::size_t s = 0; s < w; ++s)
        if (errors[s]) std::rethrow_exception(errors[s]);
}

}  // namespace ffm
