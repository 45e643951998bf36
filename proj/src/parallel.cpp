#include "zlrr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace zlrr {

unsigned worker_count() {
    if (const char* env = std::getenv("ZLRR_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace {
thread_local bool t_in_shard = false;
}

bool in_sharded_region() { return t_in_shard; }

void run_sharded(unsigned n_shards, unsigned workers, const std::function<void(unsigned)>& fn) {
    if (workers <= 1 || n_shards <= 1) {
        for (unsigned s = 0; s < n_shards; ++s) fn(s);
        return;
    }
    std::atomic<unsigned> next{0};
    auto loop = [&] {
        bool prev = t_in_shard;
        t_in_shard = true;
        while (true) {
            unsigned s = next.fetch_add(1);
            if (s >= n_shards) break;
            fn(s);
        }
        t_in_shard = prev;
    };
    unsigned n_threads = workers < n_shards ? workers : n_shards;
    std::vector<std::thread> pool;
    pool.reserve(n_threads - 1);
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(loop);
    loop();
    for (auto& th : pool) th.join();
}

}  // namespace zlrr
