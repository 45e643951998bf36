#pragma once

#include <functional>

namespace zlrr {

/// Worker cap: ZLRR_WORKERS when set (minimum 1), hardware concurrency
/// otherwise.
unsigned worker_count();

/// Runs fn(shard) for shard = 0..n_shards-1 on up to `workers` threads.
/// Shards are fixed work units; callers merge results in shard order so the
/// outcome does not depend on the thread count.
void run_sharded(unsigned n_shards, unsigned workers, const std::function<void(unsigned)>& fn);

/// True while the calling thread is running a shard. Inner computations use
/// this to skip their own branch-level parallelism instead of oversubscribing.
bool in_sharded_region();

}  // namespace zlrr
