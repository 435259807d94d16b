#pragma once

#include <cstddef>
#include <functional>

namespace htc {

/// Worker cap for sweeps: HTC_THREADS when set (minimum 1), otherwise the
/// hardware concurrency.
std::size_t sweep_thread_cap();

/// Runs fn(0) .. fn(n-1) on up to `threads` workers. Tasks own their work by
/// index, so output ordering and therefore results are independent of the
/// schedule. Exceptions are rethrown on the caller thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

}  // namespace htc
