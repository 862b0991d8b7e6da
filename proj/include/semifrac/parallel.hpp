#pragma once

#include <cstddef>
#include <functional>

namespace semifrac {

/// Calls fn(i) for i in [0, n) on up to `threads` workers (threads <= 1 runs inline).
/// Indices are handed out dynamically; fn must only write state owned by index i.
/// The first exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace semifrac
