#pragma once

#include <cstddef>
#include <functional>

namespace surftex::detail {

/// Runs fn(0..count-1) on up to `threads` workers pulling indices from a
/// shared counter. The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace surftex::detail
