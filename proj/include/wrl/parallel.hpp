#pragma once

#include <cstddef>
#include <functional>

namespace wrl {

// Runs fn(0..count-1) on up to `threads` workers with a static block
// partition. Callers write results into per-index slots, which keeps outputs
// independent of the thread count.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace wrl
