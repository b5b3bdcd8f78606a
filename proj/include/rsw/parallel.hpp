#ifndef RSW_PARALLEL_HPP_
#define RSW_PARALLEL_HPP_

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rsw {

// Static row partitioning over [begin, end). Each index is processed by
// exactly one worker with read-only shared inputs, so results are
// bit-identical for any thread count. The first worker exception is rethrown
// on the calling thread.
template <class Fn>
void parallel_rows(int begin, int end, int threads, Fn&& fn) {
  const int n = end - begin;
  if (threads <= 1 || n < 2 * threads) {
    for (int j = begin; j < end; ++j) fn(j);
    return;
  }
  threads = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr err;
  std::mutex err_mutex;
  for (int w = 0; w < threads; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * w / threads);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
    pool.emplace_back([lo, hi, &fn, &err, &err_mutex] {
      try {
        for (int j = lo; j < hi; ++j) fn(j);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace rsw

#endif  // RSW_PARALLEL_HPP_
