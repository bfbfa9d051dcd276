#include "pretor/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace pretor {

int parallel_chunks(std::int64_t n,
                    const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return 0;

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  // Small ranges are not worth a thread launch.
  std::int64_t min_chunk = 4096;
  int chunks = static_cast<int>(
      std::min<std::int64_t>(hw, std::max<std::int64_t>(1, n / min_chunk)));

  if (chunks <= 1) {
    fn(0, 0, n);
    return 1;
  }

  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(chunks));
  std::int64_t per = n / chunks;
  std::int64_t rem = n % chunks;
  std::int64_t begin = 0;
  for (int c = 0; c < chunks; ++c) {
    std::int64_t len = per + (c < rem ? 1 : 0);
    std::int64_t end = begin + len;
    workers.emplace_back([c, begin, end, &fn] { fn(c, begin, end); });
    begin = end;
  }
  for (auto& w : workers) w.join();
  return chunks;
}

}  // namespace pretor
