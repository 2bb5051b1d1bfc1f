#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

namespace equiosc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Extended-real sum: any -inf summand makes the sum -inf, finite otherwise.
inline double ext_add(double a, double b) {
  if (a == kNegInf || b == kNegInf) return kNegInf;
  return a + b;
}

struct GoldenResult {
  double x = 0.0;
  double value = kNegInf;
};

/// Maximize a unimodal function on [lo, hi] by golden-section search.
/// Returns the best probed point; the value is the one actually evaluated
/// there (no extrapolation). -inf values are legal and compare low.
template <class F>
GoldenResult golden_max(F&& f, double lo, double hi, double tol_x) {
  GoldenResult best;
  if (!(hi > lo)) {
    best.x = lo;
    best.value = f(lo);
    return best;
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;  // 1/phi
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  auto consider = [&best](double x, double v) {
    if (v > best.value) {
      best.x = x;
      best.value = v;
    }
  };
  consider(c, fc);
  consider(d, fd);
  int guard = 200;
  while (b - a > tol_x && guard-- > 0) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  const double mid = 0.5 * (a + b);
  consider(mid, f(mid));
  return best;
}

/// Worker count: min(hardware, EQUIOSC_THREADS when set), at least 1.
inline int thread_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  if (const char* env = std::getenv("EQUIOSC_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && cap < 1024) hw = std::min(hw, static_cast<int>(cap));
  }
  return hw;
}

/// Run f(begin, end) over contiguous chunks of [0, count), possibly in
/// parallel. Results come back in chunk order so reductions stay
/// deterministic regardless of scheduling.
template <class R, class F>
std::vector<R> map_chunks(std::size_t count, F&& f) {
  const int workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  std::vector<R> results(workers);
  if (workers <= 1) {
    results[0] = f(std::size_t{0}, count);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * chunk);
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&results, &f, w, begin, end] { results[w] = f(begin, end); });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace equiosc
