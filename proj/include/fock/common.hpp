#pragma once

#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fock {

inline constexpr double pi = 3.14159265358979323846;

/// A point in the plane. Doubles as a translation vector.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator-(Point a) { return {-a.x, -a.y}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline bool is_origin(Point a) { return a.x == 0.0 && a.y == 0.0; }

inline std::complex<double> to_complex(Point a) { return {a.x, a.y}; }
inline Point to_point(std::complex<double> z) { return {z.real(), z.imag()}; }

/// Thrown when an iterative evaluation fails to meet its internal tolerance.
class non_convergence_error : public std::runtime_error {
 public:
  explicit non_convergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

// Probability-like results are clamped to [0,1]; excursions beyond round-off
// indicate a bug, not cancellation, and must not be silently absorbed.
inline double clamp01(double v, const char* what) {
  if (v < -1e-10 || v > 1.0 + 1e-10)
    throw std::logic_error(std::string(what) +
                           ": value outside [0,1] beyond round-off: " +
                           std::to_string(v));
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

inline std::atomic<int>& thread_count_ref() {
  static std::atomic<int> n{1};
  return n;
}

}  // namespace detail

inline void set_thread_count(int n) {
  detail::thread_count_ref().store(n < 1 ? 1 : n);
}
inline int thread_count() { return detail::thread_count_ref().load(); }

/// Runs body(i) for i in [0,n). Each index must write only to its own slot;
/// callers reduce sequentially afterwards, so results do not depend on the
/// thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex err_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace fock
