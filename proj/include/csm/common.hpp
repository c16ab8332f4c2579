#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace csm {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape/contract violations in tensor math or network wiring.
struct ShapeError : Error {
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// File system / decoding failures.
struct IOError : Error {
  explicit IOError(const std::string& msg) : Error(msg) {}
};

// Malformed file contents (wrong magic, version, bit depth, ...).
struct FormatError : Error {
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

// ---------------------------------------------------------------------------
// Shape
// ---------------------------------------------------------------------------

// Dense row-major extents, between 1 and 5 dimensions.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<int> dims) : dims_(dims) { validate(); }
  explicit Shape(std::vector<int> dims) : dims_(std::move(dims)) { validate(); }

  int rank() const { return static_cast<int>(dims_.size()); }
  int operator[](int i) const { return dims_[static_cast<size_t>(i)]; }
  int back() const { return dims_.back(); }
  const std::vector<int>& dims() const { return dims_; }

  std::int64_t numel() const {
    std::int64_t n = 1;
    for (int d : dims_) n *= d;
    return n;
  }

  bool operator==(const Shape& o) const { return dims_ == o.dims_; }
  bool operator!=(const Shape& o) const { return dims_ != o.dims_; }

  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < dims_.size(); ++i) {
      if (i) os << 'x';
      os << dims_[i];
    }
    return os.str();
  }

 private:
  void validate() const {
    if (dims_.empty() || dims_.size() > 5)
      throw ShapeError("tensor rank must be between 1 and 5, got " +
                       std::to_string(dims_.size()));
    for (int d : dims_)
      if (d <= 0)
        throw ShapeError("all dimension sizes must be positive, got " + str());
  }

  std::vector<int> dims_;
};

// ---------------------------------------------------------------------------
// Rng
// ---------------------------------------------------------------------------

// Deterministic random source. Built on mt19937 (whose stream is fully
// specified) with hand-rolled uniform/normal mappings so sequences are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : gen_(static_cast<std::uint32_t>(seed ^ (seed >> 32))) {}

  std::uint32_t next_u32() { return gen_(); }

  // Uniform in (0,1).
  double uniform() {
    return (static_cast<double>(next_u32()) + 0.5) * (1.0 / 4294967296.0);
  }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    if (hi < lo) throw Error("uniform_int: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    return lo + static_cast<int>(static_cast<std::uint64_t>(uniform() * static_cast<double>(span)) % span);
  }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 6.283185307179586476925 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Parallel helper
// ---------------------------------------------------------------------------

// Library-wide worker count. Forward passes split work across disjoint output
// regions with a fixed per-element reduction order, so results are identical
// for any thread count.
inline int& thread_count_ref() {
  static int n = 1;
  return n;
}
inline void set_num_threads(int n) { thread_count_ref() = n < 1 ? 1 : n; }
inline int num_threads() { return thread_count_ref(); }

// Runs fn(begin, end) over [0, n) split across the configured worker count.
template <typename Fn>
void parallel_for(std::int64_t n, Fn&& fn) {
  int workers = num_threads();
  if (workers <= 1 || n < 2) {
    if (n > 0) fn(std::int64_t{0}, n);
    return;
  }
  if (workers > n) workers = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int t = 0; t < workers; ++t) {
    std::int64_t b = t * chunk;
    std::int64_t e = b + chunk < n ? b + chunk : n;
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace csm
