#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace nls4 {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class ErrorKind {
  invalid_configuration,
  numeric_domain,
  resolution,
  quadrature,
  aborted_run,
  term_budget,
  singularity,
  off_hyperplane,
  inconclusive_fit,
  io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

void* aligned_allocate(std::size_t bytes);
void aligned_free(void* p) noexcept;

// 64-byte aligned storage so FFT plans made on one buffer can run on any other.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(aligned_allocate(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) noexcept { aligned_free(p); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

using CVec = std::vector<cplx, AlignedAllocator<cplx>>;

}  // namespace nls4
