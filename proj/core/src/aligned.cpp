#include "nls4/common.hpp"

#include <cstdlib>

namespace nls4 {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_configuration: return "invalid-configuration";
    case ErrorKind::numeric_domain: return "numeric-domain";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::quadrature: return "quadrature";
    case ErrorKind::aborted_run: return "aborted-run";
    case ErrorKind::term_budget: return "term-budget";
    case ErrorKind::singularity: return "resonant-singularity";
    case ErrorKind::off_hyperplane: return "off-hyperplane";
    case ErrorKind::inconclusive_fit: return "inconclusive-fit";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

void* aligned_allocate(std::size_t bytes) {
  constexpr std::size_t align = 64;
  std::size_t rounded = (bytes + align - 1) / align * align;
  if (rounded == 0) rounded = align;
  void* p = std::aligned_alloc(align, rounded);
  if (!p) throw std::bad_alloc();
  return p;
}

void aligned_free(void* p) noexcept { std::free(p); }

}  // namespace nls4
