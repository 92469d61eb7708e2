#include <cstdlib>
#include <string>

#include "qforms/gfq/kernels.hpp"

namespace qforms::gfq::kernels {

namespace detail {

void axpy_scalar(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  const std::uint8_t* mul = f.mul_row(Elem{c});
  if (f.p() == 2) {
    for (std::size_t i = 0; i < n; ++i) dst[i] ^= mul[src[i]];
    return;
  }
  const std::uint8_t* add = f.add_table();
  const std::size_t q = f.q();
  for (std::size_t i = 0; i < n; ++i) dst[i] = add[dst[i] * q + mul[src[i]]];
}

void scale_scalar(const Field& f, std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  const std::uint8_t* mul = f.mul_row(Elem{c});
  for (std::size_t i = 0; i < n; ++i) dst[i] = mul[dst[i]];
}

#if !defined(QFORMS_HAVE_AVX2)
const RowOps* avx2_ops() { return nullptr; }
#endif
#if !defined(QFORMS_HAVE_NEON)
const RowOps* neon_ops() { return nullptr; }
#endif

}  // namespace detail

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const RowOps& scalar() {
  static const RowOps ops{Isa::Scalar, &detail::axpy_scalar, &detail::scale_scalar};
  return ops;
}

const RowOps* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
  return detail::avx2_ops();
}

const RowOps* neon() { return detail::neon_ops(); }

const RowOps& active() {
  static const RowOps* chosen = [] {
    const char* env = std::getenv("QFORMS_SIMD");
    const std::string want = env ? env : "";
    if (want == "scalar") return &scalar();
    if (want == "avx2") return avx2() ? avx2() : &scalar();
    if (want == "neon") return neon() ? neon() : &scalar();
    if (const RowOps* a = avx2()) return a;
    if (const RowOps* n = neon()) return n;
    return &scalar();
  }();
  return *chosen;
}

}  // namespace qforms::gfq::kernels
