// AArch64 counterpart of the AVX2 kernels. Same table-lookup scheme, 16 lanes.
#include <arm_neon.h>

#include <array>

#include "qforms/gfq/kernels.hpp"

namespace qforms::gfq::kernels::detail {

namespace {

struct NibbleTables {
  uint8x16_t lo;
  uint8x16_t hi;
};

NibbleTables char2_tables(const Field& f, std::uint8_t c) {
  std::array<std::uint8_t, 16> lo{};
  std::array<std::uint8_t, 16> hi{};
  const std::uint8_t* mul = f.mul_row(Elem{c});
  for (std::uint32_t x = 0; x < 16; ++x) {
    if (x < f.q()) lo[x] = mul[x];
    if ((x << 4) < f.q()) hi[x] = mul[x << 4];
  }
  return {vld1q_u8(lo.data()), vld1q_u8(hi.data())};
}

inline uint8x16_t char2_mul(const NibbleTables& t, uint8x16_t x) {
  const uint8x16_t lo = vandq_u8(x, vdupq_n_u8(0x0F));
  const uint8x16_t hi = vshrq_n_u8(x, 4);
  return veorq_u8(vqtbl1q_u8(t.lo, lo), vqtbl1q_u8(t.hi, hi));
}

uint8x16_t prime_table(const Field& f, std::uint8_t c) {
  std::array<std::uint8_t, 16> tab{};
  const std::uint8_t* mul = f.mul_row(Elem{c});
  for (std::uint32_t x = 0; x < f.p(); ++x) tab[x] = mul[x];
  return vld1q_u8(tab.data());
}

bool prime_simd_ok(const Field& f) { return f.is_prime_field() && f.p() > 2 && f.p() <= 13; }

void axpy_neon(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  std::size_t i = 0;
  if (f.p() == 2) {
    const NibbleTables t = char2_tables(f, c);
    for (; i + 16 <= n; i += 16) {
      vst1q_u8(dst + i, veorq_u8(vld1q_u8(dst + i), char2_mul(t, vld1q_u8(src + i))));
    }
  } else if (prime_simd_ok(f)) {
    const uint8x16_t tab = prime_table(f, c);
    const uint8x16_t p = vdupq_n_u8(static_cast<std::uint8_t>(f.p()));
    for (; i + 16 <= n; i += 16) {
      const uint8x16_t sum = vaddq_u8(vld1q_u8(dst + i), vqtbl1q_u8(tab, vld1q_u8(src + i)));
      vst1q_u8(dst + i, vminq_u8(sum, vsubq_u8(sum, p)));
    }
  }
  if (i < n) axpy_scalar(f, dst + i, src + i, c, n - i);
}

void scale_neon(const Field& f, std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  std::size_t i = 0;
  if (f.p() == 2) {
    const NibbleTables t = char2_tables(f, c);
    for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, char2_mul(t, vld1q_u8(dst + i)));
  } else if (prime_simd_ok(f)) {
    const uint8x16_t tab = prime_table(f, c);
    for (; i + 16 <= n; i += 16) vst1q_u8(dst + i, vqtbl1q_u8(tab, vld1q_u8(dst + i)));
  }
  if (i < n) scale_scalar(f, dst + i, c, n - i);
}

}  // namespace

const RowOps* neon_ops() {
  static const RowOps ops{Isa::Neon, &axpy_neon, &scale_neon};
  return &ops;
}

}  // namespace qforms::gfq::kernels::detail
