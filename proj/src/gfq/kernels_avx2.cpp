// Compiled with -mavx2; only reached after a runtime cpuid check.
#include <immintrin.h>

#include <array>

#include "qforms/gfq/kernels.hpp"

namespace qforms::gfq::kernels::detail {

namespace {

struct NibbleTables {
  __m256i lo;
  __m256i hi;
};

// Multiplication by c is additive, and in characteristic 2 an element code
// is its coefficient bit vector, so c*x = c*(x & 15) ^ c*(x & 0xF0).
NibbleTables char2_tables(const Field& f, std::uint8_t c) {
  alignas(16) std::array<std::uint8_t, 16> lo{};
  alignas(16) std::array<std::uint8_t, 16> hi{};
  const std::uint8_t* mul = f.mul_row(Elem{c});
  for (std::uint32_t x = 0; x < 16; ++x) {
    if (x < f.q()) lo[x] = mul[x];
    if ((x << 4) < f.q()) hi[x] = mul[x << 4];
  }
  const __m128i l = _mm_load_si128(reinterpret_cast<const __m128i*>(lo.data()));
  const __m128i h = _mm_load_si128(reinterpret_cast<const __m128i*>(hi.data()));
  return {_mm256_broadcastsi128_si256(l), _mm256_broadcastsi128_si256(h)};
}

inline __m256i char2_mul(const NibbleTables& t, __m256i x) {
  const __m256i mask = _mm256_set1_epi8(0x0F);
  const __m256i lo = _mm256_and_si256(x, mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(x, 4), mask);
  return _mm256_xor_si256(_mm256_shuffle_epi8(t.lo, lo), _mm256_shuffle_epi8(t.hi, hi));
}

// Small prime fields: codes are < p <= 13, so one shuffle does the product.
__m256i prime_table(const Field& f, std::uint8_t c) {
  alignas(16) std::array<std::uint8_t, 16> tab{};
  const std::uint8_t* mul = f.mul_row(Elem{c});
  for (std::uint32_t x = 0; x < f.p(); ++x) tab[x] = mul[x];
  return _mm256_broadcastsi128_si256(_mm_load_si128(reinterpret_cast<const __m128i*>(tab.data())));
}

bool prime_simd_ok(const Field& f) { return f.is_prime_field() && f.p() > 2 && f.p() <= 13; }

void axpy_avx2(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  std::size_t i = 0;
  if (f.p() == 2) {
    const NibbleTables t = char2_tables(f, c);
    for (; i + 32 <= n; i += 32) {
      const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, char2_mul(t, s)));
    }
  } else if (prime_simd_ok(f)) {
    const __m256i tab = prime_table(f, c);
    const __m256i p = _mm256_set1_epi8(static_cast<char>(f.p()));
    for (; i + 32 <= n; i += 32) {
      const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      const __m256i sum = _mm256_add_epi8(d, _mm256_shuffle_epi8(tab, s));
      // sum < 2p; when sum < p the subtraction wraps above it.
      const __m256i red = _mm256_min_epu8(sum, _mm256_sub_epi8(sum, p));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), red);
    }
  }
  if (i < n) axpy_scalar(f, dst + i, src + i, c, n - i);
}

void scale_avx2(const Field& f, std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  std::size_t i = 0;
  if (f.p() == 2) {
    const NibbleTables t = char2_tables(f, c);
    for (; i + 32 <= n; i += 32) {
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), char2_mul(t, d));
    }
  } else if (prime_simd_ok(f)) {
    const __m256i tab = prime_table(f, c);
    for (; i + 32 <= n; i += 32) {
      const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_shuffle_epi8(tab, d));
    }
  }
  if (i < n) scale_scalar(f, dst + i, c, n - i);
}

}  // namespace

const RowOps* avx2_ops() {
  static const RowOps ops{Isa::Avx2, &axpy_avx2, &scale_avx2};
  return &ops;
}

}  // namespace qforms::gfq::kernels::detail
