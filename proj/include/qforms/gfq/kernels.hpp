#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qforms/gfq/field.hpp"

// Row kernels for elimination and products. Rows are byte arrays of element
// codes. Every variant must produce exactly the scalar result.
namespace qforms::gfq::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

// dst[i] += c * src[i]
using AxpyFn = void (*)(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c,
                        std::size_t n);
// dst[i] = c * dst[i]
using ScaleFn = void (*)(const Field& f, std::uint8_t* dst, std::uint8_t c, std::size_t n);

struct RowOps {
  Isa isa;
  AxpyFn axpy;
  ScaleFn scale;
};

const RowOps& scalar();
// Null when the variant was not compiled in or the CPU lacks it.
const RowOps* avx2();
const RowOps* neon();

// Best available variant, chosen once. QFORMS_SIMD=scalar|avx2|neon forces a
// choice (falls back to scalar if unavailable).
const RowOps& active();

namespace detail {
void axpy_scalar(const Field& f, std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
void scale_scalar(const Field& f, std::uint8_t* dst, std::uint8_t c, std::size_t n);
const RowOps* avx2_ops();
const RowOps* neon_ops();
}  // namespace detail

}  // namespace qforms::gfq::kernels
