#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace qcluster::kernels {

/// sum_i a[i]*b[i], exact in int64
using DotFn = std::int64_t (*)(const std::int32_t* a, const std::int32_t* b, std::size_t n);
/// out[i] = a[i] + s*b[i]
using AxpyFn = void (*)(const std::int32_t* a, const std::int32_t* b, std::int32_t s, std::int32_t* out,
                        std::size_t n);

struct KernelSet {
    const char* name;
    DotFn dot;
    AxpyFn axpy;
};

const KernelSet& scalar();
/// nullptr when the build or the CPU lacks the instruction set
const KernelSet* avx2();
const KernelSet* neon();

/// The set chosen at first use: best available unless QCLUSTER_KERNELS=scalar.
const KernelSet& active();

inline std::int64_t dot(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline void axpy(const std::int32_t* a, const std::int32_t* b, std::int32_t s, std::int32_t* out, std::size_t n) {
    active().axpy(a, b, s, out, n);
}

}  // namespace qcluster::kernels
