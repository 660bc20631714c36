#include "qcluster/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace qcluster::kernels {

namespace {

__attribute__((target("avx2"))) std::int64_t dot_avx2(const std::int32_t* a, const std::int32_t* b,
                                                      std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // widen to 64-bit lanes so the products stay exact
        __m256i va = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
        __m256i vb = _mm256_cvtepi32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
        acc = _mm256_add_epi64(acc, _mm256_mul_epi32(va, vb));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::int64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
    return s;
}

__attribute__((target("avx2"))) void axpy_avx2(const std::int32_t* a, const std::int32_t* b, std::int32_t s,
                                               std::int32_t* out, std::size_t n) {
    const __m256i vs = _mm256_set1_epi32(s);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_add_epi32(va, _mm256_mullo_epi32(vb, vs)));
    }
    for (; i < n; ++i) out[i] = a[i] + s * b[i];
}

}  // namespace

const KernelSet* avx2() {
    static const KernelSet k{"avx2", dot_avx2, axpy_avx2};
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? &k : nullptr;
}

}  // namespace qcluster::kernels

#else

namespace qcluster::kernels {
const KernelSet* avx2() { return nullptr; }
}  // namespace qcluster::kernels

#endif
