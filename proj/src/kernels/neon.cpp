#include "qcluster/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace qcluster::kernels {

namespace {

std::int64_t dot_neon(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    int64x2_t acc = vdupq_n_s64(0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        int32x4_t va = vld1q_s32(a + i);
        int32x4_t vb = vld1q_s32(b + i);
        acc = vmlal_s32(acc, vget_low_s32(va), vget_low_s32(vb));
        acc = vmlal_high_s32(acc, va, vb);
    }
    std::int64_t s = vaddvq_s64(acc);
    for (; i < n; ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
    return s;
}

void axpy_neon(const std::int32_t* a, const std::int32_t* b, std::int32_t s, std::int32_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vst1q_s32(out + i, vmlaq_n_s32(vld1q_s32(a + i), vld1q_s32(b + i), s));
    for (; i < n; ++i) out[i] = a[i] + s * b[i];
}

}  // namespace

const KernelSet* neon() {
    static const KernelSet k{"neon", dot_neon, axpy_neon};
    return &k;
}

}  // namespace qcluster::kernels

#else

namespace qcluster::kernels {
const KernelSet* neon() { return nullptr; }
}  // namespace qcluster::kernels

#endif
