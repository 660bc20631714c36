#include "qcluster/kernels.hpp"

namespace qcluster::kernels {

namespace {

std::int64_t dot_scalar(const std::int32_t* a, const std::int32_t* b, std::size_t n) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::int64_t>(a[i]) * b[i];
    return s;
}

void axpy_scalar(const std::int32_t* a, const std::int32_t* b, std::int32_t s, std::int32_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + s * b[i];
}

}  // namespace

const KernelSet& scalar() {
    static const KernelSet k{"scalar", dot_scalar, axpy_scalar};
    return k;
}

}  // namespace qcluster::kernels
