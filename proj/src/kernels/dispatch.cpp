#include <cstdlib>
#include <string>

#include "qcluster/kernels.hpp"

namespace qcluster::kernels {

const KernelSet& active() {
    static const KernelSet& chosen = [] () -> const KernelSet& {
        const char* env = std::getenv("QCLUSTER_KERNELS");
        if (env && std::string(env) == "scalar") return scalar();
        if (const KernelSet* k = avx2()) return *k;
        if (const KernelSet* k = neon()) return *k;
        return scalar();
    }();
    return chosen;
}

}  // namespace qcluster::kernels
