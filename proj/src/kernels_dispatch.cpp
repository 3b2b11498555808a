#include "rpsim/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace rpsim::kernels {

static const Table& choose() {
    const char* req = std::getenv("RPSIM_KERNEL");
    if (req != nullptr) {
        if (std::strcmp(req, "scalar") == 0) return scalar_table();
        if (std::strcmp(req, "avx2") == 0) {
            if (const Table* t = avx2_table()) return *t;
            std::fprintf(stderr, "rpsim: RPSIM_KERNEL=avx2 requested but unsupported; using scalar\n");
            return scalar_table();
        }
        std::fprintf(stderr, "rpsim: unknown RPSIM_KERNEL '%s'; using auto detection\n", req);
    }
    if (const Table* t = avx2_table()) return *t;
    return scalar_table();
}

const Table& active() {
    static const Table& t = choose();
    return t;
}

}  // namespace rpsim::kernels
