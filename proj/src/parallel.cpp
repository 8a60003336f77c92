#include "treeshift/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace treeshift {

namespace {
std::atomic<Exec> g_exec{
#ifdef _OPENMP
    Exec::parallel
#else
    Exec::serial
#endif
};
}  // namespace

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec e) { g_exec.store(e, std::memory_order_relaxed); }

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace treeshift
