#include "smoothprog/runtime.hpp"

#include <cstdlib>

namespace smoothprog {

unsigned worker_threads()
{
    if (const char* env = std::getenv("SMOOTHPROG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

} // namespace smoothprog
