#include "biharm/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace biharm {

unsigned thread_count()
{
    if (const char* env = std::getenv(kThreadsEnvVar)) {
        unsigned n = 0;
        const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
        if (ec == std::errc{} && n > 0) {
            return n;
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace biharm
