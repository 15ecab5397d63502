#include "solidsum/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace solidsum {

namespace {

unsigned initial_thread_count()
{
    if (const char* env = std::getenv("SOLIDSUM_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return 1;
}

std::atomic<unsigned>& threads()
{
    static std::atomic<unsigned> n{initial_thread_count()};
    return n;
}

}  // namespace

unsigned thread_count()
{
    return threads().load();
}

void set_thread_count(unsigned n)
{
    threads().store(n == 0 ? 1 : n);
}

}  // namespace solidsum
