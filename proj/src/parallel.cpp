#include "trapsim/parallel.hpp"

#include <cstdlib>
#include <string>

namespace trapsim {

namespace {
std::atomic<int> g_threads{0};
}

int default_threads() {
    if (int t = g_threads.load(); t > 0) return t;
    if (const char* env = std::getenv("TRAPSIM_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t > 0) return t;
        } catch (...) {
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void set_default_threads(int threads) { g_threads.store(threads > 0 ? threads : 0); }

}  // namespace trapsim
