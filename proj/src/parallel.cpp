#include "gridweave/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace gridweave {

std::size_t worker_count() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) {
        hw = 1;
    }
    if (const char* cap = std::getenv("GRIDWEAVE_THREADS")) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(cap, cap + std::strlen(cap), value);
        if (ec == std::errc{} && value > 0) {
            return std::min(hw, value);
        }
    }
    return hw;
}

}  // namespace gridweave
