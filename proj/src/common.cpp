#include "wrl/common.hpp"

#include <cstdlib>

namespace wrl {

std::uint64_t max_enum() {
    static const std::uint64_t limit = [] {
        if (const char* env = std::getenv("WRL_MAX_ENUM")) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1} << 20;
    }();
    return limit;
}

}  // namespace wrl
