#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wrl {

// Thrown when a computation would exceed an enumeration or memory guard.
// The CLI maps this to exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(std::string quantity, std::uint64_t value, std::uint64_t limit)
        : std::runtime_error(quantity + " = " + std::to_string(value) +
                             " exceeds limit " + std::to_string(limit)),
          quantity_(std::move(quantity)) {}

    const std::string& quantity() const { return quantity_; }

private:
    std::string quantity_;
};

// Cap on exhaustive enumerations (|Z|^n, |Y|^n, |R|^n source sequences).
// Defaults to 2^20; override with the WRL_MAX_ENUM environment variable.
std::uint64_t max_enum();

// Cap on total stored codebook symbols (m0 * m * kr * n).
inline constexpr std::uint64_t kMaxCodeSymbols = std::uint64_t{1} << 24;

// Cap on work units for exact enumerations that visit every (sequence, codeword) pair.
inline constexpr std::uint64_t kMaxEnumWork = std::uint64_t{1} << 28;

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace wrl
