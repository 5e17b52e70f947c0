#ifndef MSYDS_CONFIGURATION_HPP
#define MSYDS_CONFIGURATION_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace msyds {

using NodeId = std::uint32_t;

/// One Boolean state per node. Bit i is the state of node i; integer
/// encodings treat node 0 as the least-significant bit.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static Configuration from_code(std::uint64_t code, std::size_t n);
    // Parses "0110..." (character i = node i) or "@N" (integer code).
    // Throws ParseError on bad characters or length mismatch.
    static Configuration from_string(std::string_view text, std::size_t n);

    std::size_t size() const { return n_; }

    bool get(NodeId i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(NodeId i, bool value) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t popcount() const;

    // Integer code; requires n <= 64.
    std::uint64_t code() const;

    std::string to_string() const;

    bool operator==(const Configuration& other) const = default;

    // Numeric order on the encoded integer (works for any n).
    std::strong_ordering operator<=>(const Configuration& other) const;

    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const { return c.hash(); }
};

} // namespace msyds

#endif
