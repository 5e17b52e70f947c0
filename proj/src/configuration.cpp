#include "msyds/configuration.hpp"

#include <bit>
#include <charconv>

#include "msyds/errors.hpp"

namespace msyds {

Configuration Configuration::from_code(std::uint64_t code, std::size_t n) {
    if (n < 64 && (code >> n))
        throw ContractError("from_code: code out of range for " + std::to_string(n) + " nodes");
    Configuration c(n);
    if (!c.words_.empty()) c.words_[0] = code;
    return c;
}

Configuration Configuration::from_string(std::string_view text, std::size_t n) {
    if (!text.empty() && text[0] == '@') {
        std::uint64_t code = 0;
        auto rest = text.substr(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), code);
        if (ec != std::errc{} || ptr != rest.data() + rest.size())
            throw ParseError("configuration: bad integer code '" + std::string(text) + "'");
        if (n < 64 && (code >> n))
            throw ParseError("configuration: code " + std::to_string(code) +
                             " out of range for " + std::to_string(n) + " nodes");
        return from_code(code, n);
    }
    if (text.size() != n)
        throw ParseError("configuration: expected " + std::to_string(n) +
                         " characters, got " + std::to_string(text.size()));
    Configuration c(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (text[i] == '1')
            c.set(static_cast<NodeId>(i), true);
        else if (text[i] != '0')
            throw ParseError("configuration: bad character at position " + std::to_string(i));
    }
    return c;
}

std::size_t Configuration::popcount() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::uint64_t Configuration::code() const {
    if (n_ > 64) throw ContractError("code: system has more than 64 nodes");
    return words_.empty() ? 0 : words_[0];
}

std::string Configuration::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (get(static_cast<NodeId>(i))) s[i] = '1';
    return s;
}

std::strong_ordering Configuration::operator<=>(const Configuration& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (auto c = words_[i] <=> other.words_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::size_t Configuration::hash() const {
    std::size_t h = n_;
    for (auto w : words_) h = h * 1099511628211ULL + static_cast<std::size_t>(w);
    return h;
}

} // namespace msyds
