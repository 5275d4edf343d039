#include "starkcheck/bundle.hpp"

#include <string_view>
#include <utility>

namespace starkcheck {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFixtureTable[];
extern const unsigned kFixtureCount;
}  // namespace detail

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (unsigned i = 0; i < detail::kFixtureCount; ++i) out.emplace_back(detail::kFixtureTable[i].first);
    return out;
}

std::optional<std::string> fixture_text(const std::string& name) {
    for (unsigned i = 0; i < detail::kFixtureCount; ++i)
        if (detail::kFixtureTable[i].first == name) return std::string(detail::kFixtureTable[i].second);
    return std::nullopt;
}

}  // namespace starkcheck
