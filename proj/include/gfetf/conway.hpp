#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace gfetf {

struct ConwayEntry {
    std::uint32_t p;
    std::uint32_t e;
    std::vector<std::uint32_t> coeffs;  // ascending, monic
};

namespace detail {

// Conway polynomials C_{p,e}, coefficients ascending (constant term first).
inline const std::vector<ConwayEntry>& conway_table() {
    static const std::vector<ConwayEntry> table = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 14, {1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 15, {1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 16, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 17, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 18, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
    {2, 19, {1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 20, {1, 1, 0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 21, {1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 22, {1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 23, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 24, {1, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 2, 1, 0, 2, 0, 1}},
    {3, 7, {1, 0, 2, 0, 0, 0, 0, 1}},
    {3, 8, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
    {3, 9, {1, 1, 2, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1}},
    {3, 11, {1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 12, {2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1}},
    {3, 13, {1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {5, 5, {3, 4, 0, 0, 0, 1}},
    {5, 6, {2, 0, 1, 4, 1, 0, 1}},
    {5, 7, {3, 3, 0, 0, 0, 0, 0, 1}},
    {5, 8, {2, 4, 3, 0, 1, 0, 0, 0, 1}},
    {5, 9, {3, 1, 0, 2, 0, 0, 0, 0, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
    {7, 4, {3, 4, 5, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {7, 6, {3, 6, 4, 5, 1, 0, 1}},
    {7, 7, {4, 6, 0, 0, 0, 0, 0, 1}},
    {7, 8, {3, 2, 6, 4, 0, 0, 0, 0, 1}},
    {11, 1, {9, 1}},
    {11, 2, {2, 7, 1}},
    {11, 3, {9, 2, 0, 1}},
    {11, 4, {2, 10, 8, 0, 1}},
    {11, 5, {9, 0, 10, 0, 0, 1}},
    {11, 6, {2, 7, 6, 4, 3, 0, 1}},
    {13, 1, {11, 1}},
    {13, 2, {2, 12, 1}},
    {13, 3, {11, 2, 0, 1}},
    {13, 4, {2, 12, 3, 0, 1}},
    {13, 5, {11, 4, 0, 0, 0, 1}},
    {13, 6, {2, 11, 11, 10, 0, 0, 1}},
    };
    return table;
}

}  // namespace detail

/// Looks up C_{p,e}; empty when the bundled table has no entry.
inline std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, std::uint32_t e) {
    for (const auto& entry : detail::conway_table())
        if (entry.p == p && entry.e == e) return entry.coeffs;
    return std::nullopt;
}

inline std::span<const ConwayEntry> conway_entries() { return detail::conway_table(); }

}  // namespace gfetf
