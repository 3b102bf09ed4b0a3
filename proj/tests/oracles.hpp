#pragma once

// Brute-force reference implementations used only by the tests. None of
// these call into the library's algorithms beyond the plain value types.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/zp.hpp"

namespace oracle {

using rainbow::value_t;

inline value_t mod(value_t x, value_t p) { return ((x % p) + p) % p; }

/// Inverse by scanning 1..p-1.
inline value_t inverse_scan(value_t a, value_t p) {
    for (value_t r = 1; r < p; ++r)
        if (mod(a * r, p) == 1) return r;
    return 0;
}

inline std::set<value_t> to_set(const rainbow::ResidueSet& s) { return {s.begin(), s.end()}; }

/// All d != 0 with S = {a, a+d, ..., a+(n-1)d} for some anchor a, by listing
/// every progression explicitly.
inline std::set<value_t> ap_differences(const std::set<value_t>& s, value_t p) {
    std::set<value_t> out;
    const auto n = static_cast<value_t>(s.size());
    for (value_t d = 1; d < p; ++d)
        for (value_t a = 0; a < p; ++a) {
            std::set<value_t> ap;
            for (value_t i = 0; i < n; ++i) ap.insert(mod(a + i * d, p));
            if (ap == s) {
                out.insert(d);
                break;
            }
        }
    return out;
}

/// S is an AP with difference d, or S plus one missing term is.
inline bool almost_ap(const std::set<value_t>& s, value_t d, value_t p) {
    const auto n = static_cast<value_t>(s.size());
    for (value_t a = 0; a < p; ++a) {
        std::set<value_t> ap;
        for (value_t i = 0; i < n; ++i) ap.insert(mod(a + i * d, p));
        if (ap == s) return true;
        for (value_t skip = 0; skip <= n; ++skip) {
            std::set<value_t> holed;
            for (value_t i = 0; i <= n; ++i)
                if (i != skip) holed.insert(mod(a + i * d, p));
            if (static_cast<value_t>(holed.size()) == n && holed == s) return true;
        }
    }
    return false;
}

/// Rainbow test by scanning every (x, y, z) in Z_p^3 directly against the equation.
inline bool rainbow_free_cubic(std::array<value_t, 4> eq, value_t p, const std::vector<int>& labels) {
    for (value_t x = 0; x < p; ++x)
        for (value_t y = 0; y < p; ++y)
            for (value_t z = 0; z < p; ++z) {
                if (mod(eq[0] * x + eq[1] * y + eq[2] * z - eq[3], p) != 0) continue;
                int a = labels[static_cast<std::size_t>(x)], b = labels[static_cast<std::size_t>(y)],
                    c = labels[static_cast<std::size_t>(z)];
                if (a != b && b != c && a != c) return false;
            }
    return true;
}

/// Every surjective labeling of Z_p by base-3 counting (digit 0 most significant).
inline std::vector<std::vector<int>> all_colorings(value_t p) {
    std::vector<std::vector<int>> out;
    value_t total = 1;
    for (value_t i = 0; i < p; ++i) total *= 3;
    for (value_t code = 0; code < total; ++code) {
        std::vector<int> labels(static_cast<std::size_t>(p));
        value_t c = code;
        for (value_t i = p - 1; i >= 0; --i) {
            labels[static_cast<std::size_t>(i)] = static_cast<int>(c % 3);
            c /= 3;
        }
        std::array<bool, 3> used{};
        for (int l : labels) used[static_cast<std::size_t>(l)] = true;
        if (used[0] && used[1] && used[2]) out.push_back(std::move(labels));
    }
    return out;
}

inline std::vector<int> to_ints(const rainbow::Coloring& c) {
    std::vector<int> out;
    for (auto l : c.labels()) out.push_back(static_cast<int>(l));
    return out;
}

inline value_t binomial(value_t n, value_t k) {
    if (k < 0 || k > n) return 0;
    value_t r = 1;
    for (value_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Order of 2 modulo p by repeated doubling.
inline value_t order_of_two(value_t p) {
    value_t x = 2 % p, k = 1;
    while (x != 1) {
        x = x * 2 % p;
        ++k;
    }
    return k;
}

}  // namespace oracle
