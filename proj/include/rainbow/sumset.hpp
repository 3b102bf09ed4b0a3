#pragma once

/**
 * @file sumset.hpp
 * @brief Sumsets in Z_p and executable checks of the inverse theorems used
 * by the characterization: Cauchy-Davenport, Vosper, Hamidoune-Rodseth, and
 * the dilation lemma for unions of two progressions.
 *
 * Detectors return a concrete difference d so callers can re-verify it.
 * Scans report violations through a callback as they are found; an empty
 * report is the passing condition.
 */

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rainbow/zp.hpp"

namespace rainbow {

inline ResidueSet sumset(const ResidueSet& x, const ResidueSet& y) {
    if (x.empty() || y.empty()) throw DomainError("sumset of an empty set");
    const Modulus m = x.modulus();
    const value_t p = m.value();
    std::vector<char> present(static_cast<std::size_t>(p), 0);
    for (value_t a : x)
        for (value_t b : y) {
            value_t s = a + b;
            present[static_cast<std::size_t>(s >= p ? s - p : s)] = 1;
        }
    std::vector<value_t> out;
    for (value_t i = 0; i < p; ++i)
        if (present[static_cast<std::size_t>(i)]) out.push_back(i);
    return {m, std::move(out)};
}

struct SumsetWindow {
    ResidueSet x, y, sum;
    std::size_t lower;  ///< |X| + |Y| - 1
    std::size_t upper;  ///< |X| + |Y|
};

inline SumsetWindow sumset_window(const ResidueSet& x, const ResidueSet& y) {
    return {x, y, sumset(x, y), x.size() + y.size() - 1, x.size() + y.size()};
}

/// |X+Y| >= min(p, |X|+|Y|-1); always true, exposed as a test hook.
inline bool cd_check(const ResidueSet& x, const ResidueSet& y) {
    const ResidueSet s = sumset(x, y);
    return static_cast<value_t>(s.size()) == x.modulus().value() || s.size() + 1 >= x.size() + y.size();
}

/// Outcome of a structure detector.
struct Witness {
    enum class Status { found, not_applicable, missing };
    Status status;
    std::optional<Residue> d;

    bool ok() const noexcept { return status != Status::missing; }
};

/// For a critical pair |X+Y| = |X|+|Y|-1 <= p-2, a common progression difference.
inline Witness vosper_witness(const ResidueSet& x, const ResidueSet& y) {
    if (x.size() < 2 || y.size() < 2) throw DomainError("Vosper detector needs |X|, |Y| >= 2");
    const value_t p = x.modulus().value();
    const std::size_t n = sumset(x, y).size();
    if (n + 1 != x.size() + y.size() || static_cast<value_t>(n) > p - 2)
        return {Witness::Status::not_applicable, std::nullopt};
    const ResidueSet dy = ap_difference(y);
    for (value_t d : ap_difference(x))
        if (dy.contains(d)) return {Witness::Status::found, Residue(d, x.modulus())};
    return {Witness::Status::missing, std::nullopt};
}

/// For 7 <= |X+Y| = |X|+|Y| <= p-4, a common almost-progression difference.
inline Witness hr_witness(const ResidueSet& x, const ResidueSet& y) {
    if (x.size() < 3 || y.size() < 3) throw DomainError("Hamidoune-Rodseth detector needs |X|, |Y| >= 3");
    const Modulus m = x.modulus();
    const value_t p = m.value();
    const std::size_t n = sumset(x, y).size();
    if (n != x.size() + y.size() || n < 7 || static_cast<value_t>(n) > p - 4)
        return {Witness::Status::not_applicable, std::nullopt};
    for (value_t d = 1; d < p; ++d) {
        const Residue r(d, m);
        if (is_almost_ap(x, r) && is_almost_ap(y, r)) return {Witness::Status::found, r};
    }
    return {Witness::Status::missing, std::nullopt};
}

struct DilationViolation {
    ResidueSet x;
    value_t t;
    value_t d;

    std::string to_string() const {
        return "X=" + x.to_string() + ";t=" + std::to_string(t) + ";d=" + std::to_string(d);
    }
};

using ViolationSink = std::function<void(const std::string&)>;

namespace detail {

inline ResidueSet from_mask(Modulus m, std::uint64_t mask) {
    std::vector<value_t> v;
    for (value_t i = 0; i < m.value(); ++i)
        if (mask >> i & 1U) v.push_back(i);
    return {m, std::move(v)};
}

inline std::uint64_t rotate(std::uint64_t mask, value_t by, value_t p) {
    const std::uint64_t full = (std::uint64_t{1} << p) - 1;
    if (by == 0) return mask;
    return ((mask << by) | (mask >> (p - by))) & full;
}

inline std::uint64_t mask_sumset(std::uint64_t x, std::uint64_t y, value_t p) {
    std::uint64_t out = 0;
    for (value_t i = 0; i < p; ++i)
        if (x >> i & 1U) out |= rotate(y, i, p);
    return out;
}

inline ResidueSet random_subset(Modulus m, std::size_t min_size, std::mt19937_64& rng) {
    const value_t p = m.value();
    std::uniform_int_distribution<value_t> size_dist(static_cast<value_t>(min_size), p);
    std::vector<value_t> all(static_cast<std::size_t>(p));
    for (value_t i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(size_dist(rng)));
    return {m, std::move(all)};
}

}  // namespace detail

/// Dilations t outside {0, +-1, +-2, +-2^{-1}} that keep some X with
/// 5 <= |X| <= p-5 a union of at most two progressions of difference d.
inline std::vector<DilationViolation> lemma43_scan(Modulus m, const ViolationSink& sink = {}) {
    const value_t p = m.value();
    if (p < 11) throw DomainError("dilation lemma scan needs p >= 11");
    if (p > 40) throw DomainError("dilation lemma scan is exhaustive; p too large");
    const Residue two_inv = inverse(Residue(2, m));
    const ResidueSet allowed(m, {0, 1, -1, 2, -2, two_inv.value(), (-two_inv).value()});

    std::vector<DilationViolation> out;
    const std::uint64_t limit = std::uint64_t{1} << p;
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        const auto size = static_cast<value_t>(std::popcount(mask));
        if (size < 5 || size > p - 5) continue;
        const ResidueSet x = detail::from_mask(m, mask);
        for (value_t d = 1; d < p; ++d) {
            const Residue rd(d, m);
            if (!is_union_two_aps(x, rd)) continue;
            for (value_t t = 0; t < p; ++t) {
                if (allowed.contains(t)) continue;
                if (is_union_two_aps(dilate(x, Residue(t, m)), rd)) {
                    out.push_back({x, t, d});
                    if (sink) sink(out.back().to_string());
                }
            }
        }
    }
    return out;
}

struct ScanOptions {
    std::uint64_t seed = 20240601;
    std::size_t samples = 20000;
    value_t exhaustive_limit = 13;  ///< exhaustive over all pairs when p <= this
};

struct ScanReport {
    std::size_t checked = 0;
    std::vector<std::string> violations;
};

namespace detail {

/// Visits (X, Y) pairs: all nonempty pairs when p is small enough, otherwise
/// seeded random samples. `fn(x_mask_or_set...)` works on ResidueSets.
template <class Fn>
void for_each_pair(Modulus m, std::size_t min_size, const ScanOptions& opt, Fn&& fn) {
    const value_t p = m.value();
    if (p <= opt.exhaustive_limit && p < 63) {
        const std::uint64_t limit = std::uint64_t{1} << p;
        for (std::uint64_t xm = 1; xm < limit; ++xm) {
            if (static_cast<std::size_t>(std::popcount(xm)) < min_size) continue;
            for (std::uint64_t ym = 1; ym < limit; ++ym) {
                if (static_cast<std::size_t>(std::popcount(ym)) < min_size) continue;
                fn(xm, ym);
            }
        }
        return;
    }
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < opt.samples; ++i) fn(random_subset(m, min_size, rng), random_subset(m, min_size, rng));
}

inline std::string pair_string(const ResidueSet& x, const ResidueSet& y) {
    return "X=" + x.to_string() + ";Y=" + y.to_string();
}

}  // namespace detail

inline ScanReport scan_cd(Modulus m, const ScanOptions& opt = {}, const ViolationSink& sink = {}) {
    ScanReport r;
    const value_t p = m.value();
    auto record = [&](const ResidueSet& x, const ResidueSet& y) {
        r.violations.push_back(detail::pair_string(x, y));
        if (sink) sink(r.violations.back());
    };
    detail::for_each_pair(m, 1, opt, [&](const auto& x, const auto& y) {
        ++r.checked;
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::uint64_t>) {
            const auto n = static_cast<value_t>(std::popcount(detail::mask_sumset(x, y, p)));
            if (n != p && n + 1 < std::popcount(x) + std::popcount(y))
                record(detail::from_mask(m, x), detail::from_mask(m, y));
        } else {
            if (!cd_check(x, y)) record(x, y);
        }
    });
    return r;
}

namespace detail {

template <class Detector>
ScanReport scan_witness(Modulus m, std::size_t min_size, const ScanOptions& opt, const ViolationSink& sink,
                        bool (*applicable)(std::size_t, std::size_t, std::size_t, value_t), Detector detect) {
    ScanReport r;
    const value_t p = m.value();
    detail::for_each_pair(m, min_size, opt, [&](const auto& x, const auto& y) {
        ResidueSet xs(m), ys(m);
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::uint64_t>) {
            const auto n = static_cast<std::size_t>(std::popcount(detail::mask_sumset(x, y, p)));
            if (!applicable(static_cast<std::size_t>(std::popcount(x)), static_cast<std::size_t>(std::popcount(y)), n, p))
                return;
            xs = from_mask(m, x);
            ys = from_mask(m, y);
        } else {
            xs = x;
            ys = y;
        }
        const Witness w = detect(xs, ys);
        if (w.status == Witness::Status::not_applicable) return;
        ++r.checked;
        if (w.status == Witness::Status::missing) {
            r.violations.push_back(pair_string(xs, ys));
            if (sink) sink(r.violations.back());
        }
    });
    return r;
}

}  // namespace detail

/// Every critical pair must yield a common difference; `checked` counts critical pairs.
inline ScanReport scan_vosper(Modulus m, const ScanOptions& opt = {}, const ViolationSink& sink = {}) {
    return detail::scan_witness(
        m, 2, opt, sink,
        [](std::size_t a, std::size_t b, std::size_t n, value_t p) {
            return n + 1 == a + b && static_cast<value_t>(n) <= p - 2;
        },
        [](const ResidueSet& x, const ResidueSet& y) { return vosper_witness(x, y); });
}

/// Every pair with 7 <= |X+Y| = |X|+|Y| <= p-4 must yield a common almost-progression difference.
inline ScanReport scan_hr(Modulus m, const ScanOptions& opt = {}, const ViolationSink& sink = {}) {
    return detail::scan_witness(
        m, 3, opt, sink,
        [](std::size_t a, std::size_t b, std::size_t n, value_t p) {
            return n == a + b && n >= 7 && static_cast<value_t>(n) <= p - 4;
        },
        [](const ResidueSet& x, const ResidueSet& y) { return hr_witness(x, y); });
}

}  // namespace rainbow
