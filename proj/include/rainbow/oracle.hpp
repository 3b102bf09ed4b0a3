#pragma once

/**
 * @file oracle.hpp
 * @brief Exhaustive ground truth: enumerate 3-colorings of Z_p and keep the
 * rainbow-free ones. Deliberately knows nothing about the characterization;
 * cross_validate() is the only place where the two meet.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "rainbow/classify.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/zp.hpp"

namespace rainbow {

struct EnumerationFilter {
    std::optional<std::size_t> min_class_size;  ///< nullopt means any
    std::optional<std::pair<Label, ResidueSet>> fixed_class;
    bool dedupe_by_relabeling = false;
};

/// Raised when an enumeration would exceed the documented budget.
class BudgetError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Unfiltered sweeps only for p <= 13; p in {17, 19} need a filter; beyond
/// that only with force.
inline void check_budget(Modulus m, const EnumerationFilter& f, bool force = false) {
    if (force) return;
    const value_t p = m.value();
    const bool filtered = f.fixed_class.has_value() || f.min_class_size.value_or(1) > 1;
    if (p <= 13) return;
    if (p <= 19 && filtered) return;
    throw BudgetError("enumeration over Z_" + std::to_string(p) +
                      (p <= 19 ? " needs a fixed-class or min-class-size filter" : " exceeds the sweep budget"));
}

namespace detail {

/// Depth-first walk over label arrays in lexicographic (base-3 counter) order,
/// index 0 most significant. `visit` returns false to stop.
class LabelingWalker {
 public:
    LabelingWalker(Modulus m, const EnumerationFilter& f) : p_(static_cast<std::size_t>(m.value())), f_(f) {
        if (f.min_class_size && *f.min_class_size * 3 > p_ && p_ >= 3)
            throw DomainError("min_class_size must be at most p/3");
        if (f.fixed_class) {
            in_fixed_.assign(p_, 0);
            for (value_t x : f.fixed_class->second) in_fixed_[static_cast<std::size_t>(x)] = 1;
            if (f.fixed_class->second.empty()) throw DomainError("fixed class must be nonempty");
            if (!f.dedupe_by_relabeling) fixed_label_ = f.fixed_class->first;
        }
        labels_.resize(p_);
    }

    template <class Visit>
    void run(Visit&& visit) {
        if (p_ < 3) return;
        stop_ = false;
        step(0, visit);
    }

 private:
    template <class Visit>
    void step(std::size_t i, Visit& visit) {
        if (i == p_) {
            if (counts_[0] && counts_[1] && counts_[2]) {
                if (!visit(std::span<const Label>(labels_))) stop_ = true;
            }
            return;
        }
        const std::size_t need = min_size();
        int max_label = 2;
        if (f_.dedupe_by_relabeling) max_label = std::min(2, used_ + 1);
        for (int li = 0; li <= max_label && !stop_; ++li) {
            const Label l = kLabels[static_cast<std::size_t>(li)];
            std::optional<Label> saved = fixed_label_;
            if (f_.fixed_class) {
                const bool in = in_fixed_[i] != 0;
                if (fixed_label_) {
                    if (in != (l == *fixed_label_)) continue;
                } else if (in) {
                    if (counts_[index(l)] != 0) continue;  // earlier non-members already use l
                    fixed_label_ = l;
                }
            }
            ++counts_[index(l)];
            const int saved_used = used_;
            used_ = std::max(used_, li);
            // every class must still be able to reach the required size
            std::size_t deficit = 0;
            for (auto n : counts_) deficit += n < need ? need - n : 0;
            if (deficit <= p_ - i - 1) {
                labels_[i] = l;
                step(i + 1, visit);
            }
            used_ = saved_used;
            --counts_[index(l)];
            fixed_label_ = saved;
        }
    }

    std::size_t min_size() const noexcept { return f_.min_class_size.value_or(1); }

    std::size_t p_;
    const EnumerationFilter& f_;
    std::vector<Label> labels_;
    std::vector<char> in_fixed_;
    std::optional<Label> fixed_label_;
    std::array<std::size_t, 3> counts_{};
    int used_ = -1;
    bool stop_ = false;
};

}  // namespace detail

/// Streams every surjective labeling passing the filter, in base-3 counting
/// order. With dedupe, only lexicographically least relabelings are produced
/// and the fixed class may carry any label.
template <class Fn>
void for_each_coloring(Modulus m, const EnumerationFilter& f, Fn&& fn) {
    detail::LabelingWalker walker(m, f);
    walker.run([&](std::span<const Label> labels) {
        if constexpr (std::is_convertible_v<std::invoke_result_t<Fn&, std::span<const Label>>, bool>)
            return static_cast<bool>(fn(labels));
        else {
            fn(labels);
            return true;
        }
    });
}

inline std::vector<Coloring> enumerate_colorings(Modulus m, const EnumerationFilter& f = {}) {
    std::vector<Coloring> out;
    for_each_coloring(m, f, [&](std::span<const Label> labels) {
        out.emplace_back(m, std::vector<Label>(labels.begin(), labels.end()));
    });
    return out;
}

inline std::size_t count_colorings(Modulus m, const EnumerationFilter& f = {}) {
    std::size_t n = 0;
    for_each_coloring(m, f, [&](std::span<const Label>) { ++n; });
    return n;
}

namespace detail {

/// Rainbow test that retries the most recent witness before a full scan.
class WitnessFirstScanner {
 public:
    explicit WitnessFirstScanner(const Equation& eq) : eq_(eq) {}

    bool rainbow_free(std::span<const Label> labels) {
        if (last_) {
            const Label x = labels[static_cast<std::size_t>(last_->x)];
            const Label y = labels[static_cast<std::size_t>(last_->y)];
            const Label z = labels[static_cast<std::size_t>(last_->z)];
            if (x != y && y != z && x != z) return false;
        }
        auto w = find_rainbow_raw(eq_, labels);
        if (w) last_ = w;
        return !w;
    }

 private:
    const Equation& eq_;
    std::optional<SolutionTriple> last_;
};

}  // namespace detail

struct RainbowFreeScan {
    std::size_t scanned = 0;
    std::vector<Coloring> rainbow_free;
};

inline RainbowFreeScan scan_rainbow_free(const Equation& eq, const EnumerationFilter& f = {}) {
    RainbowFreeScan out;
    detail::WitnessFirstScanner scanner(eq);
    const Modulus m = eq.modulus();
    for_each_coloring(m, f, [&](std::span<const Label> labels) {
        ++out.scanned;
        if (scanner.rainbow_free(labels))
            out.rainbow_free.emplace_back(m, std::vector<Label>(labels.begin(), labels.end()));
    });
    return out;
}

inline std::vector<Coloring> enumerate_rainbow_free(const Equation& eq, const EnumerationFilter& f = {}) {
    return scan_rainbow_free(eq, f).rainbow_free;
}

/// True iff some coloring passing the filter is rainbow-free; stops at the first.
inline bool exists_rainbow_free(const Equation& eq, const EnumerationFilter& f = {}) {
    bool found = false;
    detail::WitnessFirstScanner scanner(eq);
    for_each_coloring(eq.modulus(), f, [&](std::span<const Label> labels) {
        found = scanner.rainbow_free(labels);
        return !found;
    });
    return found;
}

/// Verdict from exhaustive search alone; valid for every prime.
inline Verdict oracle_verdict(const Equation& eq) {
    return exists_rainbow_free(eq, {std::nullopt, std::nullopt, true}) ? Verdict::non_rainbow : Verdict::rainbow;
}

struct OracleReport {
    Equation equation;
    std::size_t total_colorings_scanned = 0;
    std::vector<Coloring> rainbow_free;
    bool all_matched_structure = true;
    std::vector<Coloring> mismatches = {};
    std::optional<Verdict> classified = std::nullopt;  ///< nullopt when p < 5
    bool verdict_consistent = true;

    bool validated() const noexcept { return all_matched_structure && verdict_consistent; }
};

/// Feeds every rainbow-free coloring to match_structure and compares
/// classify's verdict against (non)emptiness of the list. Emptiness is only
/// conclusive for an unrestricted filter; with a filter a Rainbow verdict
/// must still see an empty list.
inline OracleReport cross_validate(const Equation& eq, const EnumerationFilter& f = {}) {
    auto scan = scan_rainbow_free(eq, f);
    OracleReport r{eq, scan.scanned, std::move(scan.rainbow_free)};
    for (const auto& c : r.rainbow_free)
        if (match_structure(eq, c).clause == Clause::no_match) r.mismatches.push_back(c);
    r.all_matched_structure = r.mismatches.empty();
    if (eq.modulus().value() >= 5) {
        r.classified = classify(eq).verdict;
        const bool unrestricted = !f.fixed_class && f.min_class_size.value_or(1) <= 1;
        if (*r.classified == Verdict::rainbow) r.verdict_consistent = r.rainbow_free.empty();
        else if (unrestricted) r.verdict_consistent = !r.rainbow_free.empty();
    }
    return r;
}

struct MinClassScan {
    std::size_t scanned = 0;
    std::vector<Coloring> rainbow_free;
};

/// Rainbow-free colorings whose smallest class has exactly k elements.
inline MinClassScan min_class_scan(const Equation& eq, std::size_t k) {
    if (k != 2 && k != 3) throw DomainError("min_class_scan supports k in {2, 3}");
    if (eq.all_coeffs_equal()) throw DomainError("min_class_scan needs some a_i != a_j");
    MinClassScan out;
    const Modulus m = eq.modulus();
    if (static_cast<value_t>(3 * k) > m.value()) return out;
    detail::WitnessFirstScanner scanner(eq);
    EnumerationFilter f{k, std::nullopt, false};
    for_each_coloring(m, f, [&](std::span<const Label> labels) {
        std::array<std::size_t, 3> n{};
        for (Label l : labels) ++n[index(l)];
        if (std::min({n[0], n[1], n[2]}) != k) return;
        ++out.scanned;
        if (scanner.rainbow_free(labels))
            out.rainbow_free.emplace_back(m, std::vector<Label>(labels.begin(), labels.end()));
    });
    return out;
}

}  // namespace rainbow
