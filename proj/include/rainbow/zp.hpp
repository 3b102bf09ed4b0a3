#pragma once

/**
 * @file zp.hpp
 * @brief Exact arithmetic in Z_p and structural predicates on subsets.
 *
 * Residues are always stored as least nonnegative representatives and every
 * set is kept sorted ascending, so printed output is reproducible.
 */

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

using value_t = std::int64_t;

/// Raised when an operation is applied outside its mathematical domain.
class DomainError : public std::domain_error {
 public:
    using std::domain_error::domain_error;
};

/// Deterministic primality by trial division; moduli here are desk-scale.
constexpr bool is_prime(value_t n) noexcept {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (value_t q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

class Modulus {
 public:
    explicit Modulus(value_t p) : p_(p) {
        if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
    }

    value_t value() const noexcept { return p_; }

    value_t reduce(value_t x) const noexcept {
        value_t r = x % p_;
        return r < 0 ? r + p_ : r;
    }

    friend bool operator==(Modulus, Modulus) = default;

 private:
    value_t p_;
};

class Residue {
 public:
    Residue(value_t v, Modulus m) : value_(m.reduce(v)), mod_(m) {}

    value_t value() const noexcept { return value_; }
    Modulus modulus() const noexcept { return mod_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend Residue operator+(Residue a, Residue b) { check(a, b); return {a.value_ + b.value_, a.mod_}; }
    friend Residue operator-(Residue a, Residue b) { check(a, b); return {a.value_ - b.value_, a.mod_}; }
    friend Residue operator*(Residue a, Residue b) { check(a, b); return {a.value_ * b.value_, a.mod_}; }
    friend Residue operator-(Residue a) { return {-a.value_, a.mod_}; }

    friend bool operator==(Residue a, Residue b) noexcept {
        return a.mod_ == b.mod_ && a.value_ == b.value_;
    }
    friend auto operator<=>(Residue a, Residue b) noexcept { return a.value_ <=> b.value_; }

 private:
    static void check(Residue a, Residue b) {
        if (!(a.mod_ == b.mod_)) throw DomainError("residues from different moduli");
    }

    value_t value_;
    Modulus mod_;
};

/// Multiplicative inverse via the extended Euclidean algorithm.
inline Residue inverse(Residue a) {
    if (a.is_zero()) throw DomainError("no inverse of 0");
    value_t r0 = a.modulus().value(), r1 = a.value();
    value_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        value_t q = r0 / r1;
        value_t r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        value_t s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    return {s0, a.modulus()};
}

/// A subset of Z_p; members are distinct and ascending.
class ResidueSet {
 public:
    using const_iterator = std::vector<value_t>::const_iterator;

    explicit ResidueSet(Modulus m) : mod_(m) {}

    ResidueSet(Modulus m, std::vector<value_t> values) : mod_(m), members_(std::move(values)) {
        for (auto& v : members_) v = m.reduce(v);
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    /// Z_p itself.
    static ResidueSet all(Modulus m) {
        ResidueSet s(m);
        s.members_.resize(static_cast<std::size_t>(m.value()));
        for (value_t i = 0; i < m.value(); ++i) s.members_[static_cast<std::size_t>(i)] = i;
        return s;
    }

    /// Z_p^*.
    static ResidueSet units(Modulus m) {
        ResidueSet s(m);
        for (value_t i = 1; i < m.value(); ++i) s.members_.push_back(i);
        return s;
    }

    Modulus modulus() const noexcept { return mod_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<value_t>& values() const noexcept { return members_; }
    const_iterator begin() const noexcept { return members_.begin(); }
    const_iterator end() const noexcept { return members_.end(); }

    value_t min() const {
        if (members_.empty()) throw DomainError("minimum of empty set");
        return members_.front();
    }

    bool contains(value_t v) const {
        return std::binary_search(members_.begin(), members_.end(), mod_.reduce(v));
    }
    bool contains(Residue r) const { return r.modulus() == mod_ && contains(r.value()); }

    /// Comma-separated ascending members, e.g. "1,3,4".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < members_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(members_[i]);
        }
        return out;
    }

    friend bool operator==(const ResidueSet& a, const ResidueSet& b) {
        return a.mod_ == b.mod_ && a.members_ == b.members_;
    }

 private:
    Modulus mod_;
    std::vector<value_t> members_;
};

inline ResidueSet set_union(const ResidueSet& a, const ResidueSet& b) {
    std::vector<value_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return {a.modulus(), std::move(out)};
}

inline ResidueSet set_difference(const ResidueSet& a, const ResidueSet& b) {
    std::vector<value_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return {a.modulus(), std::move(out)};
}

inline ResidueSet complement(const ResidueSet& s) {
    return set_difference(ResidueSet::all(s.modulus()), s);
}

/// The d-dilation dS.
inline ResidueSet dilate(const ResidueSet& s, Residue d) {
    std::vector<value_t> out;
    out.reserve(s.size());
    for (value_t x : s) out.push_back(x * d.value());
    return {s.modulus(), std::move(out)};
}

/// The t-translation S + t.
inline ResidueSet translate(const ResidueSet& s, Residue t) {
    std::vector<value_t> out;
    out.reserve(s.size());
    for (value_t x : s) out.push_back(x + t.value());
    return {s.modulus(), std::move(out)};
}

/// Multiplicative subgroup of Z_p^* together with the generators it came from.
class Subgroup {
 public:
    Subgroup(ResidueSet generators, ResidueSet elements)
        : generators_(std::move(generators)), elements_(std::move(elements)) {}

    const ResidueSet& generators() const noexcept { return generators_; }
    const ResidueSet& elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }
    bool contains(value_t v) const { return elements_.contains(v); }
    Modulus modulus() const noexcept { return elements_.modulus(); }

 private:
    ResidueSet generators_;
    ResidueSet elements_;
};

/// Closure of {1} under multiplication by the generators.
inline Subgroup subgroup_generated(const ResidueSet& gens) {
    const Modulus m = gens.modulus();
    for (value_t g : gens)
        if (g == 0) throw DomainError("subgroup generator must be nonzero");

    std::vector<char> seen(static_cast<std::size_t>(m.value()), 0);
    std::vector<value_t> frontier{1};
    seen[1] = 1;
    while (!frontier.empty()) {
        value_t x = frontier.back();
        frontier.pop_back();
        for (value_t g : gens) {
            value_t y = m.reduce(x * g);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                frontier.push_back(y);
            }
        }
    }
    std::vector<value_t> elems;
    for (value_t i = 1; i < m.value(); ++i)
        if (seen[static_cast<std::size_t>(i)]) elems.push_back(i);
    return {gens, ResidueSet(m, std::move(elems))};
}

/// Multiplicative order of a unit.
inline value_t multiplicative_order(Residue a) {
    if (a.is_zero()) throw DomainError("order of 0 is undefined");
    return static_cast<value_t>(subgroup_generated(ResidueSet(a.modulus(), {a.value()})).order());
}

/// Cosets xH partitioning Z_p^*, ordered by minimal representative.
inline std::vector<ResidueSet> cosets(const Subgroup& h) {
    const Modulus m = h.modulus();
    std::vector<char> covered(static_cast<std::size_t>(m.value()), 0);
    std::vector<ResidueSet> out;
    for (value_t x = 1; x < m.value(); ++x) {
        if (covered[static_cast<std::size_t>(x)]) continue;
        ResidueSet c = dilate(h.elements(), Residue(x, m));
        for (value_t y : c) covered[static_cast<std::size_t>(y)] = 1;
        out.push_back(std::move(c));
    }
    return out;
}

inline bool is_periodic(const ResidueSet& s, Residue d) {
    if (d.is_zero()) throw DomainError("periodicity under dilation by 0");
    return dilate(s, d) == s;
}

/// S = -S.
inline bool is_symmetric(const ResidueSet& s) {
    return dilate(s, Residue(-1, s.modulus())) == s;
}

namespace detail {

/// Number of maximal cyclic runs of consecutive residues in S.
inline std::size_t run_count(const ResidueSet& s) {
    const value_t p = s.modulus().value();
    std::size_t runs = 0;
    for (value_t x : s)
        if (!s.contains(x + 1 == p ? 0 : x + 1)) ++runs;
    return runs;
}

/// Lengths of the cyclic gaps between runs of S (empty when S has < 1 run).
inline std::vector<value_t> gap_lengths(const ResidueSet& s) {
    const value_t p = s.modulus().value();
    std::vector<value_t> gaps;
    for (value_t x : s) {
        value_t next = x + 1 == p ? 0 : x + 1;
        if (s.contains(next)) continue;
        value_t len = 0;
        while (!s.contains(next)) {
            ++len;
            next = next + 1 == p ? 0 : next + 1;
        }
        gaps.push_back(len);
    }
    return gaps;
}

}  // namespace detail

/// Every nonzero d for which S is an arithmetic progression with difference d.
/// Sets with at most two elements count as progressions for every difference.
inline ResidueSet ap_difference(const ResidueSet& s) {
    if (s.empty()) throw DomainError("arithmetic-progression difference of empty set");
    const Modulus m = s.modulus();
    if (s.size() <= 2) return ResidueSet::units(m);
    std::vector<value_t> out;
    for (value_t d = 1; d < m.value(); ++d)
        if (detail::run_count(dilate(s, inverse(Residue(d, m)))) <= 1) out.push_back(d);
    return {m, std::move(out)};
}

/// d^{-1}S has at most two maximal cyclic runs.
inline bool is_union_two_aps(const ResidueSet& s, Residue d) {
    if (d.is_zero()) throw DomainError("progression difference must be nonzero");
    return detail::run_count(dilate(s, inverse(d))) <= 2;
}

/// S is a progression with difference d, possibly with one interior term removed.
inline bool is_almost_ap(const ResidueSet& s, Residue d) {
    if (d.is_zero()) throw DomainError("progression difference must be nonzero");
    const value_t p = s.modulus().value();
    if (s.empty() || static_cast<value_t>(s.size()) > p - 2)
        throw DomainError("almost-progression test needs 1 <= |S| <= p-2");
    const ResidueSet scaled = dilate(s, inverse(d));
    const std::size_t runs = detail::run_count(scaled);
    if (runs <= 1) return true;
    if (runs > 2) return false;
    const auto gaps = detail::gap_lengths(scaled);
    return std::find(gaps.begin(), gaps.end(), 1) != gaps.end();
}

}  // namespace rainbow
