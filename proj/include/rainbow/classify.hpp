#pragma once

/**
 * @file classify.hpp
 * @brief Classification of equations as rainbow / non-rainbow, construction of
 * rainbow-free witnesses, and structural matching of arbitrary colorings.
 *
 * For an equation with some a_i != a_j, a coloring with smallest class A is
 * rainbow-free exactly when A = {s} with s(a1+a2+a3) = b and both remaining
 * classes are invariant under the six maps T_i = T_{d_i, t_i} below. For
 * x+y+z=b the rainbow-free colorings are either a singleton plus two sets
 * symmetric about a common center, or three progressions with a common
 * difference whose cut points satisfy a sum condition.
 */

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/zp.hpp"

namespace rainbow {

/// The six maps T_i for a chosen singleton s.
struct TransformFamily {
    Residue s;
    std::array<AffineMap, 6> maps;
};

/// d_i = -a_k a_j^{-1} and t_i = (b - a_l s) a_j^{-1}, in the fixed slot order
/// (j, k, l) = (1,3,2), (1,2,3), (2,1,3), (2,3,1), (3,1,2), (3,2,1).
inline TransformFamily transform_family(const Equation& eq, Residue s) {
    const auto& a = eq.coefficients();
    const Residue b = eq.b();
    struct Slots { int j, k, l; };
    constexpr std::array<Slots, 6> table{{{0, 2, 1}, {0, 1, 2}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto make = [&](Slots sl) {
        const Residue inv = inverse(a[static_cast<std::size_t>(sl.j)]);
        return AffineMap(-(a[static_cast<std::size_t>(sl.k)] * inv), (b - a[static_cast<std::size_t>(sl.l)] * s) * inv);
    };
    return {s, {make(table[0]), make(table[1]), make(table[2]), make(table[3]), make(table[4]), make(table[5])}};
}

/// H = <d_1, ..., d_6>; independent of b and s.
inline Subgroup dilation_group(const Equation& eq) {
    const auto family = transform_family(eq, Residue(0, eq.modulus()));
    std::vector<value_t> gens;
    for (const auto& m : family.maps) gens.push_back(m.d().value());
    return subgroup_generated(ResidueSet(eq.modulus(), std::move(gens)));
}

enum class Verdict { rainbow, non_rainbow };

enum class Reason {
    coeff_sum_zero_b_nonzero,
    full_dilation_group,
    all_coeffs_equal,
    proper_subgroup,
    oracle_exhaustive,
};

inline const char* to_string(Verdict v) noexcept { return v == Verdict::rainbow ? "rainbow" : "non-rainbow"; }

inline const char* to_string(Reason r) noexcept {
    switch (r) {
        case Reason::coeff_sum_zero_b_nonzero: return "coeff_sum_zero_b_nonzero";
        case Reason::full_dilation_group: return "full_dilation_group";
        case Reason::all_coeffs_equal: return "all_coeffs_equal";
        case Reason::proper_subgroup: return "proper_subgroup";
        case Reason::oracle_exhaustive: return "oracle_exhaustive";
    }
    return "unknown";
}

struct ClassificationResult {
    Verdict verdict;
    Reason reason;
    std::optional<Subgroup> subgroup = std::nullopt;
    std::optional<Residue> s = std::nullopt;  ///< singleton used by the witness
    bool s_free = false;       ///< any singleton would do
    std::optional<Coloring> witness = std::nullopt;
};

/// Raised for inputs the characterization does not cover (p < 5).
class UnsupportedDomain : public DomainError {
 public:
    using DomainError::DomainError;
};

// ---------------------------------------------------------------------------
// Constructions

/// B/C assignment of construction units (cosets or symmetric pairs); true -> B.
using Split = std::vector<bool>;

namespace detail {

inline Split default_split(std::size_t units) {
    Split split(units);
    for (std::size_t i = 0; i < units; ++i) split[i] = (i % 2 == 0);
    return split;
}

inline Coloring assemble(Modulus m, value_t singleton, const std::vector<ResidueSet>& units, const Split& split,
                         std::optional<std::pair<value_t, Label>> extra = std::nullopt) {
    if (split.size() != units.size())
        throw DomainError("split has " + std::to_string(split.size()) + " entries, expected " +
                          std::to_string(units.size()));
    std::vector<Label> labels(static_cast<std::size_t>(m.value()), Label::C);
    labels[static_cast<std::size_t>(singleton)] = Label::A;
    for (std::size_t i = 0; i < units.size(); ++i)
        for (value_t x : units[i]) labels[static_cast<std::size_t>(x)] = split[i] ? Label::B : Label::C;
    if (extra) labels[static_cast<std::size_t>(extra->first)] = extra->second;
    bool has_b = false, has_c = false;
    for (Label l : labels) {
        has_b |= l == Label::B;
        has_c |= l == Label::C;
    }
    if (!has_b || !has_c) throw DomainError("no valid split: a class would be empty");
    return {m, std::move(labels)};
}

inline void ensure_rainbow_free(const Equation& eq, const Coloring& c) {
    if (auto w = find_rainbow(eq, c))
        throw std::logic_error("constructed coloring " + c.to_string() + " has rainbow solution (" +
                               std::to_string(w->x) + "," + std::to_string(w->y) + "," + std::to_string(w->z) + ")");
}

/// Equal-coefficient equation rewritten as x+y+z=b'; returns b'.
inline Residue reduced_b(const Equation& eq) {
    if (!eq.all_coeffs_equal()) throw DomainError("equation does not have equal coefficients");
    return eq.b() * inverse(eq.a1());
}

}  // namespace detail

/// Cosets of H translated by s; the units distributed by construct_singleton.
inline std::vector<ResidueSet> singleton_units(const Equation& eq, Residue s) {
    std::vector<ResidueSet> units;
    for (const auto& c : cosets(dilation_group(eq))) units.push_back(translate(c, s));
    return units;
}

/// A = {s}; B and C are unions of translated cosets s + xH.
inline Coloring construct_singleton(const Equation& eq, Residue s, std::optional<Split> split = std::nullopt) {
    const Modulus m = eq.modulus();
    if (!(s * coeff_sum(eq) == eq.b()))
        throw DomainError("singleton " + std::to_string(s.value()) + " does not satisfy s(a1+a2+a3) = b");
    const Subgroup h = dilation_group(eq);
    if (static_cast<value_t>(h.order()) == m.value() - 1) throw DomainError("no valid split: dilation group is all of Z_p^*");
    const auto units = singleton_units(eq, s);
    Coloring c = detail::assemble(m, s.value(), units, split ? *split : detail::default_split(units.size()));

    detail::ensure_rainbow_free(eq, c);
    const auto family = transform_family(eq, s);
    for (const auto& t : family.maps)
        if (!is_invariant(t, c.class_of(Label::B)) || !is_invariant(t, c.class_of(Label::C)))
            throw std::logic_error("constructed class not invariant under T_i");
    return c;
}

/// Singleton s with two classes symmetric about (b' - s) 2^{-1}.
struct SymmetricParams {
    value_t s = 0;
    Label free_to = Label::B;  ///< where b' - 2s goes
    std::optional<Split> split;
};

/// Three progressions with common difference d cut at t1, t2, t3.
struct IntervalParams {
    value_t d = 1;
    std::optional<std::array<value_t, 3>> cuts;
};

using EqualCoeffsParams = std::variant<SymmetricParams, IntervalParams>;

/// Center, free element and mirror pairs for the symmetric construction.
struct SymmetricLayout {
    Residue center;
    Residue free_element;
    std::vector<ResidueSet> units;
};

inline SymmetricLayout symmetric_layout(const Equation& eq, Residue s) {
    const Modulus m = eq.modulus();
    const Residue bp = detail::reduced_b(eq);
    const Residue center = (bp - s) * inverse(Residue(2, m));
    const Residue free_element = bp - Residue(2, m) * s;
    std::vector<ResidueSet> units;
    if (!(center == s)) units.push_back(ResidueSet(m, {center.value()}));
    for (value_t x = 1; x <= (m.value() - 1) / 2; ++x) {
        ResidueSet pair(m, {center.value() + x, center.value() - x});
        if (pair.contains(s)) continue;  // {s, b' - 2s} is a mirror pair
        units.push_back(std::move(pair));
    }
    std::sort(units.begin(), units.end(), [](const auto& u, const auto& v) { return u.min() < v.min(); });
    return {center, free_element, std::move(units)};
}

namespace detail {

inline bool cut_sum_ok(Modulus m, Residue d, Residue bp, value_t t1, value_t t2, value_t t3) {
    const Residue sum(t1 + t2 + t3, m);
    const Residue base = inverse(d) * bp;
    return sum == base + Residue(1, m) || sum == base + Residue(2, m);
}

/// Cyclic length of [from, to) in Z_p.
inline value_t arc(Modulus m, value_t from, value_t to) { return m.reduce(to - from); }

}  // namespace detail

inline Coloring construct_equal_coeffs(const Equation& eq, const EqualCoeffsParams& params = SymmetricParams{}) {
    const Modulus m = eq.modulus();
    if (m.value() <= 3) throw UnsupportedDomain("equal-coefficient construction needs p > 3");
    const Residue bp = detail::reduced_b(eq);

    if (const auto* sym = std::get_if<SymmetricParams>(&params)) {
        if (sym->free_to == Label::A) throw DomainError("free element must go to B or C");
        const Residue s(sym->s, m);
        const auto layout = symmetric_layout(eq, s);
        std::optional<std::pair<value_t, Label>> extra;
        if (!(layout.free_element == s)) extra = std::pair{layout.free_element.value(), sym->free_to};
        Coloring c = detail::assemble(m, s.value(), layout.units,
                                      sym->split ? *sym->split : detail::default_split(layout.units.size()), extra);
        detail::ensure_rainbow_free(eq, c);
        return c;
    }

    const auto& iv = std::get<IntervalParams>(params);
    const Residue d(iv.d, m);
    if (d.is_zero()) throw DomainError("progression difference must be nonzero");
    const value_t p = m.value();
    std::array<value_t, 3> cuts{};
    if (iv.cuts) {
        cuts = *iv.cuts;
        for (auto& t : cuts) t = m.reduce(t);
        if (detail::arc(m, cuts[0], cuts[1]) < 2 || detail::arc(m, cuts[1], cuts[2]) < 2 ||
            detail::arc(m, cuts[2], cuts[0]) < 2 ||
            detail::arc(m, cuts[0], cuts[1]) + detail::arc(m, cuts[1], cuts[2]) + detail::arc(m, cuts[2], cuts[0]) != p)
            throw DomainError("cut points must be in cyclic order with every class of size >= 2");
        if (!detail::cut_sum_ok(m, d, bp, cuts[0], cuts[1], cuts[2]))
            throw DomainError("cut points violate t1+t2+t3 in {1 + d^-1 b, 2 + d^-1 b}");
    } else {
        bool found = false;
        for (value_t t1 = 0; t1 < p && !found; ++t1)
            for (value_t t2 = t1 + 2; t2 < p && !found; ++t2)
                for (value_t t3 = t2 + 2; t3 < p && !found; ++t3)
                    if (p - t3 + t1 >= 2 && detail::cut_sum_ok(m, d, bp, t1, t2, t3)) {
                        cuts = {t1, t2, t3};
                        found = true;
                    }
        if (!found) throw DomainError("no cut points with every class of size >= 2 exist for this p");
    }

    std::vector<Label> labels(static_cast<std::size_t>(p));
    for (std::size_t k = 0; k < 3; ++k) {
        const value_t len = detail::arc(m, cuts[k], cuts[(k + 1) % 3]);
        for (value_t i = 0; i < len; ++i)
            labels[static_cast<std::size_t>(m.reduce((cuts[k] + i) * d.value()))] = kLabels[k];
    }
    Coloring c(m, std::move(labels));
    detail::ensure_rainbow_free(eq, c);
    return c;
}

// ---------------------------------------------------------------------------
// Classification

struct ClassifyOptions {
    std::optional<value_t> s;  ///< singleton to use when it is a free choice
};

inline ClassificationResult classify(const Equation& eq, const ClassifyOptions& opts = {}) {
    const Modulus m = eq.modulus();
    if (m.value() < 5) throw UnsupportedDomain("classification needs p >= 5; use the exhaustive oracle");
    const Residue a = coeff_sum(eq);
    Subgroup h = dilation_group(eq);

    if (eq.all_coeffs_equal()) {
        const value_t s = m.reduce(opts.s.value_or(0));
        Coloring w = construct_equal_coeffs(eq, SymmetricParams{s, Label::B, std::nullopt});
        return {Verdict::non_rainbow, Reason::all_coeffs_equal, std::move(h), Residue(s, m), true, std::move(w)};
    }
    if (a.is_zero() && !eq.b().is_zero()) return {Verdict::rainbow, Reason::coeff_sum_zero_b_nonzero, std::move(h)};
    if (static_cast<value_t>(h.order()) == m.value() - 1)
        return {Verdict::rainbow, Reason::full_dilation_group, std::move(h)};

    const bool free = a.is_zero();
    Residue s(0, m);
    if (free) {
        s = Residue(opts.s.value_or(0), m);
    } else {
        s = eq.b() * inverse(a);
        if (opts.s && m.reduce(*opts.s) != s.value())
            throw DomainError("singleton is forced to s = " + std::to_string(s.value()));
    }
    Coloring w = construct_singleton(eq, s);
    return {Verdict::non_rainbow, Reason::proper_subgroup, std::move(h), s, free, std::move(w)};
}

/// x + y = 2z is rainbow for p iff ord(2) = p-1, or ord(2) = (p-1)/2 with (p-1)/2 odd.
inline bool rainbow_criterion_ap3(Modulus m) {
    const value_t p = m.value();
    if (p < 5) throw UnsupportedDomain("criterion stated for p >= 5");
    const value_t ord = multiplicative_order(Residue(2, m));
    const value_t half = (p - 1) / 2;
    return ord == p - 1 || (ord == half && half % 2 == 1);
}

// ---------------------------------------------------------------------------
// Structural matching

enum class Clause { main_singleton, equal_coeffs_singleton_symmetric, equal_coeffs_three_aps, no_match };

inline const char* to_string(Clause c) noexcept {
    switch (c) {
        case Clause::main_singleton: return "MainThm_singleton";
        case Clause::equal_coeffs_singleton_symmetric: return "EqualCoeffs_singleton_symmetric";
        case Clause::equal_coeffs_three_aps: return "EqualCoeffs_three_APs";
        case Clause::no_match: return "NoMatch";
    }
    return "unknown";
}

struct StructureReport {
    Clause clause = Clause::no_match;
    /// Coloring labels playing the roles A, B, C (|A| <= |B| <= |C|).
    std::optional<std::array<Label, 3>> roles;
    std::optional<Residue> s;
    std::optional<Residue> center;
    std::optional<Residue> free_element;
    std::optional<Residue> d;
    std::optional<std::array<value_t, 3>> cuts;
};

namespace detail {

/// Role assignments with nondecreasing class sizes, the coloring's own order first.
inline std::vector<std::array<Label, 3>> size_ordered_roles(const Coloring& c) {
    const auto n = c.class_sizes();
    std::vector<std::array<Label, 3>> out;
    for (const auto& perm : kRelabelings)
        if (n[index(perm[0])] <= n[index(perm[1])] && n[index(perm[1])] <= n[index(perm[2])]) out.push_back(perm);
    return out;
}

inline bool symmetric_about(const ResidueSet& x, Residue center) {
    return is_symmetric(translate(x, -center));
}

/// Start of the single cyclic run of d^{-1}X, if X is a progression with difference d.
inline std::optional<value_t> interval_start(const ResidueSet& x, Residue d) {
    const ResidueSet y = dilate(x, inverse(d));
    if (detail::run_count(y) != 1) return std::nullopt;
    const value_t p = x.modulus().value();
    for (value_t v : y)
        if (!y.contains(v == 0 ? p - 1 : v - 1)) return v;
    return std::nullopt;
}

}  // namespace detail

/// Singleton clause for some a_i != a_j.
inline bool check_main_singleton(const Equation& eq, const Coloring& c, const std::array<Label, 3>& roles, Residue s) {
    if (!(c.class_of(roles[0]) == ResidueSet(eq.modulus(), {s.value()}))) return false;
    if (!(s * coeff_sum(eq) == eq.b())) return false;
    const auto family = transform_family(eq, s);
    const ResidueSet b = c.class_of(roles[1]), cc = c.class_of(roles[2]);
    for (const auto& t : family.maps)
        if (!is_invariant(t, b) || !is_invariant(t, cc)) return false;
    return true;
}

/// Singleton clause for x+y+z=b'.
inline bool check_symmetric(const Equation& eq, const Coloring& c, const std::array<Label, 3>& roles, Residue s) {
    const Modulus m = eq.modulus();
    if (!(c.class_of(roles[0]) == ResidueSet(m, {s.value()}))) return false;
    const Residue bp = detail::reduced_b(eq);
    const Residue center = (bp - s) * inverse(Residue(2, m));
    const ResidueSet free_set(m, {(bp - Residue(2, m) * s).value()});
    for (std::size_t k = 1; k < 3; ++k)
        if (!detail::symmetric_about(set_difference(c.class_of(roles[k]), free_set), center)) return false;
    return true;
}

/// Three-progression clause for x+y+z=b'.
inline bool check_three_aps(const Equation& eq, const Coloring& c, const std::array<Label, 3>& roles, Residue d,
                            const std::array<value_t, 3>& cuts) {
    const Modulus m = eq.modulus();
    if (d.is_zero()) return false;
    const value_t p = m.value();
    if (c.class_of(roles[0]).size() < 2) return false;
    std::vector<Label> expect(static_cast<std::size_t>(p));
    value_t total = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const value_t len = detail::arc(m, cuts[k], cuts[(k + 1) % 3]);
        if (len == 0) return false;
        total += len;
        for (value_t i = 0; i < len; ++i)
            expect[static_cast<std::size_t>(m.reduce((cuts[k] + i) * d.value()))] = roles[k];
    }
    if (total != p) return false;
    for (value_t x = 0; x < p; ++x)
        if (c[x] != expect[static_cast<std::size_t>(x)]) return false;
    return detail::cut_sum_ok(m, d, detail::reduced_b(eq), cuts[0], cuts[1], cuts[2]);
}

/// Names the clause of the characterization that `c` instantiates; every
/// reported parameter re-verifies through recheck().
inline StructureReport match_structure(const Equation& eq, const Coloring& c) {
    if (!(eq.modulus() == c.modulus())) throw DomainError("equation and coloring use different moduli");
    const Modulus m = eq.modulus();
    const auto role_list = detail::size_ordered_roles(c);

    for (const auto& roles : role_list) {
        const ResidueSet a = c.class_of(roles[0]);
        if (a.size() != 1) continue;
        const Residue s(a.min(), m);
        if (!eq.all_coeffs_equal()) {
            if (check_main_singleton(eq, c, roles, s)) {
                StructureReport r;
                r.clause = Clause::main_singleton;
                r.roles = roles;
                r.s = s;
                return r;
            }
        } else if (m.value() > 3 && check_symmetric(eq, c, roles, s)) {
            const Residue bp = detail::reduced_b(eq);
            StructureReport r;
            r.clause = Clause::equal_coeffs_singleton_symmetric;
            r.roles = roles;
            r.s = s;
            r.center = (bp - s) * inverse(Residue(2, m));
            r.free_element = bp - Residue(2, m) * s;
            return r;
        }
    }

    if (eq.all_coeffs_equal() && m.value() > 3) {
        for (const auto& roles : role_list) {
            if (c.class_of(roles[0]).size() < 2) continue;
            for (value_t dv = 1; dv < m.value(); ++dv) {
                const Residue d(dv, m);
                std::array<value_t, 3> cuts{};
                bool ok = true;
                for (std::size_t k = 0; k < 3 && ok; ++k) {
                    auto start = detail::interval_start(c.class_of(roles[k]), d);
                    if (!start) ok = false;
                    else cuts[k] = *start;
                }
                if (ok && check_three_aps(eq, c, roles, d, cuts)) {
                    StructureReport r;
                    r.clause = Clause::equal_coeffs_three_aps;
                    r.roles = roles;
                    r.d = d;
                    r.cuts = cuts;
                    return r;
                }
            }
        }
    }
    return {};
}

/// Re-verifies a report's clause from its parameters alone.
inline bool recheck(const Equation& eq, const Coloring& c, const StructureReport& r) {
    if (r.clause == Clause::no_match) return true;
    if (!r.roles) return false;
    switch (r.clause) {
        case Clause::main_singleton:
            return !eq.all_coeffs_equal() && r.s && check_main_singleton(eq, c, *r.roles, *r.s);
        case Clause::equal_coeffs_singleton_symmetric:
            return eq.all_coeffs_equal() && r.s && check_symmetric(eq, c, *r.roles, *r.s);
        case Clause::equal_coeffs_three_aps:
            return eq.all_coeffs_equal() && r.d && r.cuts && check_three_aps(eq, c, *r.roles, *r.d, *r.cuts);
        case Clause::no_match: break;
    }
    return false;
}

}  // namespace rainbow
