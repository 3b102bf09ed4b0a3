#pragma once

/**
 * @file coloring.hpp
 * @brief 3-colorings of Z_p, affine maps T_{d,t}, and the coloring text format.
 *
 * Text format: `p=<p>;A=<list>;B=<list>;C=<list>` with ascending
 * comma-separated lists, e.g. `p=13;A=0;B=1,3,4,9,10,12;C=2,5,6,7,8,11`.
 */

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rainbow/zp.hpp"

namespace rainbow {

enum class ParseErrc {
    malformed,
    bad_modulus,
    out_of_range,
    overlap,
    omission,
    empty_class,
    zero_coefficient,
    modulus_mismatch,
};

inline const char* to_string(ParseErrc e) noexcept {
    switch (e) {
        case ParseErrc::malformed: return "malformed";
        case ParseErrc::bad_modulus: return "bad_modulus";
        case ParseErrc::out_of_range: return "out_of_range";
        case ParseErrc::overlap: return "overlap";
        case ParseErrc::omission: return "omission";
        case ParseErrc::empty_class: return "empty_class";
        case ParseErrc::zero_coefficient: return "zero_coefficient";
        case ParseErrc::modulus_mismatch: return "modulus_mismatch";
    }
    return "unknown";
}

class ParseError : public std::runtime_error {
 public:
    ParseError(ParseErrc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ParseErrc code() const noexcept { return code_; }

 private:
    ParseErrc code_;
};

enum class Label : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Label, 3> kLabels{Label::A, Label::B, Label::C};

constexpr char label_char(Label l) noexcept { return static_cast<char>('A' + static_cast<int>(l)); }
constexpr std::size_t index(Label l) noexcept { return static_cast<std::size_t>(l); }

/// A permutation of the three labels, applied as `perm[old] = new`.
using Relabeling = std::array<Label, 3>;

inline constexpr std::array<Relabeling, 6> kRelabelings{{
    {Label::A, Label::B, Label::C},
    {Label::A, Label::C, Label::B},
    {Label::B, Label::A, Label::C},
    {Label::B, Label::C, Label::A},
    {Label::C, Label::A, Label::B},
    {Label::C, Label::B, Label::A},
}};

namespace detail {

inline value_t parse_int(std::string_view s, ParseErrc on_fail = ParseErrc::malformed) {
    value_t v{};
    if (s.empty()) throw ParseError(on_fail, "empty number");
    const char* first = s.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(on_fail, "not an integer: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::string_view expect_key(std::string_view field, std::string_view key) {
    if (field.size() <= key.size() || field.substr(0, key.size()) != key || field[key.size()] != '=')
        throw ParseError(ParseErrc::malformed, "expected '" + std::string(key) + "=' in '" + std::string(field) + "'");
    return field.substr(key.size() + 1);
}

inline Modulus parse_modulus(std::string_view text) {
    value_t p = parse_int(text);
    if (!is_prime(p)) throw ParseError(ParseErrc::bad_modulus, std::to_string(p) + " is not prime");
    return Modulus(p);
}

}  // namespace detail

/// Total labeling of Z_p by {A, B, C} with every class nonempty.
class Coloring {
 public:
    Coloring(Modulus m, std::vector<Label> labels) : mod_(m), labels_(std::move(labels)) {
        if (static_cast<value_t>(labels_.size()) != m.value())
            throw DomainError("coloring needs exactly p labels");
        std::array<bool, 3> used{};
        for (Label l : labels_) used[index(l)] = true;
        if (!(used[0] && used[1] && used[2])) throw DomainError("coloring has an empty class");
    }

    /// Builds a coloring from three classes; rejects anything that is not a partition.
    static Coloring from_classes(const std::array<std::vector<value_t>, 3>& classes, Modulus m) {
        const value_t p = m.value();
        std::vector<int> owner(static_cast<std::size_t>(p), -1);
        for (std::size_t c = 0; c < 3; ++c) {
            if (classes[c].empty())
                throw ParseError(ParseErrc::empty_class, std::string("class ") + label_char(kLabels[c]) + " is empty");
            for (value_t v : classes[c]) {
                if (v < 0 || v >= p)
                    throw ParseError(ParseErrc::out_of_range, std::to_string(v) + " outside [0," + std::to_string(p) + ")");
                auto& o = owner[static_cast<std::size_t>(v)];
                if (o != -1) throw ParseError(ParseErrc::overlap, std::to_string(v) + " appears twice");
                o = static_cast<int>(c);
            }
        }
        std::vector<Label> labels(static_cast<std::size_t>(p));
        for (value_t x = 0; x < p; ++x) {
            int o = owner[static_cast<std::size_t>(x)];
            if (o == -1) throw ParseError(ParseErrc::omission, std::to_string(x) + " has no color");
            labels[static_cast<std::size_t>(x)] = kLabels[static_cast<std::size_t>(o)];
        }
        return {m, std::move(labels)};
    }

    static Coloring from_sets(const ResidueSet& a, const ResidueSet& b, const ResidueSet& c) {
        return from_classes({a.values(), b.values(), c.values()}, a.modulus());
    }

    static Coloring parse(std::string_view text) {
        auto fields = detail::split(text, ';');
        if (fields.size() != 4) throw ParseError(ParseErrc::malformed, "expected p=..;A=..;B=..;C=..");
        Modulus m = detail::parse_modulus(detail::expect_key(fields[0], "p"));
        std::array<std::vector<value_t>, 3> classes;
        const std::array<std::string_view, 3> keys{"A", "B", "C"};
        for (std::size_t c = 0; c < 3; ++c) {
            auto list = detail::expect_key(fields[c + 1], keys[c]);
            if (list.empty()) continue;
            for (auto item : detail::split(list, ',')) classes[c].push_back(detail::parse_int(item));
        }
        return from_classes(classes, m);
    }

    std::string to_string() const {
        std::string out = "p=" + std::to_string(mod_.value());
        for (Label l : kLabels) {
            out += ';';
            out += label_char(l);
            out += '=';
            out += class_of(l).to_string();
        }
        return out;
    }

    Modulus modulus() const noexcept { return mod_; }
    Label operator[](value_t x) const { return labels_[static_cast<std::size_t>(mod_.reduce(x))]; }
    std::span<const Label> labels() const noexcept { return labels_; }

    ResidueSet class_of(Label l) const {
        std::vector<value_t> out;
        for (std::size_t x = 0; x < labels_.size(); ++x)
            if (labels_[x] == l) out.push_back(static_cast<value_t>(x));
        return {mod_, std::move(out)};
    }

    std::array<std::size_t, 3> class_sizes() const noexcept {
        std::array<std::size_t, 3> n{};
        for (Label l : labels_) ++n[index(l)];
        return n;
    }

    friend bool operator==(const Coloring& a, const Coloring& b) {
        return a.mod_ == b.mod_ && a.labels_ == b.labels_;
    }

 private:
    Modulus mod_;
    std::vector<Label> labels_;
};

inline ResidueSet class_of(const Coloring& c, Label l) { return c.class_of(l); }

/// Classes by ascending size; ties broken by smaller minimal element.
inline std::array<std::pair<Label, ResidueSet>, 3> sorted_by_size(const Coloring& c) {
    std::array<std::pair<Label, ResidueSet>, 3> out{{
        {Label::A, c.class_of(Label::A)},
        {Label::B, c.class_of(Label::B)},
        {Label::C, c.class_of(Label::C)},
    }};
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.second.size() != y.second.size()) return x.second.size() < y.second.size();
        return x.second.min() < y.second.min();
    });
    return out;
}

inline Coloring relabel(const Coloring& c, const Relabeling& perm) {
    std::vector<Label> labels(c.labels().begin(), c.labels().end());
    for (auto& l : labels) l = perm[index(l)];
    return {c.modulus(), std::move(labels)};
}

/// Lexicographically least label array among the six relabelings.
inline Coloring canonical(const Coloring& c) {
    std::optional<Coloring> best;
    for (const auto& perm : kRelabelings) {
        Coloring r = relabel(c, perm);
        if (!best || std::lexicographical_compare(r.labels().begin(), r.labels().end(),
                                                  best->labels().begin(), best->labels().end()))
            best = std::move(r);
    }
    return *best;
}

/// The affine map x -> d x + t with d != 0.
class AffineMap {
 public:
    AffineMap(Residue d, Residue t) : d_(d), t_(t) {
        if (d.is_zero()) throw DomainError("affine map needs d != 0");
        if (!(d.modulus() == t.modulus())) throw DomainError("affine map parameters from different moduli");
    }

    Residue d() const noexcept { return d_; }
    Residue t() const noexcept { return t_; }
    Modulus modulus() const noexcept { return d_.modulus(); }

    value_t operator()(value_t x) const noexcept { return modulus().reduce(d_.value() * x + t_.value()); }
    Residue operator()(Residue x) const { return d_ * x + t_; }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

 private:
    Residue d_;
    Residue t_;
};

inline ResidueSet apply_affine(const AffineMap& m, const ResidueSet& s) {
    std::vector<value_t> out;
    out.reserve(s.size());
    for (value_t x : s) out.push_back(m(x));
    return {s.modulus(), std::move(out)};
}

/// The coloring whose class X is the image m(X) of the original class X.
inline Coloring apply_affine(const AffineMap& m, const Coloring& c) {
    std::vector<Label> labels(c.labels().size());
    const value_t p = c.modulus().value();
    for (value_t x = 0; x < p; ++x) labels[static_cast<std::size_t>(m(x))] = c[x];
    return {c.modulus(), std::move(labels)};
}

struct FixedPoint {
    enum class Kind { unique, none, all };
    Kind kind;
    std::optional<Residue> point;
};

inline FixedPoint fixed_point(const AffineMap& m) {
    const Modulus mod = m.modulus();
    if (m.d().value() != 1) {
        Residue one(1, mod);
        return {FixedPoint::Kind::unique, m.t() * inverse(one - m.d())};
    }
    if (!m.t().is_zero()) return {FixedPoint::Kind::none, std::nullopt};
    return {FixedPoint::Kind::all, std::nullopt};
}

inline bool is_invariant(const AffineMap& m, const ResidueSet& s) { return apply_affine(m, s) == s; }

/// Invariance under T_{d,t} decided through periodicity of S + t(d-1)^{-1}.
inline bool invariance_shift_equivalence(const AffineMap& m, const ResidueSet& s) {
    if (m.d().value() == 1) throw DomainError("shift equivalence needs d != 1");
    Residue one(1, m.modulus());
    Residue shift = m.t() * inverse(m.d() - one);
    return is_periodic(translate(s, shift), m.d());
}

}  // namespace rainbow
