#pragma once

/**
 * @file equation.hpp
 * @brief The equation a1 x + a2 y + a3 z = b over Z_p and the rainbow scan.
 */

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rainbow/coloring.hpp"
#include "rainbow/zp.hpp"

namespace rainbow {

/// Ordered solution; slot i is multiplied by a_i.
struct SolutionTriple {
    value_t x, y, z;
    friend bool operator==(const SolutionTriple&, const SolutionTriple&) = default;
};

class Equation {
 public:
    Equation(Modulus m, value_t a1, value_t a2, value_t a3, value_t b)
        : mod_(m), a_{Residue(a1, m), Residue(a2, m), Residue(a3, m)}, b_(b, m) {
        for (const auto& a : a_)
            if (a.is_zero()) throw DomainError("equation coefficients must be nonzero mod p");
    }

    /// Parses `p=<p>;eq=<a1>,<a2>,<a3>,<b>`; negative integers are reduced mod p.
    static Equation parse(std::string_view text) {
        auto fields = detail::split(text, ';');
        if (fields.size() != 2) throw ParseError(ParseErrc::malformed, "expected p=..;eq=a1,a2,a3,b");
        Modulus m = detail::parse_modulus(detail::expect_key(fields[0], "p"));
        auto parts = detail::split(detail::expect_key(fields[1], "eq"), ',');
        if (parts.size() != 4) throw ParseError(ParseErrc::malformed, "expected four integers a1,a2,a3,b");
        std::array<value_t, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) v[i] = detail::parse_int(parts[i]);
        for (std::size_t i = 0; i < 3; ++i)
            if (m.reduce(v[i]) == 0) throw ParseError(ParseErrc::zero_coefficient, "a" + std::to_string(i + 1) + " is 0 mod p");
        return {m, v[0], v[1], v[2], v[3]};
    }

    std::string to_string() const {
        return "p=" + std::to_string(mod_.value()) + ";eq=" + std::to_string(a_[0].value()) + "," +
               std::to_string(a_[1].value()) + "," + std::to_string(a_[2].value()) + "," + std::to_string(b_.value());
    }

    Modulus modulus() const noexcept { return mod_; }
    Residue a1() const noexcept { return a_[0]; }
    Residue a2() const noexcept { return a_[1]; }
    Residue a3() const noexcept { return a_[2]; }
    Residue b() const noexcept { return b_; }
    const std::array<Residue, 3>& coefficients() const noexcept { return a_; }

    bool all_coeffs_equal() const noexcept { return a_[0] == a_[1] && a_[1] == a_[2]; }

    Residue evaluate(value_t x, value_t y, value_t z) const {
        return a_[0] * Residue(x, mod_) + a_[1] * Residue(y, mod_) + a_[2] * Residue(z, mod_);
    }

    Equation with_b(value_t b) const { return {mod_, a_[0].value(), a_[1].value(), a_[2].value(), b}; }

    Equation scaled(Residue lambda) const {
        if (lambda.is_zero()) throw DomainError("scaling an equation by 0");
        return {mod_, (lambda * a_[0]).value(), (lambda * a_[1]).value(), (lambda * a_[2]).value(),
                (lambda * b_).value()};
    }

    friend bool operator==(const Equation&, const Equation&) = default;

 private:
    Modulus mod_;
    std::array<Residue, 3> a_;
    Residue b_;
};

inline Residue coeff_sum(const Equation& eq) { return eq.a1() + eq.a2() + eq.a3(); }

struct NormalForm {
    Equation equation;  ///< same coefficients, b = 0
    AffineMap map;      ///< the translation T_{1, -b a^{-1}}
};

/// Translates b away; the image of a rainbow-free coloring under `map` is
/// rainbow-free for the homogeneous equation and vice versa.
inline NormalForm normalize_b(const Equation& eq) {
    const Residue a = coeff_sum(eq);
    if (a.is_zero()) throw DomainError("no translation normal form: coefficient sum is 0");
    const Modulus m = eq.modulus();
    return {eq.with_b(0), AffineMap(Residue(1, m), -(eq.b() * inverse(a)))};
}

inline Residue solve_z(const Equation& eq, Residue x, Residue y) {
    return inverse(eq.a3()) * (eq.b() - eq.a1() * x - eq.a2() * y);
}

namespace detail {

/// Row-major (x, y) scan over a raw label array; first rainbow triple wins.
inline std::optional<SolutionTriple> find_rainbow_raw(const Equation& eq, std::span<const Label> labels) {
    const Modulus m = eq.modulus();
    const value_t p = m.value();
    const value_t inv3 = inverse(eq.a3()).value();
    const value_t cx = m.reduce(-eq.a1().value() * inv3);
    const value_t cy = m.reduce(-eq.a2().value() * inv3);
    const value_t c0 = m.reduce(eq.b().value() * inv3);
    for (value_t x = 0; x < p; ++x) {
        const Label lx = labels[static_cast<std::size_t>(x)];
        value_t z = m.reduce(c0 + cx * x);
        for (value_t y = 0; y < p; ++y) {
            const Label ly = labels[static_cast<std::size_t>(y)];
            if (ly != lx) {
                const Label lz = labels[static_cast<std::size_t>(z)];
                if (lz != lx && lz != ly) return SolutionTriple{x, y, z};
            }
            z += cy;
            if (z >= p) z -= p;
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<SolutionTriple> find_rainbow(const Equation& eq, const Coloring& c) {
    if (!(eq.modulus() == c.modulus())) throw DomainError("equation and coloring use different moduli");
    return detail::find_rainbow_raw(eq, c.labels());
}

inline bool is_rainbow_free(const Equation& eq, const Coloring& c) { return !find_rainbow(eq, c).has_value(); }

}  // namespace rainbow
