// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rainbow/rainbow.hpp"

using namespace rainbow;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::vector<Equation> seeded_equations(value_t p, std::size_t count, std::uint64_t seed, bool unequal_only) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<value_t> coeff(1, p - 1), rhs(0, p - 1);
    std::vector<Equation> out;
    while (out.size() < count) {
        Equation eq(Modulus(p), coeff(rng), coeff(rng), coeff(rng), rhs(rng));
        if (unequal_only && eq.all_coeffs_equal()) continue;
        out.push_back(eq);
    }
    return out;
}

EnumerationFilter dedupe() { return {std::nullopt, std::nullopt, true}; }

Outcome criterion1() {
    Outcome o;
    std::ostringstream d;
    auto fail = [&](const std::string& why) {
        o.pass = false;
        d << why << "; ";
    };

    auto eq1 = Equation::parse("p=13;eq=1,-4,3,0");
    auto c1 = Coloring::parse("p=13;A=0;B=1,3,4,9,10,12;C=2,5,6,7,8,11");
    if (!(dilation_group(eq1).elements() == ResidueSet(Modulus(13), {1, 3, 4, 9, 10, 12}))) fail("(a) H differs");
    if (!is_rainbow_free(eq1, c1)) fail("(a) coloring not rainbow-free");
    if (!(classify(eq1).witness == c1)) fail("(a) classify witness differs");

    auto eq2 = Equation::parse("p=17;eq=1,8,-2,3");
    auto c2 = Coloring::parse("p=17;A=15;B=16,0,2,6,7,11,13,14;C=1,3,4,5,8,9,10,12");
    auto r2 = classify(eq2);
    auto h2 = dilation_group(eq2);
    if (!r2.s || r2.s->value() != 15) fail("(b) s != 15");
    if (h2.order() != 8 || !(h2.elements() == subgroup_generated(ResidueSet(Modulus(17), {2})).elements()))
        fail("(b) H != <2>");
    if (!is_rainbow_free(eq2, c2)) fail("(b) coloring not rainbow-free");
    if (match_structure(eq2, c2).clause != Clause::main_singleton) fail("(b) clause");

    auto eq3 = Equation::parse("p=13;eq=1,1,1,2");
    auto c3 = Coloring::parse("p=13;A=2,4,6,8;B=10,12,1,3;C=5,7,9,11,0");
    if (!is_rainbow_free(eq3, c3)) fail("(c) coloring not rainbow-free");
    auto r3 = match_structure(eq3, c3);
    if (r3.clause != Clause::equal_coeffs_three_aps) {
        fail("(c) clause " + std::string(to_string(r3.clause)));
    } else {
        const auto& t = *r3.cuts;
        const value_t sum = (t[0] + t[1] + t[2]) % 13;
        if (!(r3.d->value() == 2 || r3.d->value() == 11)) fail("(c) d");
        if (sum != 2) fail("(c) cut sum " + std::to_string(sum));
        d << "(c) d=" << r3.d->value() << " cuts=" << t[0] << "," << t[1] << "," << t[2] << " sum=" << sum << "; ";
    }
    o.detail = d.str();
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::size_t tuples = 0, disagreements = 0, mismatches = 0, colorings = 0;
    for (value_t p : {5, 7}) {
        Modulus m(p);
        for (value_t a1 = 1; a1 < p; ++a1)
            for (value_t a2 = 1; a2 < p; ++a2)
                for (value_t a3 = 1; a3 < p; ++a3)
                    for (value_t b = 0; b < p; ++b) {
                        Equation eq(m, a1, a2, a3, b);
                        ++tuples;
                        // the full enumeration is used so every labeled coloring reaches match_structure
                        auto r = cross_validate(eq);
                        colorings += r.rainbow_free.size();
                        mismatches += r.mismatches.size();
                        const bool oracle_rainbow = r.rainbow_free.empty();
                        if (oracle_rainbow != (*r.classified == Verdict::rainbow)) ++disagreements;
                    }
    }
    o.pass = tuples == 320 + 1512 && disagreements == 0 && mismatches == 0;
    o.detail = std::to_string(tuples) + " tuples, " + std::to_string(colorings) + " rainbow-free colorings, " +
               std::to_string(disagreements) + " verdict disagreements, " + std::to_string(mismatches) +
               " structure mismatches";
    return o;
}

// Uniform draws are mostly rainbow, so a second batch is drawn from
// equations whose dilation group is proper.
std::vector<Equation> seeded_proper_equations(value_t p, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<value_t> coeff(1, p - 1), rhs(0, p - 1);
    std::vector<Equation> out;
    while (out.size() < count) {
        Equation eq(Modulus(p), coeff(rng), coeff(rng), coeff(rng), rhs(rng));
        if (static_cast<value_t>(dilation_group(eq).order()) < p - 1) out.push_back(eq);
    }
    return out;
}

Outcome criterion3() {
    Outcome o;
    std::size_t checked = 0, unfiltered = 0, disagreements = 0, rainbow = 0;
    std::ostringstream d;
    for (value_t p : {11, 13}) {
        const Modulus m(p);
        auto eqs = seeded_equations(p, 50, 1000 + static_cast<std::uint64_t>(p), false);
        auto proper = seeded_proper_equations(p, 50, 3000 + static_cast<std::uint64_t>(p));
        eqs.insert(eqs.end(), proper.begin(), proper.end());
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            const auto& eq = eqs[i];
            const bool predicted_rainbow = classify(eq).verdict == Verdict::rainbow;
            rainbow += predicted_rainbow ? 1 : 0;
            // singleton placements at every s
            bool found = false;
            for (value_t s = 0; s < p && !found; ++s) {
                EnumerationFilter f{std::nullopt, std::pair{Label::A, ResidueSet(m, {s})}, true};
                found = exists_rainbow_free(eq, f);
            }
            ++checked;
            if (found == predicted_rainbow) {
                ++disagreements;
                d << "filtered " << eq.to_string() << "; ";
            }
            // every equation at p=11, every fifth at p=13
            if (p == 11 || i % 5 == 0) {
                ++unfiltered;
                if (exists_rainbow_free(eq, dedupe()) == predicted_rainbow) {
                    ++disagreements;
                    d << "unfiltered " << eq.to_string() << "; ";
                }
            }
        }
    }
    o.pass = disagreements == 0 && checked >= 100 && unfiltered >= 10;
    o.detail = std::to_string(checked) + " equations (" + std::to_string(rainbow) + " rainbow), " +
               std::to_string(unfiltered) + " also unfiltered, " + std::to_string(disagreements) +
               " disagreements; " + d.str();
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t runs = 0, scanned = 0, found = 0;
    std::ostringstream d;
    for (value_t p : {11, 13})
        for (const auto& eq : seeded_equations(p, 20, 2000 + static_cast<std::uint64_t>(p), true))
            for (std::size_t k : {2u, 3u}) {
                auto r = min_class_scan(eq, k);
                ++runs;
                scanned += r.scanned;
                if (!r.rainbow_free.empty()) {
                    found += r.rainbow_free.size();
                    d << eq.to_string() << " k=" << k << ": " << r.rainbow_free.front().to_string() << "; ";
                }
            }
    o.pass = found == 0 && runs == 80;
    o.detail = std::to_string(runs) + " scans over " + std::to_string(scanned) + " colorings, " +
               std::to_string(found) + " rainbow-free; " + d.str();
    return o;
}

Outcome criterion5() {
    Outcome o;
    std::size_t primes = 0;
    std::ostringstream d;
    for (value_t p = 5; p < 100; ++p) {
        if (!is_prime(p)) continue;
        ++primes;
        const bool by_classify = classify(Equation(Modulus(p), 1, 1, p - 2, 0)).verdict == Verdict::rainbow;
        if (by_classify != rainbow_criterion_ap3(Modulus(p))) {
            o.pass = false;
            d << "p=" << p << " ";
        }
    }
    o.detail = std::to_string(primes) + " primes checked " + d.str();
    return o;
}

Outcome criterion6() {
    Outcome o;
    std::ostringstream d;
    auto report = [&](const char* name, const ScanReport& r) {
        d << name << ": " << r.checked << " checked, " << r.violations.size() << " violations; ";
        if (!r.violations.empty()) o.pass = false;
    };
    report("cd p=7", scan_cd(Modulus(7)));
    report("vosper p=7", scan_vosper(Modulus(7)));
    report("hr p=11", scan_hr(Modulus(11)));
    for (value_t p : {11, 13}) {
        auto v = lemma43_scan(Modulus(p));
        d << "lemma43 p=" << p << ": " << v.size() << " violations; ";
        if (!v.empty()) o.pass = false;
    }
    o.detail = d.str();
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::size_t built = 0, bad = 0;
    std::ostringstream d;
    auto verify = [&](const Equation& eq, const Coloring& c, Clause expected) {
        ++built;
        const auto r = match_structure(eq, c);
        if (!is_rainbow_free(eq, c) || r.clause != expected || !recheck(eq, c, r)) {
            if (++bad <= 5) d << eq.to_string() << " " << c.to_string() << "; ";
        }
    };
    for (value_t p : {5, 7, 11, 13}) {
        const Modulus m(p);
        for (value_t a1 = 1; a1 < p; ++a1)
            for (value_t a2 = 1; a2 < p; ++a2)
                for (value_t a3 = 1; a3 < p; ++a3)
                    for (value_t b = 0; b < p; ++b) {
                        Equation eq(m, a1, a2, a3, b);
                        const auto r = classify(eq);
                        if (r.verdict == Verdict::rainbow) continue;
                        if (eq.all_coeffs_equal()) {
                            for (value_t s = 0; s < p; ++s)
                                for (Label side : {Label::B, Label::C})
                                    verify(eq, construct_equal_coeffs(eq, SymmetricParams{s, side, std::nullopt}),
                                           Clause::equal_coeffs_singleton_symmetric);
                            for (value_t dv = 1; dv < p; ++dv) {
                                try {
                                    verify(eq, construct_equal_coeffs(eq, IntervalParams{dv, std::nullopt}),
                                           Clause::equal_coeffs_three_aps);
                                } catch (const DomainError&) {
                                    // no three classes of size >= 2 fit (p = 5)
                                }
                            }
                            continue;
                        }
                        if (r.s_free) {
                            for (value_t s = 0; s < p; ++s)
                                verify(eq, construct_singleton(eq, Residue(s, m)), Clause::main_singleton);
                        } else {
                            verify(eq, construct_singleton(eq, *r.s), Clause::main_singleton);
                        }
                    }
    }
    auto eq2 = Equation::parse("p=17;eq=1,8,-2,3");
    for (const Split& split : {Split{true, false}, Split{false, true}})
        verify(eq2, construct_singleton(eq2, Residue(15, Modulus(17)), split), Clause::main_singleton);
    o.pass = bad == 0;
    o.detail = std::to_string(built) + " constructions, " + std::to_string(bad) + " failures; " + d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 reference colorings reproduce", criterion1},
        {"2 classify equals oracle at p=5,7", criterion2},
        {"3 sampled equivalence at p=11,13", criterion3},
        {"4 min-class scans empty at p=11,13", criterion4},
        {"5 AP3 criterion for primes below 100", criterion5},
        {"6 additive-tools scans", criterion6},
        {"7 constructor soundness", criterion7},
    };
    bool all = true;
    for (const auto& [name, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] C%s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
