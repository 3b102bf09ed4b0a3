#pragma once

/**
 * @file cli.hpp
 * @brief The `rainbow` command-line surface: classify, construct, verify,
 * enumerate, survey, scan.
 *
 * Exit codes: 0 success, 1 rainbow solution found, 2 validation mismatch or
 * scan violation, 64 parse error, 65 unsupported domain, 66 over budget.
 * JSON output uses a fixed field order and carries no timing or host data.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "rainbow/classify.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/sumset.hpp"
#include "rainbow/zp.hpp"

namespace rainbow::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
    ok = 0,
    rainbow_found = 1,
    mismatch = 2,
    parse_error = 64,
    unsupported = 65,
    over_budget = 66,
};

// ---------------------------------------------------------------------------
// JSON shapes

inline json to_json(const ResidueSet& s) { return json(s.values()); }

inline json to_json(const ClassificationResult& r, const Equation& eq) {
    json j;
    j["equation"] = eq.to_string();
    j["verdict"] = to_string(r.verdict);
    j["reason"] = to_string(r.reason);
    if (r.subgroup) j["subgroup"] = json{{"order", r.subgroup->order()}, {"elements", to_json(r.subgroup->elements())}};
    else j["subgroup"] = nullptr;
    if (r.verdict == Verdict::rainbow || !r.s) j["s"] = nullptr;
    else if (r.s_free) j["s"] = "free";
    else j["s"] = r.s->value();
    j["witness"] = r.witness ? json(r.witness->to_string()) : json(nullptr);
    return j;
}

inline json to_json(const StructureReport& r) {
    json j;
    j["clause"] = to_string(r.clause);
    if (r.roles) {
        std::string roles;
        for (Label l : *r.roles) roles += label_char(l);
        j["roles"] = roles;
    } else {
        j["roles"] = nullptr;
    }
    auto opt = [](const std::optional<Residue>& v) { return v ? json(v->value()) : json(nullptr); };
    j["s"] = opt(r.s);
    j["center"] = opt(r.center);
    j["free_element"] = opt(r.free_element);
    j["d"] = opt(r.d);
    j["cuts"] = r.cuts ? json(*r.cuts) : json(nullptr);
    return j;
}

inline json to_json(const OracleReport& r) {
    json j;
    j["equation"] = r.equation.to_string();
    j["total_colorings_scanned"] = r.total_colorings_scanned;
    j["rainbow_free"] = r.rainbow_free.size();
    j["all_matched_structure"] = r.all_matched_structure;
    json mism = json::array();
    for (const auto& c : r.mismatches) mism.push_back(c.to_string());
    j["mismatches"] = mism;
    j["classified"] = r.classified ? json(to_string(*r.classified)) : json(nullptr);
    j["verdict_consistent"] = r.verdict_consistent;
    return j;
}

// ---------------------------------------------------------------------------
// Argument helpers

namespace detail {

inline std::vector<value_t> parse_list(const std::string& text) {
    std::vector<value_t> out;
    if (text.empty()) return out;
    for (auto item : rainbow::detail::split(text, ',')) out.push_back(rainbow::detail::parse_int(item));
    return out;
}

inline Split parse_split(const std::string& text, std::size_t units) {
    Split split(units, false);
    for (value_t i : parse_list(text)) {
        if (i < 0 || static_cast<std::size_t>(i) >= units)
            throw ParseError(ParseErrc::out_of_range, "split index " + std::to_string(i) + " outside [0," +
                                                          std::to_string(units) + ")");
        split[static_cast<std::size_t>(i)] = true;
    }
    return split;
}

inline Label parse_label(const std::string& text) {
    if (text == "A") return Label::A;
    if (text == "B") return Label::B;
    if (text == "C") return Label::C;
    throw ParseError(ParseErrc::malformed, "label must be A, B or C");
}

/// `A=0,1` -> (A, {0,1}).
inline std::pair<Label, ResidueSet> parse_fixed(const std::string& text, Modulus m) {
    auto pos = text.find('=');
    if (pos == std::string::npos) throw ParseError(ParseErrc::malformed, "fixed class must look like A=0,1");
    const Label l = parse_label(text.substr(0, pos));
    auto values = parse_list(text.substr(pos + 1));
    for (value_t v : values)
        if (v < 0 || v >= m.value()) throw ParseError(ParseErrc::out_of_range, std::to_string(v) + " outside Z_p");
    if (values.empty()) throw ParseError(ParseErrc::empty_class, "fixed class is empty");
    return {l, ResidueSet(m, std::move(values))};
}

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

struct ClassifyArgs {
    std::string eq;
    std::optional<value_t> s;
    bool json = false;
    bool oracle = false;
};

inline ClassificationResult classify_by_oracle(const Equation& eq) {
    ClassificationResult r{Verdict::rainbow, Reason::oracle_exhaustive, dilation_group(eq)};
    EnumerationFilter f;
    f.dedupe_by_relabeling = true;
    auto found = enumerate_rainbow_free(eq, f);
    if (!found.empty()) {
        r.verdict = Verdict::non_rainbow;
        r.witness = found.front();
    }
    return r;
}

inline int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
    const Equation eq = Equation::parse(a.eq);
    ClassificationResult r = a.oracle ? classify_by_oracle(eq) : classify(eq, {a.s});
    if (a.json) {
        out << to_json(r, eq).dump() << '\n';
        return ok;
    }
    out << "equation: " << eq.to_string() << '\n'
        << "verdict: " << to_string(r.verdict) << '\n'
        << "reason: " << to_string(r.reason) << '\n';
    if (r.subgroup)
        out << "subgroup: order=" << r.subgroup->order() << " elements=" << r.subgroup->elements().to_string() << '\n';
    if (r.verdict == Verdict::non_rainbow && r.s)
        out << "s: " << (r.s_free ? std::string("free") : std::to_string(r.s->value())) << '\n';
    if (r.witness) out << "witness: " << r.witness->to_string() << '\n';
    return ok;
}

struct ConstructArgs {
    std::string eq;
    std::optional<value_t> s;
    std::optional<std::string> split;
    std::string variant = "auto";  ///< auto | singleton | i | ii
    std::string free = "B";
    value_t d = 1;
    std::optional<std::string> cuts;
    bool json = false;
};

inline int cmd_construct(const ConstructArgs& a, std::ostream& out) {
    const Equation eq = Equation::parse(a.eq);
    const Modulus m = eq.modulus();
    std::string variant = a.variant;
    if (variant == "auto") variant = eq.all_coeffs_equal() ? "i" : "singleton";

    std::optional<Coloring> c;
    if (variant == "singleton") {
        Residue s(0, m);
        const Residue sum = coeff_sum(eq);
        if (sum.is_zero()) s = Residue(a.s.value_or(0), m);
        else s = a.s ? Residue(*a.s, m) : eq.b() * inverse(sum);
        std::optional<Split> split;
        if (a.split) split = detail::parse_split(*a.split, singleton_units(eq, s).size());
        c = construct_singleton(eq, s, split);
    } else if (variant == "i") {
        SymmetricParams params{m.reduce(a.s.value_or(0)), detail::parse_label(a.free), std::nullopt};
        if (a.split) params.split = detail::parse_split(*a.split, symmetric_layout(eq, Residue(params.s, m)).units.size());
        c = construct_equal_coeffs(eq, params);
    } else if (variant == "ii") {
        IntervalParams params{a.d, std::nullopt};
        if (a.cuts) {
            auto v = detail::parse_list(*a.cuts);
            if (v.size() != 3) throw ParseError(ParseErrc::malformed, "--cuts needs three integers t1,t2,t3");
            params.cuts = std::array<value_t, 3>{v[0], v[1], v[2]};
        }
        c = construct_equal_coeffs(eq, params);
    } else {
        throw ParseError(ParseErrc::malformed, "--variant must be auto, singleton, i or ii");
    }

    if (a.json) {
        json j;
        j["equation"] = eq.to_string();
        j["coloring"] = c->to_string();
        j["structure"] = to_json(match_structure(eq, *c));
        out << j.dump() << '\n';
    } else {
        out << c->to_string() << '\n';
    }
    return ok;
}

struct VerifyArgs {
    std::string eq;
    std::string coloring;
    bool json = false;
};

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const Equation eq = Equation::parse(a.eq);
    const Coloring c = Coloring::parse(a.coloring);
    if (!(eq.modulus() == c.modulus()))
        throw ParseError(ParseErrc::modulus_mismatch, "equation and coloring use different moduli");
    const auto w = find_rainbow(eq, c);
    const auto report = w ? StructureReport{} : match_structure(eq, c);
    if (a.json) {
        json j;
        j["equation"] = eq.to_string();
        j["coloring"] = c.to_string();
        j["rainbow_free"] = !w;
        j["witness"] = w ? json{{"x", w->x}, {"y", w->y}, {"z", w->z}} : json(nullptr);
        j["structure"] = to_json(report);
        out << j.dump() << '\n';
    } else if (w) {
        out << "rainbow x=" << w->x << " y=" << w->y << " z=" << w->z << '\n';
    } else {
        out << "rainbow-free\n" << "structure: " << to_string(report.clause) << '\n';
    }
    return w ? rainbow_found : ok;
}

struct EnumerateArgs {
    std::string eq;
    std::optional<std::size_t> min_class;
    std::optional<std::string> fixed;
    bool dedupe = false;
    bool force = false;
    bool check = false;
};

inline int cmd_enumerate(const EnumerateArgs& a, std::ostream& out) {
    const Equation eq = Equation::parse(a.eq);
    EnumerationFilter f;
    f.min_class_size = a.min_class;
    if (a.fixed) f.fixed_class = detail::parse_fixed(*a.fixed, eq.modulus());
    f.dedupe_by_relabeling = a.dedupe;
    check_budget(eq.modulus(), f, a.force);

    if (a.check) {
        const OracleReport r = cross_validate(eq, f);
        for (const auto& c : r.rainbow_free) out << c.to_string() << '\n';
        out << to_json(r).dump() << '\n';
        return r.validated() ? ok : mismatch;
    }
    const auto scan = scan_rainbow_free(eq, f);
    for (const auto& c : scan.rainbow_free) out << c.to_string() << '\n';
    json j;
    j["equation"] = eq.to_string();
    j["scanned"] = scan.scanned;
    j["rainbow_free"] = scan.rainbow_free.size();
    out << j.dump() << '\n';
    return ok;
}

/// Lexicographically least (sorted coefficients, b) over all nonzero scalings.
inline std::array<value_t, 4> canonical_class(const Equation& eq) {
    const Modulus m = eq.modulus();
    std::optional<std::array<value_t, 4>> best;
    for (value_t l = 1; l < m.value(); ++l) {
        const Equation s = eq.scaled(Residue(l, m));
        std::array<value_t, 3> a{s.a1().value(), s.a2().value(), s.a3().value()};
        std::sort(a.begin(), a.end());
        std::array<value_t, 4> key{a[0], a[1], a[2], s.b().value()};
        if (!best || key < *best) best = key;
    }
    return *best;
}

struct SurveyRow {
    Equation equation;
    ClassificationResult result;
};

inline std::vector<SurveyRow> survey(Modulus m, bool raw) {
    const value_t p = m.value();
    std::vector<SurveyRow> rows;
    std::vector<std::array<value_t, 4>> seen;
    for (value_t a1 = 1; a1 < p; ++a1)
        for (value_t a2 = 1; a2 < p; ++a2)
            for (value_t a3 = 1; a3 < p; ++a3)
                for (value_t b = 0; b < p; ++b) {
                    Equation eq(m, a1, a2, a3, b);
                    if (!raw) {
                        const auto key = canonical_class(eq);
                        if (key != std::array<value_t, 4>{a1, a2, a3, b}) continue;
                    }
                    rows.push_back({eq, classify(eq)});
                }
    return rows;
}

struct SurveyArgs {
    value_t p = 0;
    bool raw = false;
    bool check = false;
    bool force = false;
};

inline int cmd_survey(const SurveyArgs& a, std::ostream& out, std::ostream& err) {
    if (!is_prime(a.p)) throw ParseError(ParseErrc::bad_modulus, std::to_string(a.p) + " is not prime");
    const Modulus m(a.p);
    if (a.p < 5) throw UnsupportedDomain("survey needs p >= 5");
    if (a.check && a.p > 7 && !a.force) throw BudgetError("--check runs exhaustive sweeps; only p <= 7 without --force");
    const auto rows = survey(m, a.raw);
    out << "p,a1,a2,a3,b,verdict,reason,subgroup_order,s,witness\n";
    std::size_t failures = 0;
    for (const auto& row : rows) {
        const auto& r = row.result;
        const auto& e = row.equation;
        std::string s;
        if (r.verdict == Verdict::non_rainbow && r.s) s = r.s_free ? "free" : std::to_string(r.s->value());
        out << a.p << ',' << e.a1().value() << ',' << e.a2().value() << ',' << e.a3().value() << ','
            << e.b().value() << ',' << to_string(r.verdict) << ',' << to_string(r.reason) << ','
            << (r.subgroup ? r.subgroup->order() : 0) << ',' << s << ','
            << (r.witness ? detail::csv_quote(r.witness->to_string()) : std::string()) << '\n';
        if (a.check) {
            const OracleReport rep = cross_validate(e);
            if (!rep.validated()) {
                ++failures;
                err << "mismatch: " << to_json(rep).dump() << '\n';
            }
        }
    }
    if (a.check) err << "checked " << rows.size() << " rows, " << failures << " mismatches\n";
    return failures ? mismatch : ok;
}

struct ScanArgs {
    std::string which;
    std::optional<value_t> p;
    std::optional<std::string> eq;
    std::size_t k = 2;
    std::uint64_t seed = ScanOptions{}.seed;
    std::size_t samples = ScanOptions{}.samples;
    bool force = false;
};

inline int cmd_scan(const ScanArgs& a, std::ostream& out) {
    std::optional<Equation> eq;
    if (a.eq) eq = Equation::parse(*a.eq);
    std::optional<Modulus> m;
    if (a.p) {
        if (!is_prime(*a.p)) throw ParseError(ParseErrc::bad_modulus, std::to_string(*a.p) + " is not prime");
        m = Modulus(*a.p);
    }
    if (eq) {
        if (m && !(*m == eq->modulus())) throw ParseError(ParseErrc::modulus_mismatch, "--p disagrees with --eq");
        m = eq->modulus();
    }
    if (!m) throw ParseError(ParseErrc::malformed, "scan needs --p or --eq");

    ScanOptions opt;
    opt.seed = a.seed;
    opt.samples = a.samples;
    auto sink = [&](const std::string& line) { out << line << '\n'; };
    std::size_t checked = 0, violations = 0;

    if (a.which == "cd") {
        auto r = scan_cd(*m, opt, sink);
        checked = r.checked;
        violations = r.violations.size();
    } else if (a.which == "vosper") {
        auto r = scan_vosper(*m, opt, sink);
        checked = r.checked;
        violations = r.violations.size();
    } else if (a.which == "hr") {
        auto r = scan_hr(*m, opt, sink);
        checked = r.checked;
        violations = r.violations.size();
    } else if (a.which == "lemma43") {
        if (m->value() > 19 && !a.force) throw BudgetError("lemma43 scan is exhaustive; p > 19 needs --force");
        violations = lemma43_scan(*m, sink).size();
        checked = std::size_t{1} << m->value();
    } else if (a.which == "minclass") {
        if (!eq) throw ParseError(ParseErrc::malformed, "minclass scan needs --eq");
        if (m->value() > 13 && !a.force) throw BudgetError("minclass scan beyond p = 13 needs --force");
        auto r = min_class_scan(*eq, a.k);
        for (const auto& c : r.rainbow_free) sink(c.to_string());
        checked = r.scanned;
        violations = r.rainbow_free.size();
    } else {
        throw ParseError(ParseErrc::malformed, "unknown scan '" + a.which + "'");
    }
    json j;
    j["scan"] = a.which;
    j["p"] = m->value();
    if (a.which == "minclass") {
        j["equation"] = eq->to_string();
        j["k"] = a.k;
    }
    j["checked"] = checked;
    j["violations"] = violations;
    out << j.dump() << '\n';
    return violations ? mismatch : ok;
}

// ---------------------------------------------------------------------------
// Entry point

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rainbow-free 3-colorings of Z_p for a1 x + a2 y + a3 z = b", "rainbow"};
    app.require_subcommand(1);

    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Decide whether every 3-coloring has a rainbow solution");
    classify_cmd->add_option("--eq", ca.eq, "Equation, e.g. p=13;eq=1,-4,3,0")->required();
    classify_cmd->add_option("--s", ca.s, "Singleton to use when it is a free choice");
    classify_cmd->add_flag("--json", ca.json);
    classify_cmd->add_flag("--oracle", ca.oracle, "Decide by exhaustive search (any p)");

    ConstructArgs co;
    auto* construct_cmd = app.add_subcommand("construct", "Build a rainbow-free coloring");
    construct_cmd->add_option("--eq", co.eq)->required();
    construct_cmd->add_option("--s", co.s, "Singleton class");
    construct_cmd->add_option("--split", co.split, "Comma list of unit indices assigned to B");
    construct_cmd->add_option("--variant", co.variant, "auto | singleton | i | ii");
    construct_cmd->add_option("--free", co.free, "Class receiving b'-2s in variant i (B or C)");
    construct_cmd->add_option("--d", co.d, "Common difference for variant ii");
    construct_cmd->add_option("--cuts", co.cuts, "Cut points t1,t2,t3 for variant ii");
    construct_cmd->add_flag("--json", co.json);

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Check a coloring for rainbow solutions");
    verify_cmd->add_option("--eq", va.eq)->required();
    verify_cmd->add_option("--coloring", va.coloring)->required();
    verify_cmd->add_flag("--json", va.json);

    EnumerateArgs ea;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "List every rainbow-free coloring");
    enumerate_cmd->add_option("--eq", ea.eq)->required();
    enumerate_cmd->add_option("--min-class", ea.min_class, "Minimum class size");
    enumerate_cmd->add_option("--fixed", ea.fixed, "Fixed class, e.g. A=0");
    enumerate_cmd->add_flag("--dedupe", ea.dedupe, "Only canonical representatives under relabeling");
    enumerate_cmd->add_flag("--force", ea.force);
    enumerate_cmd->add_flag("--check", ea.check, "Cross-validate against the characterization");

    SurveyArgs sa;
    auto* survey_cmd = app.add_subcommand("survey", "Classify every canonical equation class for p");
    survey_cmd->add_option("--p", sa.p)->required();
    survey_cmd->add_flag("--raw", sa.raw, "One row per raw coefficient tuple");
    survey_cmd->add_flag("--check", sa.check, "Cross-validate each row exhaustively");
    survey_cmd->add_flag("--force", sa.force);

    ScanArgs sc;
    auto* scan_cmd = app.add_subcommand("scan", "Run a property scan: cd, vosper, hr, lemma43, minclass");
    scan_cmd->add_option("which", sc.which)->required()->check(CLI::IsMember({"cd", "vosper", "hr", "lemma43", "minclass"}));
    scan_cmd->add_option("--p", sc.p);
    scan_cmd->add_option("--eq", sc.eq);
    scan_cmd->add_option("--k", sc.k, "Smallest class size for minclass (2 or 3)");
    scan_cmd->add_option("--seed", sc.seed);
    scan_cmd->add_option("--samples", sc.samples, "Random pairs when p is too large for an exhaustive scan");
    scan_cmd->add_flag("--force", sc.force);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return parse_error;
    }

    try {
        if (*classify_cmd) return cmd_classify(ca, out);
        if (*construct_cmd) return cmd_construct(co, out);
        if (*verify_cmd) return cmd_verify(va, out);
        if (*enumerate_cmd) return cmd_enumerate(ea, out);
        if (*survey_cmd) return cmd_survey(sa, out, err);
        if (*scan_cmd) return cmd_scan(sc, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const BudgetError& e) {
        err << "over budget: " << e.what() << '\n';
        return over_budget;
    } catch (const DomainError& e) {
        err << "unsupported: " << e.what() << '\n';
        return unsupported;
    }
    return parse_error;
}

}  // namespace rainbow::cli
