// Acceptance runner: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include "chisq/fixtures.h"
#include "chisq/km.h"
#include "chisq/resolve.h"
#include "chisq/theorems.h"
#include "oracle.h"
#include "properties.h"
#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace chisq;
using namespace chisq::theorems;
using resolve::AlgebraName;

namespace {

struct Outcome
{
    bool ok = true;
    std::string detail;
};

std::string read_module(const std::string& name)
{
    std::ifstream in(std::string(CHISQ_DATA_DIR) + "/modules/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome from_report(const props::Report& r)
{
    if (r.ok())
        return {true, fmt::format("{} checks", r.checks)};
    return {false, fmt::format("{} of {} checks fail, first: {}", r.failures.size(), r.checks, r.failures.front())};
}

// Resolutions computed along the way; all of them are verified in the last
// criterion.
std::vector<std::unique_ptr<resolve::GradedModule>> modules;
std::vector<std::unique_ptr<resolve::Resolution>> resolutions;

const resolve::Resolution& keep(resolve::GradedModule m, int max_s, int max_t)
{
    modules.push_back(std::make_unique<resolve::GradedModule>(std::move(m)));
    resolutions.push_back(std::make_unique<resolve::Resolution>(*modules.back(), max_s, max_t));
    return *resolutions.back();
}

Outcome closed_form_vs_search(Ideal ideal, int lo, int hi)
{
    std::set<char> cases;
    for (int n = lo; n <= hi; ++n) {
        const auto formula = min_k_formula(n, ideal);
        const auto found = min_k_search(n, ideal, n);
        if (found != formula)
            return {false, fmt::format("n = {}: formula {}, search {}", n, formula ? *formula : -1, found ? *found : -1)};
        cases.insert(classify(n, ideal).letter);
    }
    return {true, fmt::format("{} values, cases {}", hi - lo + 1, std::string(cases.begin(), cases.end()))};
}

Outcome criterion_1()
{
    return closed_form_vs_search(Ideal::Sq1, 2, 36);
}

Outcome criterion_2()
{
    Outcome o = closed_form_vs_search(Ideal::Sq12, 8, 36);
    if (o.ok && o.detail.find("CDE") == std::string::npos)
        return {false, "range does not reach all of cases C, D, E: " + o.detail};
    return o;
}

Outcome criterion_3()
{
    return from_report(props::sub_eight_vanishing());
}

Outcome criterion_4()
{
    return from_report(props::ideal_spans(20));
}

Outcome criterion_5()
{
    int cells = 0;
    for (auto* table : {&fixtures::k2_primitive_action_table(), &fixtures::k3_generator_table()})
        for (auto& c : fixtures::check_action_table(*table)) {
            ++cells;
            if (!c.ok)
                return {false, fmt::format("{} {} {}: expected {}, computed {}", table->id, c.row, c.column, c.expected,
                                           c.computed)};
        }
    return {true, fmt::format("{} cells", cells)};
}

std::map<int, int> homology_dims(const resolve::MargolisHomology& h, int through)
{
    std::map<int, int> out;
    for (auto& [d, n] : h.dims)
        if (d <= through)
            out[d] = n;
    return out;
}

std::map<int, int> nonzero(const oracle::Series& s)
{
    std::map<int, int> out;
    for (size_t d = 0; d < s.size(); ++d)
        if (s[d])
            out[static_cast<int>(d)] = static_cast<int>(s[d]);
    return out;
}

Outcome criterion_6()
{
    const auto k2 = resolve::module_from_km(2, AlgebraName::E1, 38);
    const auto p = oracle::polynomial_series({4}, 35);
    const auto q0 = nonzero(oracle::multiply(p, oracle::exterior_series({5}, 35)));
    const auto q1 = nonzero(oracle::multiply(p, oracle::exterior_series({9, 17, 18, 34}, 35)));
    if (homology_dims(resolve::margolis_homology(k2, 0), 35) != q0)
        return {false, "(a) Q0-homology of K2"};
    if (homology_dims(resolve::margolis_homology(k2, 1), 35) != q1)
        return {false, "(b) Q1-homology of K2"};
    const auto k3 = resolve::module_from_km(3, AlgebraName::A1, 21);
    const std::map<int, int> expected{{0, 1}, {12, 1}, {13, 1}, {20, 1}};
    if (homology_dims(resolve::margolis_homology(k3, 0), 20) != expected)
        return {false, "(c) Q0-homology of K3"};
    return {true, "(a) (b) (c)"};
}

Outcome criterion_7()
{
    const auto rows = fixtures::check_spin_table();
    for (auto& r : rows)
        if (!r.ok)
            return {false, fmt::format("n = {}: c = {}, predicted {}", r.n, r.c, r.predicted_c)};
    return {true, fmt::format("{} dimensions", rows.size())};
}

Outcome criterion_8()
{
    const int max_s = 16, max_t = 23 + max_s;
    const auto& r = keep(resolve::module_from_km(2, AlgebraName::A1, max_t + 6), max_s, max_t);
    const auto chart = r.chart();
    int cells = 0;
    for (int s = 1; s <= max_s; ++s)
        for (int stem : {7, 15, 23}) {
            const auto rank = chart.rank(s, s + stem);
            if (!rank)
                return {false, fmt::format("(s, t-s) = ({}, {}) outside the valid window", s, stem)};
            if (*rank != 0)
                return {false, fmt::format("rank {} at (s, t-s) = ({}, {})", *rank, s, stem)};
            ++cells;
        }
    return {true, fmt::format("{} cells, s <= {}", cells, max_s)};
}

Outcome criterion_9()
{
    const auto& r = keep(resolve::module_from_json(read_module("F2.json")), 30, 30);
    const auto chart = r.chart();
    for (int s = 0; s <= 30; ++s)
        for (int t = 0; t <= 30; ++t)
            if (chart.rank(s, t) != oracle::koszul_rank(s, t))
                return {false, fmt::format("(s, t) = ({}, {})", s, t)};
    return {true, "s, t <= 30"};
}

Outcome criterion_10()
{
    const std::map<int, BigInt> expected{{4, 1}, {5, 40}, {6, 240}, {7, 448}, {8, 256}};
    if (two_series_image(8) != expected)
        return {false, "coefficients differ"};
    return {true, "{4:1, 5:40, 6:240, 7:448, 8:256}"};
}

Outcome criterion_11()
{
    int checked = 0;
    for (int n = 4; n <= 64; n += 4)
        for (auto part : {LemmaPart::A, LemmaPart::B}) {
            if (part == LemmaPart::B && n % 8 != 0)
                continue;
            const auto r = lemma23(n, part);
            const int expected = alpha(n) + (part == LemmaPart::A ? 1 : 2);
            if (r.min_sum != expected || r.minimizers.empty() || r.minimizers != r.reachable)
                return {false, fmt::format("n = {}, part {}", n, part == LemmaPart::A ? 'a' : 'b')};
            ++checked;
        }
    return {true, fmt::format("{} cases", checked)};
}

Outcome criterion_12()
{
    const std::int64_t top = std::int64_t(1) << 20;
    for (std::int64_t n = 2; n <= top; ++n) {
        if (min_k_formula(n, Ideal::Sq1) != alpha(n) + eps(n))
            return {false, fmt::format("Sq1, n = {}", n)};
        if (n >= 8 && min_k_formula(n, Ideal::Sq12) != alpha(n) + eps_prime(n))
            return {false, fmt::format("Sq12, n = {}", n)};
    }
    return {true, "n <= 2^20"};
}

Outcome criterion_13()
{
    props::Report all;
    all.merge(props::chi_recursion(24));
    all.merge(props::antipode_identity(16));
    all.merge(props::associativity(14));
    all.merge(props::oracle_agreement(16));
    for (int k = 2; k <= 3; ++k) {
        all.merge(props::cartan(k, 24));
        all.merge(props::derivation(k, 24));
    }
    keep(resolve::module_from_json(read_module("M4.json")), 5, 34);
    keep(resolve::module_from_json(read_module("N.json")), 8, 30);
    keep(resolve::module_from_km(3, AlgebraName::A1, 30), 8, 24);
    for (auto& r : resolutions)
        all.merge(props::resolution(*r));
    return from_report(all);
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"smallest k for Sq1: closed form equals search, 2 <= n <= 36", criterion_1},
        {"smallest k for Sq1, Sq2: closed form equals search, 8 <= n <= 36", criterion_2},
        {"chi(Sq^{n-k}) iota_k in the image for 2 <= n <= 7, k < n", criterion_3},
        {"digit criterion spans Sq1 A (+ Sq2 A) in degrees <= 20", criterion_4},
        {"Q0/Q1 table for K(Z/2,2) and Sq1/Sq2/Q1 table for K(Z/2,3)", criterion_5},
        {"Margolis homology of K(Z/2,2) and K(Z/2,3)", criterion_6},
        {"Spin dual Stiefel-Whitney table against the closed form", criterion_7},
        {"Ext_A(1)(K(Z/2,2)) vanishes for s > 0 in stems 7, 15, 23", criterion_8},
        {"Ext_E(1)(F2) is the Koszul count for t <= 30", criterion_9},
        {"[2]-series coefficients for j = 8", criterion_10},
        {"digit-sum minimisers for n <= 64", criterion_11},
        {"closed forms equal alpha(n) + eps for n <= 2^20", criterion_12},
        {"property suites and resolution checks", criterion_13},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        }
        catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += o.ok ? 0 : 1;
        fmt::print("{} {:>2}. {} [{}; {:.2f} s]\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail, secs);
    }
    fmt::print("{} of {} criteria pass\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
