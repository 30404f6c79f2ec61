#include "chisq/cli.h"
#include "chisq/error.h"
#include "chisq/fixtures.h"
#include "chisq/km.h"
#include "chisq/resolve.h"
#include "chisq/theorems.h"
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <optional>
#include <sstream>

namespace chisq::cli {

namespace {

using Json = nlohmann::ordered_json;
using milnor::Ideal;
using milnor::MilnorSeq;
using milnor::SteenrodSum;

// What a subcommand produces, before formatting.
struct Outcome
{
    Json parameters = Json::object();
    Json result = Json::object();
    std::string text;                // --pretty
    std::optional<std::string> raw;  // documents printed verbatim
    bool negative = false;           // exit 1
};

Json seq_list(const std::vector<MilnorSeq>& seqs)
{
    Json a = Json::array();
    for (auto& s : seqs)
        a.push_back(s.str());
    return a;
}

Json int_or_null(std::optional<int> v)
{
    return v ? Json(*v) : Json(nullptr);
}

std::string int_or_none(std::optional<int> v)
{
    return v ? std::to_string(*v) : "none";
}

// Exact integers: JSON numbers while they fit in 64 bits, decimal strings beyond.
Json big(const theorems::BigInt& v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return Json(static_cast<std::int64_t>(v));
    return Json(v.str());
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw Error(ErrorCode::Io, fmt::format("cannot write '{}'", path));
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorCode::InvalidArgument, what);
}

std::string chi_label(int d)
{
    return fmt::format("chi(Sq^{})", d);
}

/****************************************************
 *                   Milnor basis
 ***************************************************/

Outcome cmd_mul(const std::string& lhs_text, const std::string& rhs_text)
{
    const SteenrodSum lhs = SteenrodSum::parse(lhs_text), rhs = SteenrodSum::parse(rhs_text);
    const SteenrodSum p = milnor::product(lhs, rhs);
    Outcome o;
    o.parameters = {{"lhs", lhs.str()}, {"rhs", rhs.str()}};
    o.result["product"] = p.str();
    o.result["terms"] = seq_list(p.terms());
    o.result["degree"] = p.is_zero() ? Json(nullptr) : Json(p.degree());
    o.text = fmt::format("{} * {} = {}\n", lhs.str(), rhs.str(), p.str());
    return o;
}

Outcome cmd_chi(int d, bool recursive)
{
    require(d >= 0, "degree must be nonnegative");
    const SteenrodSum c = recursive ? milnor::chi_recursive(d) : milnor::chi(d);
    Outcome o;
    o.parameters = {{"degree", d}, {"method", recursive ? "recursive" : "basis-sum"}};
    o.result["expression"] = c.str();
    o.result["terms"] = seq_list(c.terms());
    o.result["count"] = c.terms().size();
    o.text = fmt::format("{} = {}\n", chi_label(d), c.str());
    return o;
}

Outcome cmd_basis(int d, std::optional<int> max_excess)
{
    require(d >= 0, "degree must be nonnegative");
    const auto b = max_excess ? milnor::basis(d, *max_excess) : milnor::basis(d);
    Outcome o;
    o.parameters = {{"degree", d}, {"max_excess", int_or_null(max_excess)}};
    Json items = Json::array();
    o.text = fmt::format("{} Milnor basis elements in degree {}\n", b.size(), d);
    for (auto& s : b) {
        items.push_back({{"element", s.str()}, {"excess", s.excess()}});
        o.text += fmt::format("  {:<16} excess {}\n", s.str(), s.excess());
    }
    o.result["count"] = b.size();
    o.result["basis"] = std::move(items);
    return o;
}

Outcome cmd_criterion(const std::string& seq_text, Ideal ideal)
{
    const MilnorSeq s = MilnorSeq::parse(seq_text);
    const bool outside = milnor::ideal_criterion(s, ideal);
    Outcome o;
    o.parameters = {{"element", s.str()}, {"ideal", milnor::ideal_name(ideal)}};
    o.result = {{"degree", s.degree()}, {"outside_image", outside}};
    o.text = fmt::format("{} is {} the image of {}\n", s.str(), outside ? "outside" : "in", milnor::ideal_name(ideal));
    return o;
}

/****************************************************
 *                   H^*(K(Z/2,k))
 ***************************************************/

Outcome cmd_chi_class(int n, int k)
{
    require(k >= 1 && k <= n, "need 1 <= k <= n");
    const km::KPoly x = km::chi_class(n, k);
    Outcome o;
    o.parameters = {{"n", n}, {"k", k}};
    o.result["class"] = km::format_named(x);
    o.result["monomials"] = x.terms().size();
    o.text = fmt::format("{} iota_{} = {}\n", chi_label(n - k), k, km::format_named(x));
    return o;
}

Outcome cmd_membership(int n, int k, Ideal ideal, size_t cap)
{
    require(k >= 1 && k <= n, "need 1 <= k <= n");
    const km::KPoly x = km::chi_class(n, k);
    const km::ImageResult r = km::in_image(x, {true, ideal == Ideal::Sq12, cap});
    Outcome o;
    o.parameters = {{"n", n}, {"k", k}, {"ideal", milnor::ideal_name(ideal)}};
    o.result["class"] = km::format_named(x);
    o.result["in_image"] = r.in_image;
    o.result["rows"] = r.rows;
    o.result["cols"] = r.cols;
    o.result["rank"] = r.rank;
    Json witness = Json::array();
    for (auto& w : r.witness)
        witness.push_back({{"op", fmt::format("Sq{}", w.op)}, {"source", km::format_named(km::KPoly(k, w.source))}});
    o.result["witness"] = std::move(witness);
    o.negative = !r.in_image;
    o.text = fmt::format("{} iota_{} = {}\n{} the image of {}\n", chi_label(n - k), k, km::format_named(x),
                         r.in_image ? "in" : "not in", ideal == Ideal::Sq12 ? "Sq1, Sq2" : "Sq1");
    for (auto& w : r.witness)
        o.text += fmt::format("  + Sq{} ({})\n", w.op, km::format_named(km::KPoly(k, w.source)));
    return o;
}

Outcome cmd_act(int k, const std::string& op, const std::string& cls)
{
    const km::KPoly x = km::parse_named(k, cls);
    km::KPoly y(k);
    std::string op_name;
    if (op == "Q0" || op == "Q1") {
        y = km::q_action(op[1] - '0', x);
        op_name = op;
    }
    else {
        const SteenrodSum s = SteenrodSum::parse(op);
        y = km::act(s, x);
        op_name = s.str();
    }
    Outcome o;
    o.parameters = {{"k", k}, {"op", op_name}, {"class", km::format_named(x)}};
    o.result["value"] = km::format_named(y);
    o.result["degree"] = y.is_zero() ? Json(nullptr) : Json(y.degree());
    o.text = fmt::format("{} ({}) = {}\n", op_name, km::format_named(x), km::format_named(y));
    return o;
}

Outcome cmd_generators(int k, int max_deg)
{
    require(k >= 1, "k must be positive");
    Outcome o;
    o.parameters = {{"k", k}, {"max_deg", max_deg}};
    Json items = Json::array();
    for (auto& g : km::generators(k, max_deg)) {
        const km::KPoly x(k, km::ring(k).generator_monomial(g.id));
        items.push_back({{"element", g.seq.str()}, {"degree", g.degree}, {"named", km::format_named(x)}});
        o.text += fmt::format("{:>4}  {}iota_{} = {}\n", g.degree, g.seq.is_unit() ? "" : g.seq.str(), k,
                              km::format_named(x));
    }
    o.result["count"] = items.size();
    o.result["generators"] = std::move(items);
    return o;
}

/****************************************************
 *                   Smallest k
 ***************************************************/

Outcome cmd_min_k(int n, Ideal ideal, bool search, std::optional<int> k_max)
{
    const auto formula = theorems::min_k_formula(n, ideal);
    Outcome o;
    o.parameters = {{"n", n}, {"ideal", milnor::ideal_name(ideal)}, {"search", search}};
    o.result["formula"] = int_or_null(formula);
    o.result["case"] = formula ? Json(theorems::classify(n, ideal).str()) : Json(nullptr);
    std::optional<int> answer = formula;
    if (search) {
        // Without a closed form (Sq12, n < 8) only k < n is interesting: k = n
        // always works.
        const int limit = k_max.value_or(formula ? n : n - 1);
        o.parameters["k_max"] = limit;
        answer = theorems::min_k_search(n, ideal, limit);
        o.result["search"] = int_or_null(answer);
        o.result["agree"] = answer == formula;
    }
    o.result["k"] = int_or_null(answer);
    o.negative = !answer;
    o.text = fmt::format("n = {}, {}: k = {}", n, milnor::ideal_name(ideal), int_or_none(answer));
    if (formula)
        o.text += fmt::format("  (formula {}, case {})", *formula, theorems::classify(n, ideal).str());
    else
        o.text += "  (no closed form)";
    o.text += "\n";
    return o;
}

Outcome cmd_verify_thm13(Ideal ideal, std::optional<int> n_min, int n_max)
{
    const int lo = n_min.value_or(ideal == Ideal::Sq12 ? 8 : 2);
    require(lo >= 2, "n-min must be at least 2");
    Outcome o;
    o.parameters = {{"ideal", milnor::ideal_name(ideal)}, {"n_min", lo}, {"n_max", n_max}};
    Json rows = Json::array();
    int mismatches = 0;
    o.text = fmt::format("{:>4} {:>8} {:>7}  case\n", "n", "formula", "search");
    for (int n = lo; n <= n_max; ++n) {
        const auto formula = theorems::min_k_formula(n, ideal);
        const auto found = theorems::min_k_search(n, ideal, formula ? n : n - 1);
        const bool ok = found == formula;
        mismatches += ok ? 0 : 1;
        const std::string tag = formula ? theorems::classify(n, ideal).str() : "-";
        rows.push_back({{"n", n}, {"formula", int_or_null(formula)}, {"search", int_or_null(found)}, {"case", tag},
                        {"ok", ok}});
        o.text += fmt::format("{:>4} {:>8} {:>7}  {}{}\n", n, int_or_none(formula), int_or_none(found), tag,
                              ok ? "" : "  MISMATCH");
    }
    o.result["rows"] = std::move(rows);
    o.result["mismatches"] = mismatches;
    o.result["all_match"] = mismatches == 0;
    o.negative = mismatches != 0;
    o.text += fmt::format("{} mismatches\n", mismatches);
    return o;
}

Outcome cmd_eps(std::int64_t n)
{
    require(n >= 2, "n must be at least 2");
    Outcome o;
    o.parameters = {{"n", n}};
    const int a = theorems::alpha(n);
    const auto f1 = theorems::min_k_formula(n, Ideal::Sq1);
    const auto f12 = theorems::min_k_formula(n, Ideal::Sq12);
    o.result["alpha"] = a;
    o.result["eps"] = theorems::eps(n);
    o.result["eps_prime"] = n >= 8 ? Json(theorems::eps_prime(n)) : Json(nullptr);
    o.result["sq1"] = {{"formula", int_or_null(f1)}, {"alpha_plus_eps", a + theorems::eps(n)}};
    o.result["sq12"] = {{"formula", int_or_null(f12)},
                        {"alpha_plus_eps_prime", n >= 8 ? Json(a + theorems::eps_prime(n)) : Json(nullptr)}};
    o.text = fmt::format("n = {}: alpha {}, eps {}, sq1 k {}", n, a, theorems::eps(n), int_or_none(f1));
    if (n >= 8)
        o.text += fmt::format(", eps' {}, sq12 k {}", theorems::eps_prime(n), int_or_none(f12));
    o.text += "\n";
    return o;
}

Outcome cmd_lemma23(int n, const std::string& part_text)
{
    require(part_text == "a" || part_text == "b", "part must be a or b");
    const auto part = part_text == "a" ? theorems::LemmaPart::A : theorems::LemmaPart::B;
    const auto r = theorems::lemma23(n, part);
    const int expected = theorems::alpha(n) + (part == theorems::LemmaPart::A ? 1 : 2);
    const bool decomposes = r.minimizers == r.reachable;
    Outcome o;
    o.parameters = {{"n", n}, {"part", part_text}};
    o.result["target"] = r.target;
    o.result["min_sum"] = r.min_sum;
    o.result["expected_min_sum"] = expected;
    o.result["minimizers"] = seq_list(r.minimizers);
    o.result["reachable"] = seq_list(r.reachable);
    o.result["decomposes"] = decomposes;
    o.negative = r.min_sum != expected || !decomposes;
    o.text = fmt::format("weight {}: min sum {} (alpha(n) + {} = {}), {} minimizers, {}\n", r.target, r.min_sum,
                         expected - theorems::alpha(n), expected, r.minimizers.size(),
                         decomposes ? "all from the digit vector" : "NOT all from the digit vector");
    for (auto& s : r.minimizers)
        o.text += "  " + s.str() + "\n";
    return o;
}

Outcome cmd_two_series(int j)
{
    require(j >= 0, "j must be nonnegative");
    Outcome o;
    o.parameters = {{"j", j}};
    Json coeffs = Json::object();
    for (auto& [i, c] : theorems::two_series_image(j)) {
        coeffs[std::to_string(i)] = big(c);
        o.text += fmt::format("beta_{}: {}\n", i, c.str());
    }
    o.result["coefficients"] = std::move(coeffs);
    return o;
}

/****************************************************
 *                   Modules, Ext, Margolis homology
 ***************************************************/

struct ModuleSource
{
    std::optional<int> k;
    std::string file;
    std::string algebra;
};

Json describe(const resolve::GradedModule& m)
{
    return {{"name", m.name()},
            {"algebra", std::string(resolve::algebra_name(m.algebra().name()))},
            {"truncation", int_or_null(m.truncation())}};
}

Outcome cmd_margolis(const ModuleSource& src, int j, std::optional<int> max_deg)
{
    require(j == 0 || j == 1, "q must be 0 or 1");
    const int qd = j == 0 ? 1 : 3;
    std::optional<resolve::GradedModule> m;
    if (src.k) {
        require(max_deg.has_value(), "--k needs --max-deg");
        m.emplace(resolve::module_from_km(*src.k, resolve::parse_algebra(src.algebra), *max_deg + qd));
    }
    else {
        m.emplace(resolve::module_from_json(read_file(src.file)));
    }
    const auto h = resolve::margolis_homology(*m, j);
    Outcome o;
    o.parameters = describe(*m);
    o.parameters["q"] = j;
    o.result["valid_through"] = h.valid_through;
    Json dims = Json::array();
    o.text = fmt::format("H({}; Q{}) through degree {}\n", m->name(), j, h.valid_through);
    for (auto& [d, n] : h.dims) {
        const auto& reps = h.representatives.at(d);
        dims.push_back({{"degree", d}, {"dim", n}, {"representatives", reps}});
        o.text += fmt::format("{:>4}: {}  [{}]\n", d, n, fmt::join(reps, "; "));
    }
    o.result["dims"] = std::move(dims);
    return o;
}

Outcome cmd_ext(const ModuleSource& src, int max_s, int max_t, std::optional<int> max_deg, bool check,
                const std::string& out_file)
{
    require(max_s >= 0 && max_t >= 0, "max-s and max-t must be nonnegative");
    std::optional<resolve::GradedModule> m;
    if (src.k) {
        const auto alg = resolve::parse_algebra(src.algebra);
        const int top = resolve::FiniteAlgebra::get(alg).top_degree();
        m.emplace(resolve::module_from_km(*src.k, alg, max_deg.value_or(max_t + top)));
    }
    else {
        m.emplace(resolve::module_from_json(read_file(src.file)));
    }
    const resolve::Resolution r(*m, max_s, max_t);
    resolve::ExtChart chart = r.chart();
    chart.max_t = max_t;
    const std::string doc = resolve::chart_to_json(chart);
    if (!out_file.empty())
        write_file(out_file, doc);

    Outcome o;
    o.parameters = describe(*m);
    o.parameters["max_s"] = max_s;
    o.parameters["max_t"] = max_t;
    o.result["chart"] = Json::parse(doc);
    o.text = resolve::render_chart(chart, resolve::ChartFormat::Text);
    if (check) {
        const auto v = resolve::verify(r);
        o.result["verification"] = {{"ok", v.ok()},
                                    {"d_squared_zero", v.d_squared_zero},
                                    {"minimal", v.minimal},
                                    {"exact", v.exact},
                                    {"euler", v.euler},
                                    {"checks", v.checks},
                                    {"failures", v.failures}};
        o.negative = !v.ok();
        o.text += fmt::format("verification: {} ({} checks)\n", v.ok() ? "ok" : "FAILED", v.checks);
        for (auto& f : v.failures)
            o.text += "  " + f + "\n";
    }
    return o;
}

Outcome cmd_render(const std::string& chart_file, const std::string& format)
{
    const auto chart = resolve::chart_from_json(read_file(chart_file));
    Outcome o;
    o.raw = resolve::render_chart(chart, resolve::parse_chart_format(format));
    return o;
}

Outcome cmd_export_module(int k, const std::string& algebra, int max_deg, const std::string& out_file)
{
    const auto m = resolve::module_from_km(k, resolve::parse_algebra(algebra), max_deg);
    Outcome o;
    const std::string doc = resolve::module_to_json(m);
    if (out_file.empty()) {
        o.raw = doc;
    }
    else {
        write_file(out_file, doc);
        o.parameters = describe(m);
        o.result = {{"written", out_file}, {"dimension", m.basis().size()}};
        o.text = fmt::format("wrote {} ({} basis elements)\n", out_file, m.basis().size());
    }
    return o;
}

/****************************************************
 *                   Fixture tables
 ***************************************************/

Outcome cmd_check_table(const std::string& id)
{
    const auto title = fixtures::table_title(id);
    require(title.has_value(), fmt::format("unknown table '{}', expected t42, t55, submodules or spin", id));
    Outcome o;
    o.parameters = {{"table", id}};
    Json cells = Json::array();
    int bad = 0;
    auto tally = [&](bool ok) { bad += ok ? 0 : 1; };

    if (id == "t42" || id == "t55") {
        const auto& table = id == "t42" ? fixtures::k2_primitive_action_table() : fixtures::k3_generator_table();
        for (auto& c : fixtures::check_action_table(table)) {
            tally(c.ok);
            cells.push_back({{"row", c.row}, {"column", c.column}, {"expected", c.expected}, {"computed", c.computed},
                             {"ok", c.ok}});
            o.text += fmt::format("{:<5} {:<4} expected {:<14} computed {:<24} {}\n", c.row, c.column, c.expected,
                                  c.computed, c.ok ? "ok" : "MISMATCH");
        }
    }
    else if (id == "submodules") {
        for (auto& c : fixtures::check_submodule_table()) {
            tally(c.ok);
            cells.push_back({{"row", c.name}, {"column", fmt::format("Q{}", c.j)}, {"expected", c.expected},
                             {"computed", c.computed}, {"ok", c.ok}});
            o.text += fmt::format("{:<4} Q{}  expected {:<14} computed [{}] {}\n", c.name, c.j, c.expected,
                                  fmt::join(c.computed, "; "), c.ok ? "ok" : "MISMATCH");
        }
    }
    else {
        for (auto& c : fixtures::check_spin_table()) {
            tally(c.ok);
            cells.push_back({{"n", c.n}, {"c", c.c}, {"k", c.k}, {"shifted", c.shifted},
                             {"predicted_c", c.predicted_c}, {"ok", c.ok}});
            o.text += fmt::format("n {:>2}  c {:>2}  k {:>2}{}  n - k{} = {:>2}  {}\n", c.n, c.c, c.k,
                                  c.shifted ? "+1" : "  ", c.shifted ? " - 1" : "    ", c.predicted_c,
                                  c.ok ? "ok" : "MISMATCH");
        }
    }
    o.result["title"] = *title;
    o.result["checked"] = cells.size();
    o.result["mismatches"] = bad;
    o.result["cells"] = std::move(cells);
    o.negative = bad != 0;
    o.text = fmt::format("{}: {}\n", id, *title) + o.text +
             fmt::format("{} of {} entries match\n", o.result["checked"].get<int>() - bad, o.result["checked"].get<int>());
    return o;
}

/****************************************************
 *                   Driver
 ***************************************************/

std::string error_text(const std::string& code, const std::string& message, const std::string& command, bool pretty)
{
    if (pretty)
        return fmt::format("error [{}]: {}\n", code, message);
    Json doc;
    doc["command"] = command.empty() ? Json(nullptr) : Json(command);
    doc["error"] = {{"code", code}, {"message", message}};
    doc["version"] = kVersion;
    return doc.dump(2) + "\n";
}

}  // namespace

CommandResult run(const std::vector<std::string>& args)
{
    CLI::App app{"Steenrod-algebra computations: Milnor basis, H^*(K(Z/2,k)), smallest-k criteria, Ext over A(1) "
                 "and E(1)",
                 "chisq"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    bool pretty = false, timing = false;
    app.add_flag("--pretty", pretty, "Human-readable text instead of JSON");
    app.add_flag("--timing", timing, "Include wall-clock time");

    // Options shared between subcommands; only one subcommand runs.
    std::string s1, s2, ideal_text = "sq1", part, module_file, algebra = "e1", out_file, chart_file, format = "text",
                                 table, op, cls;
    int n = 0, k = 0, d = 0, j = 0, q = 0, max_s = 0, max_t = 0, n_max = 0;
    std::int64_t big_n = 0;
    std::optional<int> max_excess, k_max, n_min, max_deg, k_opt;
    bool recursive = false, search = false, check = false;
    size_t cap = km::ImageOptions{}.column_cap;
    std::function<Outcome()> action;

    auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };
    auto ideal_opt = [&](CLI::App* c) {
        c->add_option("--ideal", ideal_text, "sq1 (image of Sq1) or sq12 (image of Sq1, Sq2)")
            ->check(CLI::IsMember({"sq1", "sq12"}, CLI::ignore_case));
    };
    auto module_opts = [&](CLI::App* c, bool need_algebra) {
        auto* ko = c->add_option("--k", k_opt, "Use H^*(K(Z/2,k)) truncated to the needed degree")
                       ->check(CLI::PositiveNumber);
        auto* mo = c->add_option("--module", module_file, "Module document (JSON)")->check(CLI::ExistingFile);
        ko->excludes(mo);
        c->add_option("--algebra", algebra, need_algebra ? "a1 or e1" : "a1 or e1 (default e1)")
            ->check(CLI::IsMember({"a1", "e1"}, CLI::ignore_case));
        return std::pair{ko, mo};
    };

    auto* c_mul = sub("mul", "Product of two Milnor basis elements (or sums)");
    c_mul->add_option("R", s1, "e.g. Sq(2) or 2 or 0,1")->required();
    c_mul->add_option("S", s2)->required();
    c_mul->callback([&] { action = [&] { return cmd_mul(s1, s2); }; });

    auto* c_chi = sub("chi", "chi(Sq^d) on the Milnor basis");
    c_chi->add_option("d", d)->required();
    c_chi->add_flag("--recursive", recursive, "Use the antipode recursion instead of the basis sum");
    c_chi->callback([&] { action = [&] { return cmd_chi(d, recursive); }; });

    auto* c_basis = sub("basis", "Milnor basis in degree d");
    c_basis->add_option("d", d)->required();
    c_basis->add_option("--max-excess", max_excess);
    c_basis->callback([&] { action = [&] { return cmd_basis(d, max_excess); }; });

    auto* c_crit = sub("criterion", "Digit criterion for Sq(R) lying outside the image");
    c_crit->add_option("R", s1)->required();
    ideal_opt(c_crit);
    c_crit->callback([&] { action = [&] { return cmd_criterion(s1, milnor::parse_ideal(ideal_text)); }; });

    auto* c_class = sub("chi-class", "chi(Sq^{n-k}) iota_k in H^n(K(Z/2,k))");
    c_class->add_option("n", n)->required();
    c_class->add_option("k", k)->required();
    c_class->callback([&] { action = [&] { return cmd_chi_class(n, k); }; });

    auto* c_mem = sub("membership", "Is chi(Sq^{n-k}) iota_k in the image? Exit 1 when not");
    c_mem->add_option("n", n)->required();
    c_mem->add_option("k", k)->required();
    ideal_opt(c_mem);
    c_mem->add_option("--cap", cap, "Column cap for the image matrix");
    c_mem->callback([&] { action = [&] { return cmd_membership(n, k, milnor::parse_ideal(ideal_text), cap); }; });

    auto* c_act = sub("act", "Apply a Steenrod operation (Sq(R), a sum, Q0 or Q1) to a named class");
    c_act->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    c_act->add_option("op", op)->required();
    c_act->add_option("class", cls, "e.g. \"u2 u3 + u5\"")->required();
    c_act->callback([&] { action = [&] { return cmd_act(k, op, cls); }; });

    auto* c_gen = sub("generators", "Polynomial generators Sq(R) iota_k through a degree");
    c_gen->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    c_gen->add_option("--max-deg", d)->required();
    c_gen->callback([&] { action = [&] { return cmd_generators(k, d); }; });

    auto* c_mink = sub("min-k", "Smallest k with chi(Sq^{n-k}) iota_k outside the image. Exit 1 on none");
    c_mink->add_option("n", n)->required();
    ideal_opt(c_mink);
    c_mink->add_flag("--search", search, "Also search by linear algebra");
    c_mink->add_option("--k-max", k_max, "Search bound");
    c_mink->callback(
        [&] { action = [&] { return cmd_min_k(n, milnor::parse_ideal(ideal_text), search, k_max); }; });

    auto* c_thm = sub("verify-thm13", "Closed form against search for a range of n. Exit 1 on any mismatch");
    ideal_opt(c_thm);
    c_thm->add_option("--n-min", n_min, "Default 2 (sq1) or 8 (sq12)");
    c_thm->add_option("--n-max", n_max)->required();
    c_thm->callback(
        [&] { action = [&] { return cmd_verify_thm13(milnor::parse_ideal(ideal_text), n_min, n_max); }; });

    auto* c_eps = sub("eps", "alpha(n), eps_n, eps'_n and the closed forms");
    c_eps->add_option("n", big_n)->required();
    c_eps->callback([&] { action = [&] { return cmd_eps(big_n); }; });

    auto* c_lemma = sub("lemma23", "Minimal digit sums of weight n - alpha(n) - 1 (a) or - 2 (b). Exit 1 on failure");
    c_lemma->add_option("n", n)->required();
    c_lemma->add_option("--part", part)->required()->check(CLI::IsMember({"a", "b"}));
    c_lemma->callback([&] { action = [&] { return cmd_lemma23(n, part); }; });

    auto* c_two = sub("two-series", "Coefficients of x^j in the image of the [2]-series");
    c_two->add_option("j", j)->required();
    c_two->callback([&] { action = [&] { return cmd_two_series(j); }; });

    auto* c_marg = sub("margolis", "Q0- or Q1-homology of H^*(K(Z/2,k)) or of a module document");
    auto [mk, mm] = module_opts(c_marg, false);
    c_marg->add_option("--q", q, "0 or 1")->required()->check(CLI::Range(0, 1));
    c_marg->add_option("--max-deg", max_deg, "Homology is reported through this degree (with --k)");
    c_marg->callback([&] {
        action = [&] { return cmd_margolis({k_opt, module_file, algebra}, q, max_deg); };
    });

    auto* c_ext = sub("ext", "Minimal resolution and Ext^{s,t} chart over A(1) or E(1)");
    auto [ek, em] = module_opts(c_ext, true);
    c_ext->add_option("--max-s", max_s)->required();
    c_ext->add_option("--max-t", max_t)->required();
    c_ext->add_option("--max-deg", max_deg, "Truncation of H^*(K(Z/2,k)) (default max-t plus the top degree)");
    c_ext->add_flag("--verify", check, "Check d o d = 0, minimality, exactness and Euler characteristic");
    c_ext->add_option("--out", out_file, "Also write the chart document here");
    c_ext->callback([&] {
        action = [&] { return cmd_ext({k_opt, module_file, algebra}, max_s, max_t, max_deg, check, out_file); };
    });

    auto* c_render = sub("render", "Render a chart document as text, SVG or JSON");
    c_render->add_option("--chart", chart_file)->required()->check(CLI::ExistingFile);
    c_render->add_option("--format", format)->check(CLI::IsMember({"text", "svg", "json"}));
    c_render->callback([&] { action = [&] { return cmd_render(chart_file, format); }; });

    auto* c_export = sub("export-module", "Write H^*(K(Z/2,k)) through a degree as a module document");
    c_export->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    c_export->add_option("--algebra", algebra)->check(CLI::IsMember({"a1", "e1"}, CLI::ignore_case));
    c_export->add_option("--max-deg", d)->required();
    c_export->add_option("--out", out_file);
    c_export->callback([&] { action = [&] { return cmd_export_module(k, algebra, d, out_file); }; });

    auto* c_table = sub("check-table", "Recompute a fixture table: t42, t55, submodules or spin. Exit 1 on mismatch");
    c_table->add_option("table", table)->required();
    c_table->callback([&] { action = [&] { return cmd_check_table(table); }; });

    CommandResult res;
    const bool pretty_requested = std::find(args.begin(), args.end(), "--pretty") != args.end();
    std::string command;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        command = app.get_subcommands().front()->get_name();
        // Exactly one module source for margolis / ext.
        for (auto [c, ko, mo] : {std::tuple{c_marg, mk, mm}, std::tuple{c_ext, ek, em}})
            if (c->parsed() && ko->count() + mo->count() != 1)
                throw CLI::ValidationError(command, "give exactly one of --k and --module");
        if (c_ext->parsed() && ek->count() && !c_ext->get_option("--algebra")->count())
            throw CLI::ValidationError(command, "--k needs --algebra");
    }
    catch (const CLI::CallForHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        res.out = out.str();
        return res;
    }
    catch (const CLI::CallForAllHelp& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        res.out = out.str();
        return res;
    }
    catch (const CLI::CallForVersion& e) {
        std::ostringstream out, err;
        app.exit(e, out, err);
        res.out = out.str();
        return res;
    }
    catch (const CLI::Error& e) {
        res.exit_code = 2;
        res.err = error_text(ErrorCodeName(ErrorCode::Usage), e.what(), command, pretty_requested);
        return res;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        Outcome o = action();
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        res.exit_code = o.negative ? 1 : 0;
        if (o.raw) {
            res.out = *o.raw;
        }
        else if (pretty) {
            res.out = o.text;
            if (timing)
                res.out += fmt::format("time: {:.3f} s\n", seconds);
        }
        else {
            Json doc;
            doc["command"] = command;
            doc["parameters"] = std::move(o.parameters);
            doc["result"] = std::move(o.result);
            if (timing)
                doc["timing"] = {{"seconds", seconds}};
            doc["version"] = kVersion;
            res.out = doc.dump(2) + "\n";
        }
    }
    catch (const Error& e) {
        res.exit_code = 2;
        res.err = error_text(ErrorCodeName(e.code()), e.what(), command, pretty);
    }
    catch (const std::exception& e) {
        res.exit_code = 2;
        res.err = error_text("E_INTERNAL", e.what(), command, pretty);
    }
    return res;
}

}  // namespace chisq::cli
