#include "chisq/fixtures.h"
#include "chisq/error.h"
#include "chisq/km.h"
#include "chisq/resolve.h"
#include "chisq/theorems.h"
#include <algorithm>
#include <fmt/format.h>

namespace chisq::fixtures {

const ActionTable& k2_primitive_action_table()
{
    static const ActionTable table{
        "t42",
        "E(1) action on the generators of H^*(K(Z/2,2))",
        2,
        {"Q0", "Q1"},
        {
            {"u2", {"u3", "u5"}},
            {"u3", {"0", "u3^2"}},
            {"u5", {"u3^2", "0"}},
            {"u9", {"u5^2", "u3^4"}},
            {"u17", {"u9^2", "u5^4"}},
            {"u33", {"u17^2", "u9^4"}},
        },
    };
    return table;
}

const ActionTable& k3_generator_table()
{
    static const ActionTable table{
        "t55",
        "Generators of H^*(K(Z/2,3)) through degree 24",
        3,
        {"Sq1", "Sq2", "Q1"},
        {
            {"g3", {"g4", "g5", "g6 + g3^2"}},
            {"g4", {"0", "g6", "g7"}},
            {"g5", {"g3^2", "g7", "g4^2"}},
            {"g6", {"g7", "0", "0"}},
            {"g7", {"0", "0", "0"}},
            {"g9", {"g5^2", "0", "g3^4"}},
            {"g10", {"g11", "g6^2", "g13"}},
            {"g11", {"0", "g13", "g7^2"}},
            {"g13", {"g7^2", "0", "0"}},
            {"g17", {"g9^2", "0", "g5^4"}},
            {"g18", {"g19", "g10^2", "g21"}},
            {"g19", {"0", "g21", "g11^2"}},
            {"g21", {"g11^2", "0", "0"}},
        },
    };
    return table;
}

namespace {

km::KPoly apply_op(const std::string& op, const km::KPoly& p)
{
    if (op == "Sq1")
        return km::sq_action(1, p);
    if (op == "Sq2")
        return km::sq_action(2, p);
    if (op == "Q0")
        return km::q_action(0, p);
    if (op == "Q1")
        return km::q_action(1, p);
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown table operation '{}'", op));
}

}  // namespace

std::vector<CellResult> check_action_table(const ActionTable& table)
{
    std::vector<CellResult> out;
    for (auto& row : table.rows) {
        km::KPoly x = km::parse_named(table.k, row.name);
        for (size_t c = 0; c < table.columns.size(); ++c) {
            CellResult r{row.name, table.columns[c], row.cells[c], {}, false};
            km::KPoly got = apply_op(table.columns[c], x);
            r.computed = km::format_named(got);
            r.ok = got == km::parse_named(table.k, row.cells[c]);
            out.push_back(std::move(r));
        }
    }
    return out;
}

/****************************************************
 *                   Submodules of H^*(K_3)
 ***************************************************/

const std::vector<SubmoduleRow>& k3_submodule_table()
{
    static const std::vector<SubmoduleRow> rows = {
        {"M3", {"g3", "g3 g4"}, "g6^2", "g3^2"},
        {"M9", {"g9", "g3^2 g5", "g3 g4^3", "x19"}, "0", "g5^2"},
        {"M10", {"g10'"}, "g13'", "g11'"},
        {"M12", {"g3 g9", "g5^3", "g3^5 g4"}, "0", "g3^2 g5^2"},
        {"M13", {"g3 g10'", "g3^2 g10'", "g3 g4 g13'"}, "0", "g3^2 g11'"},
        {"M17", {"g17", "g5^2 g9"}, "0", "g9^2"},
        {"M18", {"g18"}, "g10^2", "g10^2"},
        {"M21", {"g21 + g10 g11", "Sq[12,6,3,1] + g6^3 g7"}, "g21 + g10 g11", "0"},
    };
    return rows;
}

namespace {

constexpr int kSubmoduleRange = 21;
constexpr int kSubmoduleTruncation = 32;

// The ids of the named-basis monomials making up p.
std::vector<std::string> as_ids(const km::KPoly& p)
{
    std::vector<std::string> ids;
    const km::KPoly named = km::to_named_basis(p);
    for (auto& m : named.terms())
        ids.push_back(km::format_monomial(3, m));
    return ids;
}

f2la::BitVector as_vector(const resolve::GradedModule& m, const km::KPoly& p, int d)
{
    f2la::BitVector v(m.dim(d));
    for (auto& id : as_ids(p))
        v.flip(m.local_index(m.index_of(id)));
    return v;
}

// A Q-cycle of the span in degree d that is not a Q-boundary of the span.
std::optional<f2la::BitVector> class_representative(const resolve::GradedModule& m, const std::map<int, f2la::Echelon>& span,
                                                    size_t q, int d)
{
    auto here = span.find(d);
    if (here == span.end())
        return std::nullopt;
    const int qd = m.algebra().degree(q);
    f2la::Echelon boundaries(m.dim(d));
    if (auto below = span.find(d - qd); below != span.end())
        for (auto& v : below->second.basis())
            boundaries.insert(m.apply_element(q, d - qd, v));
    // Cycles: combinations of span rows killed by Q.
    const auto& rows = here->second.basis();
    f2la::F2Matrix images(rows.size(), m.dim(d + qd));
    for (size_t i = 0; i < rows.size(); ++i)
        images.set_row(i, m.apply_element(q, d, rows[i]));
    for (auto& combo : f2la::kernel_basis(images.transpose())) {
        f2la::BitVector z(m.dim(d));
        for (size_t i : combo.support())
            z ^= rows[i];
        if (!boundaries.contains(z))
            return z;
    }
    return std::nullopt;
}

}  // namespace

std::vector<SubmoduleResult> check_submodule_table()
{
    using namespace resolve;
    const GradedModule k3 = module_from_km(3, AlgebraName::A1, kSubmoduleTruncation);
    const FiniteAlgebra& alg = k3.algebra();
    std::vector<SubmoduleResult> out;
    for (auto& row : k3_submodule_table()) {
        std::vector<std::vector<std::string>> gens;
        for (auto& g : row.generators)
            gens.push_back(as_ids(km::parse_named(3, g)));
        GradedModule sub = submodule(k3, row.name, gens);
        auto span = submodule_span(k3, gens);

        for (int j = 0; j <= 1; ++j) {
            SubmoduleResult r;
            r.name = row.name;
            r.j = j;
            r.expected = j == 0 ? row.q0_homology : row.q1_homology;
            MargolisHomology h = margolis_homology(sub, j);
            int classes = 0;
            for (auto& [d, reps] : h.representatives)
                if (d <= kSubmoduleRange) {
                    classes += static_cast<int>(reps.size());
                    for (auto& rep : reps)
                        r.computed.push_back(rep);
                }
            km::KPoly expected = km::parse_named(3, r.expected);
            if (expected.is_zero()) {
                r.ok = classes == 0;
            }
            else {
                // The submodule has one class, in the degree of the listed
                // element, and its image in H(H^*(K_3); Q_j) is the listed
                // element's class.
                const int d = expected.degree();
                const size_t q = alg.index_of(j == 0 ? MilnorSeq{1} : MilnorSeq{0, 1});
                const int qd = alg.degree(q);
                f2la::BitVector x = as_vector(k3, expected, d);
                auto rep = class_representative(k3, span, q, d);
                f2la::Echelon ambient(k3.dim(d));
                for (size_t c = 0; c < k3.dim(d - qd); ++c)
                    ambient.insert(k3.apply_element(q, d - qd, f2la::BitVector::unit(k3.dim(d - qd), c)));
                bool single = classes == 1 && h.dims.count(d) && h.dims.at(d) == 1;
                bool cycle = k3.apply_element(q, d, x).is_zero();
                r.ok = single && rep && cycle && !ambient.contains(x) && ambient.contains(*rep ^ x);
            }
            out.push_back(std::move(r));
        }
    }
    return out;
}

/****************************************************
 *                   Dual Stiefel-Whitney classes of Spin manifolds
 ***************************************************/

const std::vector<SpinRange>& spin_dual_sw_table()
{
    static const std::vector<SpinRange> table = {
        {8, 12, 6}, {13, 15, 7}, {16, 17, 14}, {18, 23, 15}, {32, 33, 30},
    };
    return table;
}

const std::vector<int>& spin_shifted_dimensions()
{
    static const std::vector<int> dims = {9, 10, 11, 12, 17, 33};
    return dims;
}

std::vector<SpinResult> check_spin_table()
{
    std::vector<SpinResult> out;
    const auto& shifted = spin_shifted_dimensions();
    for (auto& range : spin_dual_sw_table())
        for (int n = range.n_lo; n <= range.n_hi; ++n) {
            SpinResult r;
            r.n = n;
            r.c = range.c;
            r.k = *theorems::min_k_formula(n, milnor::Ideal::Sq12);
            r.shifted = std::find(shifted.begin(), shifted.end(), n) != shifted.end();
            r.predicted_c = n - r.k - (r.shifted ? 1 : 0);
            r.ok = r.predicted_c == r.c;
            out.push_back(r);
        }
    return out;
}

std::optional<std::string> table_title(std::string_view id)
{
    if (id == "t42")
        return k2_primitive_action_table().title;
    if (id == "t55")
        return k3_generator_table().title;
    if (id == "submodules")
        return std::string("A(1)-submodules of H^*(K(Z/2,3)) and their Margolis homology");
    if (id == "spin")
        return std::string("Top dual Stiefel-Whitney classes of Spin manifolds against the smallest k");
    return std::nullopt;
}

}  // namespace chisq::fixtures
