#pragma once

// Published tables kept as constant data, with checkers that recompute
// every cell.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chisq::fixtures {

// Rows are named classes of H^*(K(Z/2,k)); each cell is the expected value
// of the column's operation on the row class, written for km::parse_named.
struct ActionTable
{
    std::string id;
    std::string title;
    int k = 0;
    std::vector<std::string> columns;  // "Sq1", "Sq2", "Q0", "Q1"
    struct Row
    {
        std::string name;
        std::vector<std::string> cells;
    };
    std::vector<Row> rows;
};

// Q0 and Q1 on u2, u3, u5, ..., u33 in H^*(K(Z/2,2)).
const ActionTable& k2_primitive_action_table();
// Sq1, Sq2 and Q1 on g3, ..., g21 in H^*(K(Z/2,3)).
const ActionTable& k3_generator_table();

struct CellResult
{
    std::string row, column, expected, computed;
    bool ok = false;
};

std::vector<CellResult> check_action_table(const ActionTable& table);

// A(1)-submodules of H^*(K(Z/2,3)) given by generators, with their Q0- and
// Q1-homology through degree 21 ("0" when none).
struct SubmoduleRow
{
    std::string name;
    std::vector<std::string> generators;
    std::string q0_homology;
    std::string q1_homology;
};

const std::vector<SubmoduleRow>& k3_submodule_table();

struct SubmoduleResult
{
    std::string name;
    int j = 0;
    std::string expected;
    std::vector<std::string> computed;  // representatives through degree 21
    bool ok = false;
};

std::vector<SubmoduleResult> check_submodule_table();

// Largest c with a nonzero dual Stiefel-Whitney class w_c in some Spin
// n-manifold, for the ranges where it is known.
struct SpinRange
{
    int n_lo, n_hi, c;
};

const std::vector<SpinRange>& spin_dual_sw_table();
// n for which the class for the smallest k fails to lift, so k must grow by 1.
const std::vector<int>& spin_shifted_dimensions();

struct SpinResult
{
    int n = 0, c = 0, k = 0, predicted_c = 0;
    bool shifted = false, ok = false;
};

// c against n - k_min (n - k_min - 1 for the shifted dimensions).
std::vector<SpinResult> check_spin_table();

// "t42", "t55", "submodules", "spin"; nullopt for an unknown id.
std::optional<std::string> table_title(std::string_view id);

}  // namespace chisq::fixtures
