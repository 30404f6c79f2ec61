#pragma once

// Finite graded modules over A(1) or E(1), given by a graded basis and the
// action of the algebra generators.

#include "chisq/algebra.h"
#include "chisq/f2la.h"
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chisq::resolve {

using f2la::BitVector;
using f2la::F2Matrix;

struct ModuleElement
{
    std::string id;
    int degree = 0;
};

class GradedModule
{
public:
    GradedModule(std::string name, AlgebraName algebra, std::vector<ModuleElement> basis,
                 std::optional<int> truncation = std::nullopt);

    const std::string& name() const
    {
        return name_;
    }
    const FiniteAlgebra& algebra() const
    {
        return *algebra_;
    }
    // Degree through which the module is known; nullopt when nothing was cut off.
    std::optional<int> truncation() const
    {
        return truncation_;
    }
    const std::vector<ModuleElement>& basis() const
    {
        return basis_;
    }
    size_t index_of(const std::string& id) const;

    int min_degree() const
    {
        return min_degree_;
    }
    int max_degree() const
    {
        return max_degree_;
    }
    // Global basis indices in degree d, in basis order.
    const std::vector<size_t>& in_degree(int d) const;
    size_t dim(int d) const
    {
        return in_degree(d).size();
    }
    size_t local_index(size_t i) const
    {
        return local_[i];
    }

    // Sets gen(from) = sum of to; degrees must match.
    void set_action(int gen, size_t from, std::vector<size_t> to);
    const std::vector<size_t>& action(int gen, size_t from) const
    {
        return actions_[gen][from];
    }

    // Action on vectors of one degree, in local coordinates.
    BitVector apply_generator(int gen, int d, const BitVector& v) const;
    BitVector apply_word(const Word& w, int d, const BitVector& v) const;
    BitVector apply_element(size_t b, int d, const BitVector& v) const;
    // Matrix of algebra basis element b from degree d to d + |b|; columns are sources.
    F2Matrix element_matrix(size_t b, int d) const;

    // Throws RelationViolation naming the failing relation and degree.
    void check_relations() const;

private:
    std::string name_;
    const FiniteAlgebra* algebra_;
    std::vector<ModuleElement> basis_;
    std::optional<int> truncation_;
    int min_degree_ = 0, max_degree_ = -1;
    std::vector<std::vector<size_t>> by_degree_;
    std::vector<size_t> local_;
    std::map<std::string, size_t> by_id_;
    std::vector<std::vector<std::vector<size_t>>> actions_;  // [gen][from] -> to
};

// The degree <= D part of H^*(K(Z/2,k)) on the monomial basis in the named
// classes.
GradedModule module_from_km(int k, AlgebraName algebra, int max_degree);

// Module documents:
//   {"name", "algebra": "A1"|"E1", "basis": [{"id", "degree"}],
//    "actions": {"Sq1": [{"from", "to": [ids]}], ...}, "truncation"?: D}
GradedModule module_from_json(const std::string& text);
std::string module_to_json(const GradedModule& m);

// Span of A . x over the given elements x (each a set of basis ids of one
// degree), per degree of m.
std::map<int, f2la::Echelon> submodule_span(const GradedModule& m, const std::vector<std::vector<std::string>>& generators);

// The submodule generated by the given elements (each a set of basis ids of
// one degree), on a basis of named representatives.
GradedModule submodule(const GradedModule& m, const std::string& name,
                       const std::vector<std::vector<std::string>>& generators);

}  // namespace chisq::resolve
