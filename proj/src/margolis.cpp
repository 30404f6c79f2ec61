#include "chisq/error.h"
#include "chisq/resolve.h"
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace chisq::resolve {

MargolisHomology margolis_homology(const GradedModule& m, int j)
{
    if (j != 0 && j != 1)
        throw Error(ErrorCode::InvalidArgument, fmt::format("Margolis homology is for Q0 or Q1, got Q{}", j));
    const FiniteAlgebra& alg = m.algebra();
    const size_t q = alg.index_of(j == 0 ? MilnorSeq{1} : MilnorSeq{0, 1});
    const int qd = alg.degree(q);

    MargolisHomology out;
    out.j = j;
    out.valid_through = m.truncation() ? *m.truncation() - qd : m.max_degree();
    for (int d = m.min_degree(); d <= out.valid_through; ++d) {
        const size_t n = m.dim(d);
        if (n == 0)
            continue;
        f2la::Echelon boundaries(n);
        if (d - qd >= m.min_degree()) {
            F2Matrix in = m.element_matrix(q, d - qd);
            F2Matrix cols = in.transpose();
            for (size_t c = 0; c < cols.rows(); ++c)
                boundaries.insert(cols.row(c));
        }
        std::vector<std::string> reps;
        for (auto& z : f2la::kernel_basis(m.element_matrix(q, d))) {
            if (!boundaries.insert(z))
                continue;
            std::vector<std::string> ids;
            for (size_t c : z.support())
                ids.push_back(m.basis()[m.in_degree(d)[c]].id);
            reps.push_back(fmt::format("{}", fmt::join(ids, " + ")));
        }
        if (!reps.empty()) {
            out.dims[d] = static_cast<int>(reps.size());
            out.representatives[d] = std::move(reps);
        }
    }
    return out;
}

}  // namespace chisq::resolve
