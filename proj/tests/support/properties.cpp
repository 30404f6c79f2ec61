#include "properties.h"
#include "chisq/f2la.h"
#include "chisq/km.h"
#include "chisq/milnor.h"
#include "oracle.h"
#include <fmt/format.h>
#include <algorithm>
#include <set>

namespace props {

using chisq::km::KPoly;
using chisq::milnor::MilnorSeq;
using chisq::milnor::SteenrodSum;
namespace milnor = chisq::milnor;
namespace km = chisq::km;

void Report::merge(const Report& other)
{
    checks += other.checks;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

namespace {

std::set<oracle::Seq> as_set(const SteenrodSum& s)
{
    std::set<oracle::Seq> out;
    for (auto& t : s.terms())
        out.insert(t.entries());
    return out;
}

// Oracle product of two sums, as a set of sequences.
std::set<oracle::Seq> oracle_product(const SteenrodSum& a, const SteenrodSum& b)
{
    std::set<oracle::Seq> out;
    for (auto& x : a.terms())
        for (auto& y : b.terms())
            for (auto& t : oracle::product(x.entries(), y.entries()))
                if (!out.insert(t).second)
                    out.erase(t);
    return out;
}

void expect(Report& r, bool ok, const std::string& what)
{
    ++r.checks;
    if (!ok)
        r.failures.push_back(what);
}

// Named-basis monomials of H^*(K(Z/2,k)) in degrees 1..max_deg.
std::vector<KPoly> monomials(int k, int max_deg)
{
    std::vector<KPoly> out;
    for (int d = 1; d <= max_deg; ++d)
        for (auto& m : km::monomial_basis(k, d))
            out.emplace_back(k, m);
    return out;
}

}  // namespace

Report chi_recursion(int max_d)
{
    Report r;
    for (int d = 0; d <= max_d; ++d)
        expect(r, milnor::chi_recursive(d) == milnor::chi(d), fmt::format("chi recursion differs in degree {}", d));
    return r;
}

Report antipode_identity(int max_d)
{
    Report r;
    for (int d = 1; d <= max_d; ++d) {
        std::set<oracle::Seq> total;
        for (int i = 0; i <= d; ++i)
            for (auto& t : oracle_product(milnor::sq(i), milnor::chi(d - i)))
                if (!total.insert(t).second)
                    total.erase(t);
        expect(r, total.empty(), fmt::format("sum Sq^i chi(Sq^(d-i)) nonzero for d = {}", d));
    }
    return r;
}

Report associativity(int max_d)
{
    Report r;
    for (int da = 1; da <= max_d; ++da)
        for (int db = 1; da + db <= max_d; ++db)
            for (int dc = 1; da + db + dc <= max_d; ++dc)
                for (auto& a : milnor::basis(da))
                    for (auto& b : milnor::basis(db))
                        for (auto& c : milnor::basis(dc)) {
                            SteenrodSum lhs = milnor::product(milnor::product(SteenrodSum(a), SteenrodSum(b)), SteenrodSum(c));
                            SteenrodSum rhs = milnor::product(SteenrodSum(a), milnor::product(SteenrodSum(b), SteenrodSum(c)));
                            expect(r, lhs == rhs, fmt::format("({} {}) {} != {} ({} {})", a.str(), b.str(), c.str(),
                                                              a.str(), b.str(), c.str()));
                        }
    return r;
}

Report oracle_agreement(int max_d)
{
    Report r;
    for (int da = 0; da <= max_d; ++da)
        for (int db = 0; da + db <= max_d; ++db)
            for (auto& a : oracle::milnor_basis(da))
                for (auto& b : oracle::milnor_basis(db)) {
                    const MilnorSeq x(a), y(b);
                    expect(r, as_set(milnor::product(x, y)) == oracle::product(a, b),
                           fmt::format("{} * {} disagrees with the oracle", x.str(), y.str()));
                }
    return r;
}

Report ideal_spans(int max_d)
{
    using chisq::f2la::BitVector;
    using chisq::f2la::Echelon;
    Report r;
    for (auto ideal : {milnor::Ideal::Sq1, milnor::Ideal::Sq12})
        for (int d = 1; d <= max_d; ++d) {
            const auto basis = milnor::basis(d);
            auto index = [&](const MilnorSeq& s) {
                return static_cast<size_t>(std::find(basis.begin(), basis.end(), s) - basis.begin());
            };
            Echelon image(basis.size()), criterion(basis.size());
            const int max_op = ideal == milnor::Ideal::Sq1 ? 1 : 2;
            for (int op = 1; op <= max_op && op <= d; ++op)
                for (auto& b : milnor::basis(d - op)) {
                    BitVector v(basis.size());
                    const auto p = milnor::product(MilnorSeq{op}, b);
                    for (auto& t : p.terms())
                        v.flip(index(t));
                    image.insert(v);
                }
            for (size_t i = 0; i < basis.size(); ++i)
                if (!milnor::ideal_criterion(basis[i], ideal))
                    criterion.insert(BitVector::unit(basis.size(), i));
            bool same = image.rank() == criterion.rank();
            for (auto& v : criterion.basis())
                same = same && image.contains(v);
            expect(r, same, fmt::format("image of {} differs from the criterion in degree {}", milnor::ideal_name(ideal), d));
        }
    return r;
}

Report sub_eight_vanishing()
{
    Report r;
    for (int n = 2; n <= 7; ++n)
        for (int k = 1; k < n; ++k)
            expect(r, km::in_image(km::chi_class(n, k)).in_image,
                   fmt::format("chi(Sq^{}) iota_{} is not in the image of Sq1, Sq2", n - k, k));
    return r;
}

Report cartan(int k, int max_deg)
{
    Report r;
    const auto gens = km::generators(k, max_deg);
    const auto ys = monomials(k, max_deg);
    for (auto& g : gens) {
        const KPoly x(k, km::ring(k).generator_monomial(g.id));
        for (auto& y : ys) {
            const int n = x.degree() + y.degree();
            if (n > max_deg)
                continue;
            const KPoly xy = x * y;
            for (int i = 1; i <= n; ++i) {
                KPoly rhs(k);
                for (int a = 0; a <= i; ++a)
                    rhs += km::sq_action(a, x) * km::sq_action(i - a, y);
                expect(r, km::sq_action(i, xy) == rhs,
                       fmt::format("Cartan fails for Sq^{} on ({})({}), k = {}", i, km::format_named(x),
                                   km::format_named(y), k));
            }
        }
    }
    return r;
}

Report derivation(int k, int max_deg)
{
    Report r;
    const auto gens = km::generators(k, max_deg);
    const auto ys = monomials(k, max_deg);
    for (auto& g : gens) {
        const KPoly x(k, km::ring(k).generator_monomial(g.id));
        for (auto& y : ys) {
            if (x.degree() + y.degree() > max_deg)
                continue;
            for (int j = 0; j <= 1; ++j)
                expect(r, km::q_action(j, x * y) == km::q_action(j, x) * y + x * km::q_action(j, y),
                       fmt::format("Q{} is not a derivation on ({})({}), k = {}", j, km::format_named(x),
                                   km::format_named(y), k));
        }
    }
    return r;
}

Report composition(int k, int max_deg)
{
    Report r;
    const std::vector<MilnorSeq> ops = {MilnorSeq{1}, MilnorSeq{2}, MilnorSeq{3}, MilnorSeq{0, 1}};
    for (auto& x : monomials(k, max_deg))
        for (auto& a : ops)
            for (auto& b : ops) {
                const KPoly lhs = km::act(milnor::product(a, b), x);
                const KPoly rhs = km::act(SteenrodSum(a), km::act(SteenrodSum(b), x));
                expect(r, lhs == rhs, fmt::format("({} {}) x != {} ({} x) for x = {}, k = {}", a.str(), b.str(),
                                                  a.str(), b.str(), km::format_named(x), k));
            }
    return r;
}

Report unstable(int k, int max_deg)
{
    Report r;
    for (auto& x : monomials(k, max_deg)) {
        const int n = x.degree();
        expect(r, km::sq_action(n, x) == x.square(), fmt::format("Sq^{} x != x^2 for x = {}", n, km::format_named(x)));
        expect(r, km::sq_action(n + 1, x).is_zero(), fmt::format("Sq^{} x != 0 for x = {}", n + 1, km::format_named(x)));
        expect(r, km::sq_action(0, x) == x, fmt::format("Sq^0 x != x for x = {}", km::format_named(x)));
    }
    return r;
}

Report resolution(const chisq::resolve::Resolution& res)
{
    Report r;
    const auto v = chisq::resolve::verify(res);
    r.checks = v.checks;
    for (auto& f : v.failures)
        r.failures.push_back(fmt::format("{}: {}", res.module().name(), f));
    if (!v.ok() && v.failures.empty())
        r.failures.push_back(res.module().name() + ": verification failed");
    return r;
}

}  // namespace props
