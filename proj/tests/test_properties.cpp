// The algebraic property suites at full size; also run by the acceptance
// binary.
#include "chisq/km.h"
#include "chisq/resolve.h"
#include "properties.h"
#include <doctest.h>

using namespace chisq;

namespace {

void require_ok(const props::Report& r)
{
    INFO(r.failures.size() << " failures; first: " << (r.failures.empty() ? std::string() : r.failures.front()));
    CHECK(r.ok());
    CHECK(r.checks > 0);
}

}  // namespace

TEST_CASE("antipode recursion through degree 24")
{
    require_ok(props::chi_recursion(24));
    require_ok(props::antipode_identity(16));
}

TEST_CASE("associativity through degree 14")
{
    require_ok(props::associativity(14));
}

TEST_CASE("oracle agreement through degree 16")
{
    require_ok(props::oracle_agreement(16));
}

TEST_CASE("Cartan formula and Q_j derivations through degree 24")
{
    for (int k = 2; k <= 3; ++k) {
        require_ok(props::cartan(k, 24));
        require_ok(props::derivation(k, 24));
        require_ok(props::unstable(k, 24));
        require_ok(props::composition(k, 24));
    }
}

TEST_CASE("every resolution satisfies d o d = 0 and minimality")
{
    using namespace chisq::resolve;
    for (int k = 1; k <= 4; ++k)
        for (auto alg : {AlgebraName::A1, AlgebraName::E1}) {
            const auto m = module_from_km(k, alg, 34);
            require_ok(props::resolution(Resolution(m, 8, 34)));
        }
}
