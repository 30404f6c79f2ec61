#include "chisq/error.h"
#include "chisq/fixtures.h"
#include "chisq/theorems.h"
#include "properties.h"
#include <doctest.h>
#include <algorithm>

using namespace chisq;
using namespace chisq::theorems;

TEST_CASE("alpha")
{
    CHECK(alpha(0) == 0);
    CHECK(alpha(1) == 1);
    CHECK(alpha(36) == 2);
    CHECK(alpha((std::int64_t(1) << 40) - 1) == 40);
}

TEST_CASE("case classification")
{
    CHECK(classify(12, Ideal::Sq12).str() == "C(m=1,b=4)");
    CHECK(classify(8, Ideal::Sq12) == CaseTag{'D', 0, 0, 3});
    CHECK(classify(16, Ideal::Sq12) == CaseTag{'D', 0, 0, 4});
    CHECK(classify(24, Ideal::Sq12) == CaseTag{'E', 0, 0, 3});
    CHECK(classify(7, Ideal::Sq1).letter == 'A');
    CHECK(classify(20, Ideal::Sq1).letter == 'B');
}

TEST_CASE("closed form: domain")
{
    CHECK_THROWS_AS(min_k_formula(1, Ideal::Sq1), Error);
    for (int n = 2; n < 8; ++n)
        CHECK_FALSE(min_k_formula(n, Ideal::Sq12).has_value());
    CHECK(min_k_formula(8, Ideal::Sq12).has_value());
}

TEST_CASE("closed form: k = n - 7 for 9 <= n <= 15")
{
    for (int n = 9; n <= 15; ++n)
        CHECK(min_k_formula(n, Ideal::Sq12) == n - 7);
}

TEST_CASE("closed form against search")
{
    for (int n = 2; n <= 24; ++n)
        CHECK(min_k_search(n, Ideal::Sq1, n) == min_k_formula(n, Ideal::Sq1));
    for (int n = 8; n <= 24; ++n)
        CHECK(min_k_search(n, Ideal::Sq12, n) == min_k_formula(n, Ideal::Sq12));
    // Below 8 only the trivial k = n is outside the image.
    for (int n = 2; n < 8; ++n) {
        CHECK_FALSE(min_k_search(n, Ideal::Sq12, n - 1).has_value());
        CHECK(min_k_search(n, Ideal::Sq12, n) == n);
    }
}

TEST_CASE("closed form equals alpha plus eps")
{
    for (std::int64_t n = 2; n <= (1 << 16); ++n) {
        CHECK(min_k_formula(n, Ideal::Sq1) == alpha(n) + eps(n));
        if (n >= 8)
            CHECK(min_k_formula(n, Ideal::Sq12) == alpha(n) + eps_prime(n));
    }
}

TEST_CASE("sub-8 classes lie in the image")
{
    const auto r = props::sub_eight_vanishing();
    INFO((r.failures.empty() ? std::string() : r.failures.front()));
    CHECK(r.ok());
}

TEST_CASE("digit-sum minimisation")
{
    const auto r = lemma23(16, LemmaPart::B);
    CHECK(r.target == 13);
    CHECK(r.min_sum == 3);
    CHECK(r.minimizers == std::vector<MilnorSeq>{MilnorSeq{0, 2, 1}});
    for (int n = 4; n <= 32; n += 4) {
        const auto a = lemma23(n, LemmaPart::A);
        CHECK(a.min_sum == alpha(n) + 1);
        CHECK(a.minimizers == a.reachable);
        for (auto& m : a.minimizers) {
            CHECK(m.degree() == a.target);
            CHECK(m.excess() == a.min_sum);
        }
        if (n % 8 == 0) {
            const auto b = lemma23(n, LemmaPart::B);
            CHECK(b.min_sum == alpha(n) + 2);
            CHECK(b.minimizers == b.reachable);
        }
    }
    CHECK_THROWS_AS(lemma23(6, LemmaPart::A), Error);
    CHECK_THROWS_AS(lemma23(12, LemmaPart::B), Error);
}

TEST_CASE("[2]-series image")
{
    const auto c = two_series_image(8);
    CHECK(c == std::map<int, BigInt>{{4, 1}, {5, 40}, {6, 240}, {7, 448}, {8, 256}});
    // Against a direct expansion of (v x^2 + 2x)^i: x^j has coefficient
    // C(i, j-i) 2^(2i-j).
    for (int j = 1; j <= 24; ++j) {
        std::map<int, BigInt> expected;
        for (int i = 1; i <= j; ++i) {
            std::vector<BigInt> poly{1};  // coefficients in x
            for (int step = 0; step < i; ++step) {
                std::vector<BigInt> next(poly.size() + 2, 0);
                for (size_t e = 0; e < poly.size(); ++e) {
                    next[e + 1] += 2 * poly[e];
                    next[e + 2] += poly[e];
                }
                poly = std::move(next);
            }
            if (static_cast<size_t>(j) < poly.size() && poly[j] != 0)
                expected[i] = poly[j];
        }
        CHECK(two_series_image(j) == expected);
    }
}

TEST_CASE("Spin dual Stiefel-Whitney table")
{
    for (auto& r : fixtures::check_spin_table()) {
        INFO("n = " << r.n);
        CHECK(r.ok);
    }
    CHECK(fixtures::check_spin_table().size() == 18);
}
