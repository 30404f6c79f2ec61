#pragma once

// Property suites shared by the unit tests and the acceptance runner. Each
// returns the number of identities checked and a description of every
// failure.

#include "chisq/resolve.h"
#include <string>
#include <vector>

namespace props {

struct Report
{
    size_t checks = 0;
    std::vector<std::string> failures;

    bool ok() const
    {
        return failures.empty();
    }
    void merge(const Report& other);
};

// chi_recursive(d) == chi(d) for d <= max_d.
Report chi_recursion(int max_d);
// sum_i Sq^i chi(Sq^{d-i}) = 0 for 0 < d <= max_d, multiplied by the oracle.
Report antipode_identity(int max_d);
// (ab)c == a(bc) over basis triples of total degree <= max_d.
Report associativity(int max_d);
// Library products against the dual-coproduct oracle, total degree <= max_d.
Report oracle_agreement(int max_d);

// In each degree d <= max_d, the span of Sq^1 A (+ Sq^2 A) equals the span
// of the basis elements the digit criterion puts inside the image.
Report ideal_spans(int max_d);

// Sq^i(xy) = sum_a Sq^a x Sq^{i-a} y in H^*(K(Z/2,k)), x a generator, y a
// monomial, |x| + |y| <= max_deg.
Report cartan(int k, int max_deg);
// Q_j(xy) = Q_j(x) y + x Q_j(y) over the same pairs.
Report derivation(int k, int max_deg);
// (ab) x = a(b x) for a, b in {Sq1, Sq2, Sq3, Sq(0,1)} and monomials x.
Report composition(int k, int max_deg);
// Sq^i x = 0 for i > |x| and Sq^{|x|} x = x^2.
Report unstable(int k, int max_deg);

// chi(Sq^{n-k}) iota_k lies in the image of Sq^1, Sq^2 for 2 <= n <= 7, k < n.
Report sub_eight_vanishing();

// d o d = 0, minimality, exactness and the Euler characteristic.
Report resolution(const chisq::resolve::Resolution& r);

}  // namespace props
