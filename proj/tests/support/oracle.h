#pragma once

// Reference computations that share no code with the library: Milnor
// products read off the coproduct of the dual Steenrod algebra, basis
// enumeration, and power-series bookkeeping for Poincare series.

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;  // (r1, r2, ...), no trailing zeros

int degree(const Seq& r);
int excess(const Seq& r);

// Every Seq of degree d, in no particular order.
std::vector<Seq> milnor_basis(int d);

// Sq(R) Sq(S) = sum of Sq(T) over T with xi^R (x) xi^S in psi(xi^T), where
// psi(xi_n) = sum_i xi_{n-i}^{2^i} (x) xi_i.
std::set<Seq> product(const Seq& r, const Seq& s);

// Truncated power series with integer coefficients, index = degree.
using Series = std::vector<std::int64_t>;

Series polynomial_series(const std::vector<int>& generator_degrees, int max_deg);
Series exterior_series(const std::vector<int>& generator_degrees, int max_deg);
Series multiply(const Series& a, const Series& b);

// Degrees of the polynomial generators Sq(R) iota_k, exc(R) < k, through max_deg.
std::vector<int> km_generator_degrees(int k, int max_deg);

// #{(a, b) : a + b = s, a + 3b = t}: Ext over the exterior algebra on
// classes of degree 1 and 3.
int koszul_rank(int s, int t);

}  // namespace oracle
