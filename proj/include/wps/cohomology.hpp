#ifndef WPS_COHOMOLOGY_HPP
#define WPS_COHOMOLOGY_HPP

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wps/core.hpp"

namespace wps {

using BigInt = boost::multiprecision::cpp_int;

/// l_k^q = lcm over (k+1)-element subsets of prod(weights)/gcd(weights),
/// 1 <= k <= n. Exact integer arithmetic; combinatorial enumeration over
/// C(n+1, k+1) subsets, so n <= 20 is the supported envelope.
BigInt l_value(const WeightVector& q, int k);

struct StructureConstant {
    BigInt value;        // l_k l_j / l_{k+j}, or 0 when the product vanishes
    bool zero_product;   // k + j > n: gamma_k gamma_j = 0
    bool boundary_case;  // k + j == n: the top-degree product, flagged for consumers
};

/// gamma_k gamma_j = (l_k l_j / l_{k+j}) gamma_{k+j}. Integrality of the
/// quotient is a theorem; a non-integer quotient throws logic_error.
StructureConstant structure_constant(const WeightVector& q, int k, int j);

/// The l-table and structure constants of H*(CP^n(q); Z).
struct CohomologyRing {
    int n;
    std::vector<BigInt> l;                           // l[k-1] = l_k, k = 1..n
    std::vector<std::vector<BigInt>> c;              // c[k-1][j-1], k+j <= n

    static CohomologyRing compute(const WeightVector& q);
};

/// (Betti sum, integral cuplength) of CP^n(q): always (n+1, n).
std::pair<int, int> complex_profile(const WeightVector& q);

/// Topology of the real locus RP^n(q), driven by r = #{odd weights}.
struct RealProfile {
    int r;
    bool is_manifold;                       // iff r == n+1
    int sb;                                 // Z_2 Betti sum
    int cl;                                 // Z_2 cuplength
    std::optional<int> suspension_base;     // the r-1 of RP^{r-1}, when 1 <= r <= n
};

RealProfile real_profile(const WeightVector& q);

}  // namespace wps

#endif
