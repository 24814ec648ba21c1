#include "wps/cohomology.hpp"

#include <numeric>
#include <stdexcept>

namespace wps {

namespace {

BigInt big_gcd(BigInt a, BigInt b) { return boost::multiprecision::gcd(a, b); }
BigInt big_lcm(const BigInt& a, const BigInt& b) { return a / big_gcd(a, b) * b; }

// Visits every (k+1)-element subset of {0, ..., n} in lexicographic order.
template <typename F>
void for_each_subset(int count, int choose, F&& visit) {
    std::vector<int> idx(choose);
    for (int i = 0; i < choose; ++i) idx[i] = i;
    while (true) {
        visit(idx);
        int i = choose - 1;
        while (i >= 0 && idx[i] == count - choose + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < choose; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

BigInt l_value(const WeightVector& q, int k) {
    int n = q.n();
    if (k < 1 || k > n) throw std::invalid_argument("l_value: k must satisfy 1 <= k <= n");
    BigInt result = 1;
    for_each_subset(n + 1, k + 1, [&](const std::vector<int>& idx) {
        BigInt prod = 1;
        std::int64_t g = 0;
        for (int i : idx) {
            prod *= q[static_cast<std::size_t>(i)];
            g = std::gcd(g, q[static_cast<std::size_t>(i)]);
        }
        result = big_lcm(result, prod / g);
    });
    return result;
}

StructureConstant structure_constant(const WeightVector& q, int k, int j) {
    int n = q.n();
    if (k < 1 || j < 1) throw std::invalid_argument("structure_constant: k, j must be >= 1");
    if (k + j > n) return {BigInt(0), true, false};
    BigInt lk = l_value(q, k);
    BigInt lj = l_value(q, j);
    BigInt lkj = l_value(q, k + j);
    BigInt prod = lk * lj;
    if (prod % lkj != 0)
        throw std::logic_error("structure_constant: non-integer quotient, implementation bug");
    return {prod / lkj, false, k + j == n};
}

CohomologyRing CohomologyRing::compute(const WeightVector& q) {
    CohomologyRing ring;
    ring.n = q.n();
    ring.l.reserve(static_cast<std::size_t>(ring.n));
    for (int k = 1; k <= ring.n; ++k) ring.l.push_back(l_value(q, k));
    ring.c.assign(static_cast<std::size_t>(ring.n), {});
    for (int k = 1; k + 1 <= ring.n; ++k) {
        auto& row = ring.c[static_cast<std::size_t>(k - 1)];
        for (int j = 1; k + j <= ring.n; ++j) {
            BigInt prod = ring.l[k - 1] * ring.l[j - 1];
            const BigInt& lkj = ring.l[k + j - 1];
            if (prod % lkj != 0)
                throw std::logic_error("CohomologyRing: non-integer quotient, implementation bug");
            row.push_back(prod / lkj);
        }
    }
    return ring;
}

std::pair<int, int> complex_profile(const WeightVector& q) {
    int n = q.n();
    return {n + 1, n};
}

RealProfile real_profile(const WeightVector& q) {
    int n = q.n();
    int r = 0;
    for (auto w : q.entries())
        if (w % 2 != 0) ++r;

    RealProfile p;
    p.r = r;
    p.is_manifold = (r == n + 1);
    if (r == n + 1) {
        p.sb = n + 1;
        p.cl = n;
    } else if (r == 0) {
        // RP^n(q) is the sphere R^{n+1} cap S^{2n+1}(q) itself.
        p.sb = 2;
        p.cl = 1;
    } else if (r == 1) {
        p.sb = 1;
        p.cl = 0;
    } else {  // 2 <= r <= n
        p.sb = r;
        p.cl = 1;
    }
    if (r >= 1 && r <= n) p.suspension_base = r - 1;
    return p;
}

}  // namespace wps
