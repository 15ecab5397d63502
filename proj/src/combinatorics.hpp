#ifndef SOLIDSUM_COMBINATORICS_HPP
#define SOLIDSUM_COMBINATORICS_HPP

#include <numeric>
#include <vector>

namespace solidsum::detail {

/// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void for_each_combination(int n, int k, F&& f)
{
    if (k < 0 || k > n)
        return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(static_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace solidsum::detail

#endif
