#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

namespace spav
{
    /// Visits every subset of `items` with at most `max_size` members, by size and
    /// then lexicographically by position in `items`. Stops as soon as `visit`
    /// returns true, and reports whether it did.
    template <typename T_, typename Visit_>
    auto for_each_subset(const std::vector<T_> & items, std::size_t max_size, Visit_ && visit) -> bool
    {
        auto n = items.size();
        max_size = std::min(max_size, n);
        std::vector<std::size_t> pick;
        std::vector<T_> chosen;
        for (std::size_t k = 0; k <= max_size; ++k) {
            pick.resize(k);
            std::iota(pick.begin(), pick.end(), std::size_t{0});
            while (true) {
                chosen.clear();
                for (auto p : pick)
                    chosen.push_back(items[p]);
                if (visit(chosen))
                    return true;

                std::size_t i = k;
                while (i > 0 && pick[i - 1] == n - k + i - 1)
                    --i;
                if (i == 0)
                    break;
                ++pick[i - 1];
                for (std::size_t j = i; j < k; ++j)
                    pick[j] = pick[j - 1] + 1;
            }
        }
        return false;
    }

    namespace detail
    {
        template <typename Visit_>
        auto fill_counts(std::vector<long> & x, const std::vector<long> & caps, const std::vector<long> & suffix,
            std::size_t i, long remaining, Visit_ & visit) -> bool
        {
            if (i == caps.size())
                return visit(static_cast<const std::vector<long> &>(x));
            long hi = std::min(caps[i], remaining);
            long lo = std::max(0L, remaining - suffix[i + 1]);
            for (long v = hi; v >= lo; --v) {
                x[i] = v;
                if (fill_counts(x, caps, suffix, i + 1, remaining - v, visit))
                    return true;
            }
            x[i] = 0;
            return false;
        }
    }

    /// Visits every count vector x with 0 <= x[t] <= caps[t] and total at most
    /// `max_total`, by total and then in decreasing lexicographic order, so earlier
    /// entries are used up first. With unit caps this is exactly subset order.
    template <typename Visit_>
    auto for_each_count_vector(const std::vector<long> & caps, long max_total, Visit_ && visit) -> bool
    {
        auto n = caps.size();
        std::vector<long> suffix(n + 1, 0);
        for (std::size_t i = n; i > 0; --i)
            suffix[i - 1] = suffix[i] + caps[i - 1];
        max_total = std::min(max_total, suffix[0]);

        std::vector<long> x(n, 0);
        for (long total = 0; total <= max_total; ++total)
            if (detail::fill_counts(x, caps, suffix, 0, total, visit))
                return true;
        return false;
    }
}
