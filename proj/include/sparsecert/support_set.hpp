#ifndef SPARSECERT_SUPPORT_SET_HPP
#define SPARSECERT_SUPPORT_SET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "sparsecert/types.hpp"

namespace sparsecert {

/// Ordered set of column indices. Kept strictly increasing; duplicates are
/// rejected at construction.
class SupportSet {
  public:
    SupportSet() = default;
    explicit SupportSet(std::vector<int> indices) : idx_(std::move(indices)) {
        std::sort(idx_.begin(), idx_.end());
        for (size_t i = 0; i + 1 < idx_.size(); ++i)
            if (idx_[i] == idx_[i + 1]) throw InvalidParams("duplicate index in support set");
        if (!idx_.empty() && idx_.front() < 0) throw InvalidParams("negative index in support set");
    }

    static SupportSet range(int first, int count) {
        std::vector<int> v(count);
        for (int i = 0; i < count; ++i) v[i] = first + i;
        return SupportSet(v);
    }

    int size() const { return static_cast<int>(idx_.size()); }
    bool empty() const { return idx_.empty(); }
    const std::vector<int>& indices() const { return idx_; }
    int operator[](int i) const { return idx_[i]; }

    bool contains(int i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

    void check_range(int n) const {
        if (!idx_.empty() && idx_.back() >= n) throw InvalidParams("support index out of range");
    }

    SupportSet set_union(const SupportSet& other) const {
        std::vector<int> out;
        std::set_union(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(out));
        return SupportSet(out);
    }

    SupportSet set_minus(const SupportSet& other) const {
        std::vector<int> out;
        std::set_difference(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(out));
        return SupportSet(out);
    }

    SupportSet set_intersect(const SupportSet& other) const {
        std::vector<int> out;
        std::set_intersection(idx_.begin(), idx_.end(), other.idx_.begin(), other.idx_.end(), std::back_inserter(out));
        return SupportSet(out);
    }

    SupportSet complement(int n) const {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            if (!contains(i)) out.push_back(i);
        return SupportSet(out);
    }

    SupportSet with(int i) const {
        std::vector<int> out = idx_;
        out.push_back(i);
        return SupportSet(out);
    }

    bool operator==(const SupportSet& other) const { return idx_ == other.idx_; }

  private:
    std::vector<int> idx_;
};

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

/// Streams all k-subsets of `pool` in lexicographic order; stops early when
/// the visitor returns false.
inline void for_each_subset(const std::vector<int>& pool, int k,
                            const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return;
    std::vector<int> pick(k);
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i;
    while (true) {
        for (int i = 0; i < k; ++i) pick[i] = pool[pos[i]];
        if (!visit(pick)) return;
        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i) --i;
        if (i < 0) return;
        ++pos[i];
        for (int j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
}

}  // namespace sparsecert

#endif
