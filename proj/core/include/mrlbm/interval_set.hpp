#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mrlbm {

/// Half-open run of integer cell indices [start, end).
struct Interval {
    std::int64_t start = 0;
    std::int64_t end = 0;

    std::int64_t size() const { return end - start; }
    bool empty() const { return end <= start; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted set of disjoint, non-adjacent intervals over the integers: the 1D
/// building block of the per-row cell storage.
class IntervalSet {
  public:
    IntervalSet() = default;

    IntervalSet(std::int64_t start, std::int64_t end)
    {
        insert(start, end);
    }

    bool empty() const { return iv_.empty(); }

    std::int64_t cell_count() const
    {
        std::int64_t n = 0;
        for (const auto& v : iv_)
        {
            n += v.size();
        }
        return n;
    }

    const std::vector<Interval>& intervals() const { return iv_; }

    bool contains(std::int64_t x) const
    {
        auto it = std::upper_bound(iv_.begin(), iv_.end(), x,
                                   [](std::int64_t v, const Interval& i) { return v < i.start; });
        if (it == iv_.begin())
        {
            return false;
        }
        --it;
        return x < it->end;
    }

    void insert(std::int64_t start, std::int64_t end)
    {
        if (end <= start)
        {
            return;
        }
        // Find the span of intervals overlapping or adjacent to [start, end).
        auto lo = std::lower_bound(iv_.begin(), iv_.end(), start,
                                   [](const Interval& i, std::int64_t v) { return i.end < v; });
        auto hi = std::upper_bound(lo, iv_.end(), end,
                                   [](std::int64_t v, const Interval& i) { return v < i.start; });
        if (lo != hi)
        {
            start = std::min(start, lo->start);
            end = std::max(end, (hi - 1)->end);
        }
        auto pos = iv_.erase(lo, hi);
        iv_.insert(pos, Interval{start, end});
    }

    void insert_point(std::int64_t x) { insert(x, x + 1); }

    void merge(const IntervalSet& other)
    {
        for (const auto& v : other.iv_)
        {
            insert(v.start, v.end);
        }
    }

    IntervalSet translated(std::int64_t shift) const
    {
        IntervalSet r;
        r.iv_.reserve(iv_.size());
        for (const auto& v : iv_)
        {
            r.iv_.push_back({v.start + shift, v.end + shift});
        }
        return r;
    }

    /// Grow every interval by w cells on each side (merging as needed).
    IntervalSet dilated(std::int64_t w) const
    {
        IntervalSet r;
        for (const auto& v : iv_)
        {
            r.insert(v.start - w, v.end + w);
        }
        return r;
    }

    /// Map to the parent level: index k -> floor(k/2).
    IntervalSet coarsened() const
    {
        IntervalSet r;
        for (const auto& v : iv_)
        {
            r.insert(floor_div2(v.start), floor_div2(v.end - 1) + 1);
        }
        return r;
    }

    /// Map to the child level: [s, e) -> [2s, 2e), covering both children.
    IntervalSet refined() const
    {
        IntervalSet r;
        r.iv_.reserve(iv_.size());
        for (const auto& v : iv_)
        {
            r.iv_.push_back({2 * v.start, 2 * v.end});
        }
        return r;
    }

    IntervalSet clipped(std::int64_t lo, std::int64_t hi) const
    {
        IntervalSet r;
        for (const auto& v : iv_)
        {
            const std::int64_t s = std::max(v.start, lo);
            const std::int64_t e = std::min(v.end, hi);
            if (s < e)
            {
                r.iv_.push_back({s, e});
            }
        }
        return r;
    }

    friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b)
    {
        IntervalSet r = a;
        r.merge(b);
        return r;
    }

    friend IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b)
    {
        IntervalSet r;
        auto ia = a.iv_.begin();
        auto ib = b.iv_.begin();
        while (ia != a.iv_.end() && ib != b.iv_.end())
        {
            const std::int64_t s = std::max(ia->start, ib->start);
            const std::int64_t e = std::min(ia->end, ib->end);
            if (s < e)
            {
                r.iv_.push_back({s, e});
            }
            if (ia->end < ib->end)
            {
                ++ia;
            }
            else
            {
                ++ib;
            }
        }
        return r;
    }

    friend IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b)
    {
        IntervalSet r;
        auto ib = b.iv_.begin();
        for (const auto& va : a.iv_)
        {
            std::int64_t cur = va.start;
            while (ib != b.iv_.end() && ib->end <= cur)
            {
                ++ib;
            }
            auto it = ib;
            while (it != b.iv_.end() && it->start < va.end)
            {
                if (it->start > cur)
                {
                    r.iv_.push_back({cur, it->start});
                }
                cur = std::max(cur, it->end);
                ++it;
            }
            if (cur < va.end)
            {
                r.iv_.push_back({cur, va.end});
            }
        }
        return r;
    }

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (const auto& v : iv_)
        {
            for (std::int64_t x = v.start; x < v.end; ++x)
            {
                fn(x);
            }
        }
    }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

    static std::int64_t floor_div2(std::int64_t x) { return x >> 1; }

  private:
    std::vector<Interval> iv_;
};

} // namespace mrlbm
