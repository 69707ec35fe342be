#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cell.hpp"
#include "interval_set.hpp"

namespace mrlbm {

/// Set of same-level cells stored as sorted runs of contiguous indices along
/// the last axis, keyed by the leading D-1 coordinates. All level-collection
/// algebra (union, difference, dilation, level changes) is expressed on this
/// structure so whole runs are processed at once.
template <int D>
class CellSet {
  public:
    using Prefix = std::array<std::int64_t, D == 1 ? 1 : D - 1>;
    // D == 1 keys everything under a single zero prefix.

    bool empty() const
    {
        for (const auto& [p, iv] : rows_)
        {
            if (!iv.empty())
            {
                return false;
            }
        }
        return true;
    }

    void clear() { rows_.clear(); }

    std::int64_t cell_count() const
    {
        std::int64_t n = 0;
        for (const auto& [p, iv] : rows_)
        {
            n += iv.cell_count();
        }
        return n;
    }

    void insert(const Index<D>& idx)
    {
        rows_[prefix_of(idx)].insert_point(idx[D - 1]);
    }

    void insert_run(const Index<D>& idx, std::int64_t count)
    {
        rows_[prefix_of(idx)].insert(idx[D - 1], idx[D - 1] + count);
    }

    bool contains(const Index<D>& idx) const
    {
        auto it = rows_.find(prefix_of(idx));
        return it != rows_.end() && it->second.contains(idx[D - 1]);
    }

    void merge(const CellSet& other)
    {
        for (const auto& [p, iv] : other.rows_)
        {
            rows_[p].merge(iv);
        }
    }

    friend CellSet set_union(const CellSet& a, const CellSet& b)
    {
        CellSet r = a;
        r.merge(b);
        return r;
    }

    friend CellSet set_intersection(const CellSet& a, const CellSet& b)
    {
        CellSet r;
        for (const auto& [p, iv] : a.rows_)
        {
            auto it = b.rows_.find(p);
            if (it == b.rows_.end())
            {
                continue;
            }
            IntervalSet s = set_intersection(iv, it->second);
            if (!s.empty())
            {
                r.rows_.emplace(p, std::move(s));
            }
        }
        return r;
    }

    friend CellSet set_difference(const CellSet& a, const CellSet& b)
    {
        CellSet r;
        for (const auto& [p, iv] : a.rows_)
        {
            auto it = b.rows_.find(p);
            if (it == b.rows_.end())
            {
                if (!iv.empty())
                {
                    r.rows_.emplace(p, iv);
                }
                continue;
            }
            IntervalSet s = set_difference(iv, it->second);
            if (!s.empty())
            {
                r.rows_.emplace(p, std::move(s));
            }
        }
        return r;
    }

    CellSet translated(const Index<D>& shift) const
    {
        CellSet r;
        for (const auto& [p, iv] : rows_)
        {
            Prefix q = p;
            if constexpr (D > 1)
            {
                for (int i = 0; i < D - 1; ++i)
                {
                    q[i] += shift[i];
                }
            }
            r.rows_[q].merge(iv.translated(shift[D - 1]));
        }
        return r;
    }

    /// Box dilation by w cells in every direction (Cartesian and diagonal).
    CellSet dilated(std::int64_t w) const
    {
        CellSet r;
        Prefix off{};
        dilate_rec(r, off, 0, w);
        return r;
    }

    /// Parent-level image: per-axis floor division by two.
    CellSet coarsened() const
    {
        CellSet r;
        for (const auto& [p, iv] : rows_)
        {
            Prefix q = p;
            if constexpr (D > 1)
            {
                for (int i = 0; i < D - 1; ++i)
                {
                    q[i] = IntervalSet::floor_div2(q[i]);
                }
            }
            r.rows_[q].merge(iv.coarsened());
        }
        return r;
    }

    /// Child-level image: every cell expands to its full sibling block.
    CellSet refined() const
    {
        CellSet r;
        for (const auto& [p, iv] : rows_)
        {
            IntervalSet fine = iv.refined();
            if constexpr (D == 1)
            {
                r.rows_[p].merge(fine);
            }
            else
            {
                refine_prefix_rec(r, p, Prefix{}, 0, fine);
            }
        }
        return r;
    }

    /// All members of the sibling groups touched by this set.
    CellSet sibling_completed() const { return coarsened().refined(); }

    CellSet clipped(const Index<D>& lo, const Index<D>& hi) const
    {
        CellSet r;
        for (const auto& [p, iv] : rows_)
        {
            bool ok = true;
            if constexpr (D > 1)
            {
                for (int i = 0; i < D - 1; ++i)
                {
                    ok = ok && p[i] >= lo[i] && p[i] < hi[i];
                }
            }
            if (!ok)
            {
                continue;
            }
            IntervalSet s = iv.clipped(lo[D - 1], hi[D - 1]);
            if (!s.empty())
            {
                r.rows_.emplace(p, std::move(s));
            }
        }
        return r;
    }

    CellSet clipped(const DomainBox<D>& box, int level) const
    {
        Index<D> lo{};
        return clipped(lo, box.extent(level));
    }

    /// Visit cells in lexicographic (prefix..., last) order.
    template <class Fn>
    void for_each_cell(Fn&& fn) const
    {
        for (const auto& [p, iv] : rows_)
        {
            iv.for_each(
                [&](std::int64_t last)
                {
                    Index<D> idx;
                    if constexpr (D > 1)
                    {
                        for (int i = 0; i < D - 1; ++i)
                        {
                            idx[i] = p[i];
                        }
                    }
                    idx[D - 1] = last;
                    fn(idx);
                });
        }
    }

    template <class Fn>
    void for_each_run(Fn&& fn) const
    {
        for (const auto& [p, iv] : rows_)
        {
            for (const Interval& v : iv.intervals())
            {
                Index<D> idx;
                if constexpr (D > 1)
                {
                    for (int i = 0; i < D - 1; ++i)
                    {
                        idx[i] = p[i];
                    }
                }
                idx[D - 1] = v.start;
                fn(idx, v.size());
            }
        }
    }

    friend bool operator==(const CellSet&, const CellSet&) = default;

  private:
    static Prefix prefix_of(const Index<D>& idx)
    {
        Prefix p{};
        if constexpr (D > 1)
        {
            for (int i = 0; i < D - 1; ++i)
            {
                p[i] = idx[i];
            }
        }
        return p;
    }

    void dilate_rec(CellSet& out, Prefix& off, int axis, std::int64_t w) const
    {
        if constexpr (D > 1)
        {
            if (axis < D - 1)
            {
                for (std::int64_t o = -w; o <= w; ++o)
                {
                    off[axis] = o;
                    dilate_rec(out, off, axis + 1, w);
                }
                return;
            }
        }
        for (const auto& [p, iv] : rows_)
        {
            Prefix q = p;
            if constexpr (D > 1)
            {
                for (int i = 0; i < D - 1; ++i)
                {
                    q[i] += off[i];
                }
            }
            out.rows_[q].merge(iv.dilated(w));
        }
    }

    static void refine_prefix_rec(CellSet& out, const Prefix& coarse, Prefix fine, int axis, const IntervalSet& iv)
    {
        if (axis < D - 1)
        {
            fine[axis] = 2 * coarse[axis];
            refine_prefix_rec(out, coarse, fine, axis + 1, iv);
            fine[axis] = 2 * coarse[axis] + 1;
            refine_prefix_rec(out, coarse, fine, axis + 1, iv);
            return;
        }
        out.rows_[fine].merge(iv);
    }

    std::map<Prefix, IntervalSet> rows_;
};

/// Frozen, slot-indexed view of a CellSet: assigns each cell a dense offset in
/// lexicographic order so per-cell payloads can live in flat arrays.
template <int D>
class CellIndex {
  public:
    using Prefix = typename CellSet<D>::Prefix;

    CellIndex() = default;

    explicit CellIndex(const CellSet<D>& cells)
    {
        std::size_t base = 0;
        cells.for_each_run(
            [&](const Index<D>& start, std::int64_t count)
            {
                Run r;
                if constexpr (D > 1)
                {
                    for (int i = 0; i < D - 1; ++i)
                    {
                        r.prefix[i] = start[i];
                    }
                }
                r.start = start[D - 1];
                r.end = start[D - 1] + count;
                r.base = base;
                base += static_cast<std::size_t>(count);
                runs_.push_back(r);
            });
        size_ = base;
    }

    std::size_t size() const { return size_; }

    std::optional<std::size_t> slot(const Index<D>& idx) const
    {
        Prefix p{};
        if constexpr (D > 1)
        {
            for (int i = 0; i < D - 1; ++i)
            {
                p[i] = idx[i];
            }
        }
        const std::int64_t last = idx[D - 1];
        auto it = std::upper_bound(runs_.begin(), runs_.end(), std::make_pair(p, last),
                                   [](const auto& key, const Run& r)
                                   { return key.first < r.prefix || (key.first == r.prefix && key.second < r.start); });
        if (it == runs_.begin())
        {
            return std::nullopt;
        }
        --it;
        if (it->prefix != p || last < it->start || last >= it->end)
        {
            return std::nullopt;
        }
        return it->base + static_cast<std::size_t>(last - it->start);
    }

  private:
    struct Run {
        Prefix prefix{};
        std::int64_t start = 0;
        std::int64_t end = 0;
        std::size_t base = 0;
    };

    std::vector<Run> runs_;
    std::size_t size_ = 0;
};

} // namespace mrlbm
