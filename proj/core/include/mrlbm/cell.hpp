#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace mrlbm {

template <int D>
using Index = std::array<std::int64_t, D>;

/// One cell of the nested dyadic grid hierarchy: refinement level plus an
/// integer multi-index. Interior indices lie in [0, 2^level) per axis (scaled
/// by the domain box for non-unit domains); ghost indices may extend beyond.
template <int D>
struct CellId {
    int level = 0;
    Index<D> idx{};

    friend bool operator==(const CellId&, const CellId&) = default;

    friend bool operator<(const CellId& a, const CellId& b)
    {
        if (a.level != b.level)
        {
            return a.level < b.level;
        }
        return a.idx < b.idx;
    }

    friend std::ostream& operator<<(std::ostream& os, const CellId& c)
    {
        os << '(' << c.level << ", [";
        for (int i = 0; i < D; ++i)
        {
            os << c.idx[i] << (i + 1 < D ? "," : "");
        }
        return os << "])";
    }
};

/// Geometric realization of a cell on the unit-edge hierarchy: edge 2^-level
/// in domain units, independent of the finest level.
template <int D>
struct CellGeometry {
    std::array<double, D> origin{};
    double edge = 0.0;
    double measure = 0.0;
};

template <int D>
CellGeometry<D> geometry(const CellId<D>& cell)
{
    CellGeometry<D> g;
    g.edge = std::ldexp(1.0, -cell.level);
    g.measure = 1.0;
    for (int i = 0; i < D; ++i)
    {
        g.origin[i] = std::ldexp(static_cast<double>(cell.idx[i]), -cell.level);
        g.measure *= g.edge;
    }
    return g;
}

template <int D>
std::array<double, D> cell_center(const CellId<D>& cell)
{
    std::array<double, D> c;
    const double edge = std::ldexp(1.0, -cell.level);
    for (int i = 0; i < D; ++i)
    {
        c[i] = (static_cast<double>(cell.idx[i]) + 0.5) * edge;
    }
    return c;
}

/// The 2^D children of a cell, ordered lexicographically by the child
/// selector delta in {0,1}^D (last axis fastest).
template <int D>
std::array<CellId<D>, (1 << D)> children(const CellId<D>& cell, int j_max)
{
    if (cell.level >= j_max)
    {
        throw std::out_of_range("children: cell already at the finest level");
    }
    std::array<CellId<D>, (1 << D)> out;
    for (int s = 0; s < (1 << D); ++s)
    {
        CellId<D> c;
        c.level = cell.level + 1;
        for (int i = 0; i < D; ++i)
        {
            const int bit = (s >> (D - 1 - i)) & 1;
            c.idx[i] = 2 * cell.idx[i] + bit;
        }
        out[s] = c;
    }
    return out;
}

template <int D>
CellId<D> parent(const CellId<D>& cell, int j_min)
{
    if (cell.level <= j_min)
    {
        throw std::out_of_range("parent: cell already at the coarsest level");
    }
    CellId<D> p;
    p.level = cell.level - 1;
    for (int i = 0; i < D; ++i)
    {
        p.idx[i] = cell.idx[i] >> 1; // floor division, ghost indices included
    }
    return p;
}

/// Index-space extent of the computational domain. The domain is a box of
/// unit-edge-2^-j cells: base_cells[i] cells per axis at level j_min, doubling
/// with each level. base_cells = 2^j_min on every axis recovers [0,1]^D.
template <int D>
struct DomainBox {
    int j_min = 0;
    Index<D> base_cells{};

    static DomainBox unit(int j_min)
    {
        DomainBox b;
        b.j_min = j_min;
        for (int i = 0; i < D; ++i)
        {
            b.base_cells[i] = std::int64_t{1} << j_min;
        }
        return b;
    }

    Index<D> extent(int level) const
    {
        Index<D> n;
        for (int i = 0; i < D; ++i)
        {
            n[i] = base_cells[i] << (level - j_min);
        }
        return n;
    }

    bool contains(int level, const Index<D>& idx) const
    {
        const Index<D> n = extent(level);
        for (int i = 0; i < D; ++i)
        {
            if (idx[i] < 0 || idx[i] >= n[i])
            {
                return false;
            }
        }
        return true;
    }

    Index<D> clamped(int level, Index<D> idx) const
    {
        const Index<D> n = extent(level);
        for (int i = 0; i < D; ++i)
        {
            if (idx[i] < 0)
            {
                idx[i] = 0;
            }
            else if (idx[i] >= n[i])
            {
                idx[i] = n[i] - 1;
            }
        }
        return idx;
    }

    std::int64_t cell_count(int level) const
    {
        std::int64_t n = 1;
        for (std::int64_t e : extent(level))
        {
            n *= e;
        }
        return n;
    }

    std::array<double, D> lengths() const
    {
        std::array<double, D> s;
        for (int i = 0; i < D; ++i)
        {
            s[i] = std::ldexp(static_cast<double>(base_cells[i]), -j_min);
        }
        return s;
    }
};

} // namespace mrlbm
