#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <boost/dynamic_bitset.hpp>
#include <complex>

namespace scalekit {

using Index = std::size_t;

/// A subset of the point set of a Space, one bit per point in load order.
using PointSet = boost::dynamic_bitset<>;

using Complex = std::complex<double>;

/// A bounded complex function tabulated on the points of a Space.
using Function = Eigen::VectorXcd;

/// Sparse operator on l2(X). The coefficient at (row y, column x) is <a(delta_x), delta_y>.
using OperatorMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Thrown for invalid input: malformed instances, violated preconditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline PointSet empty_set(std::size_t n) { return PointSet(n); }

inline PointSet full_set(std::size_t n)
{
    PointSet s(n);
    s.set();
    return s;
}

inline PointSet singleton(std::size_t n, Index i)
{
    PointSet s(n);
    s.set(i);
    return s;
}

inline PointSet make_set(std::size_t n, std::span<const Index> members)
{
    PointSet s(n);
    for (Index i : members) {
        if (i >= n)
            throw Error("point index " + std::to_string(i) + " out of range");
        s.set(i);
    }
    return s;
}

inline PointSet make_set(std::size_t n, std::initializer_list<Index> members)
{
    return make_set(n, std::span<const Index>(members.begin(), members.size()));
}

/// Points [lo, hi] by index, clipped to the universe.
inline PointSet index_range(std::size_t n, Index lo, Index hi)
{
    PointSet s(n);
    for (Index i = lo; i <= hi && i < n; ++i)
        s.set(i);
    return s;
}

inline std::vector<Index> members(const PointSet& s)
{
    std::vector<Index> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i))
        out.push_back(i);
    return out;
}

/// Subset test that treats the empty set as a subset of everything.
inline bool subset_of(const PointSet& a, const PointSet& b) { return a.is_subset_of(b); }

} // namespace scalekit
