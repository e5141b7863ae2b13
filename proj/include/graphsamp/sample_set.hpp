#pragma once

#include "graphsamp/types.hpp"

namespace graphsamp {

/// A subset S of the nodes {0..n-1}, stored in strictly increasing order.
class SampleSet {
public:
    SampleSet() = default;
    /// Members may be given in any order; throws InvalidArgument on duplicates
    /// or indices outside [0, n).
    SampleSet(Index n, IndexList members);

    static SampleSet empty(Index n) { return SampleSet(n, {}); }
    static SampleSet all(Index n);

    Index ambient() const { return n_; }
    Index size() const { return static_cast<Index>(members_.size()); }
    bool is_empty() const { return members_.empty(); }
    bool is_full() const { return size() == n_; }

    const IndexList& members() const { return members_; }
    IndexList complement() const;
    bool contains(Index v) const;

    bool operator==(const SampleSet&) const = default;

private:
    Index n_ = 0;
    IndexList members_;
};

/// Rows of v (or rows and columns of A) restricted to an index list.
Vector restrict(const Vector& v, const IndexList& rows);
Matrix restrict(const Matrix& A, const IndexList& rows, const IndexList& cols);

}  // namespace graphsamp
