#include "graphsamp/sample_set.hpp"

#include "graphsamp/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace graphsamp {

SampleSet::SampleSet(Index n, IndexList members) : n_(n), members_(std::move(members)) {
    if (n < 0) throw InvalidArgument("sample set: negative ambient size");
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const Index v = members_[i];
        if (v < 0 || v >= n)
            throw InvalidArgument("sample set: node " + std::to_string(v) + " outside [0, " +
                                  std::to_string(n) + ")");
        if (i > 0 && members_[i - 1] == v)
            throw InvalidArgument("sample set: duplicate node " + std::to_string(v));
    }
}

SampleSet SampleSet::all(Index n) {
    IndexList m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), Index{0});
    return SampleSet(n, std::move(m));
}

IndexList SampleSet::complement() const {
    IndexList out;
    out.reserve(static_cast<std::size_t>(n_ - size()));
    auto it = members_.begin();
    for (Index v = 0; v < n_; ++v) {
        if (it != members_.end() && *it == v) {
            ++it;
            continue;
        }
        out.push_back(v);
    }
    return out;
}

bool SampleSet::contains(Index v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

Vector restrict(const Vector& v, const IndexList& rows) { return v(rows); }

Matrix restrict(const Matrix& A, const IndexList& rows, const IndexList& cols) {
    return A(rows, cols);
}

}  // namespace graphsamp
