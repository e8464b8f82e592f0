#include "pmcdse/sparse_matrix.h"

#include <algorithm>
#include <stdexcept>

#include "pmcdse/errors.h"

namespace pmcdse {

SparseMatrix SparseMatrix::fromTriplets(std::size_t rows, std::size_t columns,
                                        std::vector<std::pair<std::pair<StateId, StateId>, double>> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](auto const& a, auto const& b) { return a.first < b.first; });
    SparseMatrix m;
    m.columns_ = columns;
    m.rowStart_.assign(rows + 1, 0);
    m.entries_.reserve(triplets.size());
    for (std::size_t i = 0; i < triplets.size(); ++i) {
        auto const& [pos, value] = triplets[i];
        if (pos.first >= rows || pos.second >= columns) {
            throw InvalidModel("matrix entry out of bounds");
        }
        if (i > 0 && triplets[i - 1].first == pos) {
            throw InvalidModel("duplicate matrix entry");
        }
        if (value == 0.0) {
            continue;
        }
        m.entries_.push_back({pos.second, value});
        ++m.rowStart_[pos.first + 1];
    }
    for (std::size_t r = 0; r < rows; ++r) {
        m.rowStart_[r + 1] += m.rowStart_[r];
    }
    return m;
}

double SparseMatrix::rowSum(StateId r) const {
    double sum = 0.0;
    for (auto const& e : row(r)) {
        sum += e.value;
    }
    return sum;
}

double SparseMatrix::at(StateId r, StateId c) const {
    auto entries = row(r);
    auto it = std::lower_bound(entries.begin(), entries.end(), c,
                               [](MatrixEntry const& e, StateId col) { return e.column < col; });
    return (it != entries.end() && it->column == c) ? it->value : 0.0;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<std::pair<std::pair<StateId, StateId>, double>> triplets;
    triplets.reserve(entries_.size());
    for (StateId r = 0; r < rowCount(); ++r) {
        for (auto const& e : row(r)) {
            triplets.push_back({{e.column, r}, e.value});
        }
    }
    return fromTriplets(columns_, rowCount(), std::move(triplets));
}

StateSet StateSet::of(std::size_t size, std::initializer_list<StateId> states) {
    StateSet set(size);
    for (auto s : states) {
        set.insert(s);
    }
    return set;
}

std::size_t StateSet::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<StateId> StateSet::members() const {
    std::vector<StateId> out;
    for (StateId s = 0; s < bits_.size(); ++s) {
        if (bits_[s]) {
            out.push_back(s);
        }
    }
    return out;
}

StateSet StateSet::operator|(StateSet const& other) const {
    StateSet out(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        out.bits_[i] = bits_[i] || other.bits_[i];
    }
    return out;
}

StateSet StateSet::operator&(StateSet const& other) const {
    StateSet out(*this);
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        out.bits_[i] = bits_[i] && other.bits_[i];
    }
    return out;
}

StateSet StateSet::operator~() const {
    StateSet out(*this);
    out.bits_.flip();
    return out;
}

}  // namespace pmcdse
