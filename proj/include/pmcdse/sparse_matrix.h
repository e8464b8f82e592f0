#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pmcdse {

using StateId = std::uint32_t;

struct MatrixEntry {
    StateId column;
    double value;

    bool operator==(MatrixEntry const&) const = default;
};

// Compressed sparse row matrix. Entries of a row are sorted by column and
// never hold an explicit zero.
class SparseMatrix {
public:
    SparseMatrix() = default;

    // `triplets` may come in any order; duplicates are rejected.
    static SparseMatrix fromTriplets(std::size_t rows, std::size_t columns,
                                     std::vector<std::pair<std::pair<StateId, StateId>, double>> triplets);

    std::size_t rowCount() const noexcept { return rowStart_.empty() ? 0 : rowStart_.size() - 1; }
    std::size_t columnCount() const noexcept { return columns_; }
    std::size_t entryCount() const noexcept { return entries_.size(); }

    std::span<MatrixEntry const> row(StateId r) const {
        return {entries_.data() + rowStart_[r], entries_.data() + rowStart_[r + 1]};
    }

    // Offset of the first entry of row `r` in the flat entry array.
    std::size_t rowOffset(StateId r) const { return rowStart_[r]; }

    double rowSum(StateId r) const;
    double at(StateId r, StateId c) const;

    SparseMatrix transpose() const;

    bool operator==(SparseMatrix const&) const = default;

private:
    std::size_t columns_ = 0;
    std::vector<std::size_t> rowStart_;
    std::vector<MatrixEntry> entries_;
};

// Dense bitset over states.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t size, bool value = false) : bits_(size, value) {}

    static StateSet of(std::size_t size, std::initializer_list<StateId> states);

    std::size_t size() const noexcept { return bits_.size(); }
    bool contains(StateId s) const { return bits_[s]; }
    void insert(StateId s) { bits_[s] = true; }
    void erase(StateId s) { bits_[s] = false; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }

    std::vector<StateId> members() const;

    StateSet operator|(StateSet const& other) const;
    StateSet operator&(StateSet const& other) const;
    StateSet operator~() const;
    StateSet minus(StateSet const& other) const { return *this & ~other; }

    bool operator==(StateSet const&) const = default;

private:
    std::vector<bool> bits_;
};

}  // namespace pmcdse
