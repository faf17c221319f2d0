#include "incite/sparse.hpp"

#include "incite/error.hpp"

#include <algorithm>
#include <string>

namespace incite {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
    for (const auto& e : entries) {
        if (e.row >= rows || e.col >= cols) {
            throw InvalidArgument("sparse entry (" + std::to_string(e.row) + "," +
                                  std::to_string(e.col) + ") outside " + std::to_string(rows) +
                                  "x" + std::to_string(cols));
        }
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    row_ptr_.assign(rows + 1, 0);
    col_idx_.reserve(entries.size());
    values_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
        const auto& e = entries[i];
        double v = 0.0;
        std::size_t j = i;
        for (; j < entries.size() && entries[j].row == e.row && entries[j].col == e.col; ++j) {
            v += entries[j].value;
        }
        col_idx_.push_back(e.col);
        values_.push_back(v);
        ++row_ptr_[e.row + 1];
        i = j;
    }
    for (std::size_t r = 0; r < rows; ++r) {
        row_ptr_[r + 1] += row_ptr_[r];
    }
}

SparseMatrix SparseMatrix::from_csr(std::size_t rows, std::size_t cols,
                                    std::vector<std::size_t> row_ptr,
                                    std::vector<std::uint32_t> col_idx,
                                    std::vector<double> values) {
    if (row_ptr.size() != rows + 1 || col_idx.size() != values.size() ||
        row_ptr.back() != values.size()) {
        throw InvalidArgument("inconsistent CSR arrays");
    }
    SparseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_ = std::move(row_ptr);
    m.col_idx_ = std::move(col_idx);
    m.values_ = std::move(values);
    return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
    const std::size_t rows = dense.size();
    const std::size_t cols = rows == 0 ? 0 : dense.front().size();
    std::vector<Triplet> entries;
    for (std::size_t r = 0; r < rows; ++r) {
        if (dense[r].size() != cols) {
            throw InvalidArgument("ragged dense matrix");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (dense[r][c] != 0.0) {
                entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                                   dense[r][c]});
            }
        }
    }
    return SparseMatrix(rows, cols, std::move(entries));
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    std::vector<Triplet> entries;
    entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1.0});
    }
    return SparseMatrix(n, n, std::move(entries));
}

std::span<const std::uint32_t> SparseMatrix::row_columns(std::size_t r) const {
    return std::span<const std::uint32_t>(col_idx_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
}

std::span<const double> SparseMatrix::row_values(std::size_t r) const {
    return std::span<const double>(values_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
    const auto cols = row_columns(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) {
        return 0.0;
    }
    return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
}

SparseMatrix SparseMatrix::transposed() const {
    // Counting sort by column keeps the result's rows sorted.
    std::vector<std::size_t> ptr(cols_ + 1, 0);
    for (auto c : col_idx_) {
        ++ptr[c + 1];
    }
    for (std::size_t c = 0; c < cols_; ++c) {
        ptr[c + 1] += ptr[c];
    }
    std::vector<std::uint32_t> idx(values_.size());
    std::vector<double> val(values_.size());
    std::vector<std::size_t> next(ptr.begin(), ptr.end() - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const auto dst = next[col_idx_[k]]++;
            idx[dst] = static_cast<std::uint32_t>(r);
            val[dst] = values_[k];
        }
    }
    return from_csr(cols_, rows_, std::move(ptr), std::move(idx), std::move(val));
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
    std::vector<std::vector<double>> dense(rows_, std::vector<double>(cols_, 0.0));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            dense[r][col_idx_[k]] = values_[k];
        }
    }
    return dense;
}

} // namespace incite
