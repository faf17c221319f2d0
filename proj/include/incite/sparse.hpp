#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace incite {

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    double value;
};

/// Read-only view over CSR storage; what the kernels consume.
struct CsrView {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::span<const std::size_t> row_ptr;
    std::span<const std::uint32_t> col_idx;
    std::span<const double> values;
};

/// Compressed sparse row matrix. Column indices are sorted within each row and
/// duplicate coordinates are summed on construction.
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

    static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);
    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const { return values_.size(); }

    std::span<const std::uint32_t> row_columns(std::size_t r) const;
    std::span<const double> row_values(std::size_t r) const;
    double at(std::size_t r, std::size_t c) const;

    SparseMatrix transposed() const;
    std::vector<std::vector<double>> to_dense() const;

    CsrView view() const { return {rows_, cols_, row_ptr_, col_idx_, values_}; }

    /// Adopts CSR arrays directly; columns must already be sorted and unique per row.
    static SparseMatrix from_csr(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_ptr,
                                 std::vector<std::uint32_t> col_idx, std::vector<double> values);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> col_idx_;
    std::vector<double> values_;
};

} // namespace incite
