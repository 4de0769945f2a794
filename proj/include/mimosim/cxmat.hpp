#pragma once

// Column-major complex matrix. Columns are contiguous because nearly every
// operation in the pipeline walks per-user (per-column) vectors of length M.

#include <complex>
#include <cstddef>
#include <vector>

namespace mimosim {

using cxd = std::complex<double>;
using CxVector = std::vector<cxd>;

class CxMatrix {
  public:
    CxMatrix() = default;
    CxMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cxd& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    cxd* col(std::size_t c) { return data_.data() + c * rows_; }
    const cxd* col(std::size_t c) const { return data_.data() + c * rows_; }

    cxd* data() { return data_.data(); }
    const cxd* data() const { return data_.data(); }

    bool operator==(const CxMatrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> data_;
};

}  // namespace mimosim
