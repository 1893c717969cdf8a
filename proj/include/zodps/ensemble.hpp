#pragma once

#include <span>
#include <vector>

namespace zodps {

// Contiguous row-major n x dim particle storage.  n == 0 is legal (a run can
// lose every chain); dim >= 1 always.  Values are finite whenever
// validate_finite() has been honored at the producing boundary.
class Ensemble {
public:
    Ensemble() = default;
    Ensemble(int n, int dim);  // zero-filled
    Ensemble(int n, int dim, std::vector<double> data);

    int n() const { return n_; }
    int dim() const { return dim_; }
    bool empty() const { return n_ == 0; }

    double* row(int i) { return data_.data() + static_cast<std::size_t>(i) * dim_; }
    const double* row(int i) const {
        return data_.data() + static_cast<std::size_t>(i) * dim_;
    }
    std::span<double> particle(int i) { return {row(i), static_cast<std::size_t>(dim_)}; }
    std::span<const double> particle(int i) const {
        return {row(i), static_cast<std::size_t>(dim_)};
    }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }

    std::span<const double> flat() const { return data_; }
    std::span<double> flat() { return data_; }

    /// Throws std::invalid_argument naming the first NaN/Inf coordinate.
    void validate_finite() const;

    /// New ensemble keeping the listed rows, in the listed order.
    Ensemble subset(std::span<const int> rows) const;

    /// Concatenate rows of other below this (dims must match).
    void append(const Ensemble& other);

private:
    int n_ = 0;
    int dim_ = 1;
    std::vector<double> data_;
};

} // namespace zodps
