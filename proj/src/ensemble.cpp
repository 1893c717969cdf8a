#include "zodps/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zodps {

Ensemble::Ensemble(int n, int dim) : n_(n), dim_(dim) {
    if (n < 0) throw std::invalid_argument("Ensemble: negative particle count");
    if (dim < 1) throw std::invalid_argument("Ensemble: dimension must be >= 1");
    data_.assign(static_cast<std::size_t>(n) * dim, 0.0);
}

Ensemble::Ensemble(int n, int dim, std::vector<double> data) : n_(n), dim_(dim) {
    if (n < 0) throw std::invalid_argument("Ensemble: negative particle count");
    if (dim < 1) throw std::invalid_argument("Ensemble: dimension must be >= 1");
    if (data.size() != static_cast<std::size_t>(n) * dim)
        throw std::invalid_argument("Ensemble: data size does not match n*dim");
    data_ = std::move(data);
}

void Ensemble::validate_finite() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (!std::isfinite(at(i, j)))
                throw std::invalid_argument("Ensemble: non-finite value at particle " +
                                            std::to_string(i) + " coordinate " +
                                            std::to_string(j));
}

Ensemble Ensemble::subset(std::span<const int> rows) const {
    Ensemble out(static_cast<int>(rows.size()), dim_);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const int i = rows[r];
        if (i < 0 || i >= n_) throw std::invalid_argument("Ensemble::subset: row out of range");
        for (int j = 0; j < dim_; ++j) out.at(static_cast<int>(r), j) = at(i, j);
    }
    return out;
}

void Ensemble::append(const Ensemble& other) {
    if (other.dim_ != dim_)
        throw std::invalid_argument("Ensemble::append: dimension mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    n_ += other.n_;
}

} // namespace zodps
