#include "zodps/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zodps {

namespace {

// NaN-proof comparison key: NaN sorts as worst.
double order_key(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

} // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& fn,
                             std::span<const double> start, double scale, int max_evals) {
    const int d = static_cast<int>(start.size());
    if (d < 1) throw std::invalid_argument("nelder_mead: empty start point");
    if (!(scale > 0.0)) throw std::invalid_argument("nelder_mead: scale must be positive");
    if (max_evals < 1) throw std::invalid_argument("nelder_mead: max_evals must be >= 1");

    NelderMeadResult best;
    best.point.assign(start.begin(), start.end());
    best.value = std::numeric_limits<double>::infinity();

    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        const double v = fn(x);
        ++evals;
        if (order_key(v) < order_key(best.value)) {
            best.value = v;
            best.point = x;
        }
        return v;
    };

    const std::size_t nv = static_cast<std::size_t>(d) + 1;
    std::vector<std::vector<double>> vert(nv);
    std::vector<double> val(nv, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < nv; ++i) {
        vert[i].assign(start.begin(), start.end());
        if (i > 0) vert[i][i - 1] += scale;
    }
    for (std::size_t i = 0; i < nv; ++i) {
        if (evals >= max_evals) {
            best.evals = evals;
            return best;
        }
        val[i] = eval(vert[i]);
    }

    std::vector<std::size_t> order(nv);
    std::vector<double> centroid(static_cast<std::size_t>(d));
    std::vector<double> xr(centroid.size()), xe(centroid.size()), xc(centroid.size());

    while (evals < max_evals) {
        for (std::size_t i = 0; i < nv; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return order_key(val[a]) < order_key(val[b]);
        });
        const std::size_t ibest = order[0];
        const std::size_t isecond = order[nv - 2];
        const std::size_t iworst = order[nv - 1];
        const double fbest = val[ibest];
        const double fworst = val[iworst];
        if (order_key(fworst) - order_key(fbest) <=
            1e-13 * (1.0 + std::abs(order_key(fbest)))) {
            break;  // the simplex has collapsed onto one value level
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < nv; ++i) {
            if (i == iworst) continue;
            for (int j = 0; j < d; ++j) centroid[static_cast<std::size_t>(j)] += vert[i][static_cast<std::size_t>(j)];
        }
        for (double& c : centroid) c /= d;

        for (std::size_t j = 0; j < centroid.size(); ++j)
            xr[j] = centroid[j] + (centroid[j] - vert[iworst][j]);
        const double fr = eval(xr);
        if (order_key(fr) < order_key(fbest)) {
            if (evals < max_evals) {
                for (std::size_t j = 0; j < centroid.size(); ++j)
                    xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
                const double fe = eval(xe);
                if (order_key(fe) < order_key(fr)) {
                    vert[iworst] = xe;
                    val[iworst] = fe;
                    continue;
                }
            }
            vert[iworst] = xr;
            val[iworst] = fr;
            continue;
        }
        if (order_key(fr) < order_key(val[isecond])) {
            vert[iworst] = xr;
            val[iworst] = fr;
            continue;
        }
        if (evals >= max_evals) break;
        bool contracted = false;
        if (order_key(fr) < order_key(fworst)) {
            for (std::size_t j = 0; j < centroid.size(); ++j)
                xc[j] = centroid[j] + 0.5 * (xr[j] - centroid[j]);
            const double fc = eval(xc);
            if (order_key(fc) <= order_key(fr)) {
                vert[iworst] = xc;
                val[iworst] = fc;
                contracted = true;
            }
        } else {
            for (std::size_t j = 0; j < centroid.size(); ++j)
                xc[j] = centroid[j] - 0.5 * (centroid[j] - vert[iworst][j]);
            const double fc = eval(xc);
            if (order_key(fc) < order_key(fworst)) {
                vert[iworst] = xc;
                val[iworst] = fc;
                contracted = true;
            }
        }
        if (contracted) continue;

        // Shrink the whole simplex toward the best vertex.
        for (std::size_t i = 0; i < nv && evals < max_evals; ++i) {
            if (i == ibest) continue;
            for (std::size_t j = 0; j < centroid.size(); ++j)
                vert[i][j] = vert[ibest][j] + 0.5 * (vert[i][j] - vert[ibest][j]);
            val[i] = eval(vert[i]);
        }
    }
    best.evals = evals;
    return best;
}

} // namespace zodps
