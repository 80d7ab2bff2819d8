// src/linalg.cpp

#include "lle/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "lle/error.hpp"

namespace lle {

GuardedLU::GuardedLU(const Eigen::MatrixXd& a, double pivot_tol) : lu_(a) {
    const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();
    const Eigen::VectorXd piv = lu_.matrixLU().diagonal().cwiseAbs();
    const double min_piv = piv.size() > 0 ? piv.minCoeff() : 0.0;
    min_pivot_ratio_ = scale > 0.0 ? min_piv / scale : 0.0;
    singular_ = !(min_pivot_ratio_ > pivot_tol);
}

Eigen::VectorXd GuardedLU::solve(const Eigen::VectorXd& b) const {
    if (singular_) throw NumericalFailure("LU solve on a singular matrix");
    return lu_.solve(b);
}

Eigen::VectorXd GuardedLU::solve_transpose(const Eigen::VectorXd& b) const {
    if (singular_) throw NumericalFailure("LU solve on a singular matrix");
    return lu_.transpose().solve(b);
}

double smallest_singular_value(const Eigen::MatrixXd& a, int iterations) {
    GuardedLU lu(a, 1e-15);
    if (lu.singular()) return 0.0;
    // inverse iteration on (A^T A)^{-1}
    Eigen::VectorXd x = Eigen::VectorXd::Ones(a.cols());
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] += 0.1 * std::sin(1.0 + 3.7 * static_cast<double>(k));
    x.normalize();
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd y = lu.solve_transpose(lu.solve(x));
        lambda = y.norm();
        if (!(lambda > 0.0) || !std::isfinite(lambda)) return 0.0;
        x = y / lambda;
    }
    return 1.0 / std::sqrt(lambda);
}

SmallestSingularTriplets smallest_singular_triplets(const Eigen::MatrixXd& a, int count) {
    Eigen::BDCSVD<Eigen::MatrixXd> bdc(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& s = bdc.singularValues();  // descending
    const Eigen::Index m = s.size();
    SmallestSingularTriplets r;
    if (m == 0) return r;
    const Eigen::Index k = std::min<Eigen::Index>(count, m);
    r.values.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) r.values[i] = s[m - 1 - i];
    r.right = bdc.matrixV().col(m - 1);
    r.left = bdc.matrixU().col(m - 1);
    r.largest = s[0];
    return r;
}

}  // namespace lle
