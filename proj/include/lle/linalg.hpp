// include/lle/linalg.hpp
//
// Thin wrappers over Eigen's dense factorizations with the singularity
// conventions the solvers rely on.

#pragma once

#include <Eigen/Dense>

#include <optional>

namespace lle {

// Partial-pivot LU that refuses matrices whose smallest pivot falls below
// pivot_tol * ||A||_inf.
class GuardedLU {
public:
    static constexpr double kDefaultPivotTol = 1e-14;

    explicit GuardedLU(const Eigen::MatrixXd& a, double pivot_tol = kDefaultPivotTol);

    bool singular() const { return singular_; }
    double min_pivot_ratio() const { return min_pivot_ratio_; }
    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    Eigen::VectorXd solve_transpose(const Eigen::VectorXd& b) const;

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    bool singular_ = false;
    double min_pivot_ratio_ = 0.0;
};

// Smallest singular value of A estimated by inverse iteration on A^T A,
// reusing an LU factorization.  Returns 0 when A is numerically singular.
double smallest_singular_value(const Eigen::MatrixXd& a, int iterations = 12);

struct SmallestSingularTriplets {
    Eigen::VectorXd values;      // ascending, at most `count`
    Eigen::VectorXd right;       // right singular vector of the smallest value
    Eigen::VectorXd left;        // left singular vector of the smallest value
    double largest = 0.0;
};

// Full SVD, returning the `count` smallest singular values and the singular
// vectors belonging to the smallest.
SmallestSingularTriplets smallest_singular_triplets(const Eigen::MatrixXd& a, int count = 3);

}  // namespace lle
