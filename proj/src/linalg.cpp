#include "neutral4/linalg.hpp"

#include <Eigen/Dense>

namespace neutral4 {

std::array<double, 4> symmetric_eigenvalues(const Mat4d& m) {
    Eigen::Matrix4d em;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) em(i, j) = m[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(em);
    std::array<double, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()(i);
    return out;
}

RankResult constraint_rank(const std::vector<std::array<double, 16>>& rows,
                           const std::vector<double>& rhs, double tol) {
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd a(n, 16);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 16; ++j) a(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RankResult result;
    const auto& sv = svd.singularValues();
    const double scale = sv.size() > 0 ? sv(0) : 0.0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * std::max(1.0, scale)) ++result.rank;
    result.smallest_sv = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
    if (!rhs.empty()) {
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) b(i) = rhs[static_cast<size_t>(i)];
        Eigen::VectorXd x = svd.solve(b);
        result.least_squares.resize(16);
        for (int j = 0; j < 16; ++j) result.least_squares[static_cast<size_t>(j)] = x(j);
    }
    return result;
}

std::array<double, 6> eigenvalues6(const std::array<std::array<double, 6>, 6>& m) {
    Eigen::Matrix<double, 6, 6> em;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) em(i, j) = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> solver(em);
    std::array<double, 6> out;
    for (int i = 0; i < 6; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i).real();
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace neutral4
