#pragma once

#include <Eigen/Core>

#include <cmath>

namespace fetgv {

/// Soft shrinkage of a scalar: sign(x) max(|x| - delta, 0).
inline double shrink(double x, double delta)
{
    const double mag = std::abs(x);
    if (mag <= delta) return 0.0;
    return x / mag * (mag - delta);
}

///
/// Soft shrinkage of a vector or matrix under its Euclidean / Frobenius norm:
/// x / |x| * max(|x| - delta, 0), and 0 for x = 0. This is the proximal map of
/// delta * |.|.
///
template <typename Derived>
typename Derived::PlainObject shrink(const Eigen::MatrixBase<Derived>& x, double delta)
{
    using Plain = typename Derived::PlainObject;
    const double mag = x.norm();
    if (mag <= delta || mag == 0.0) return Plain::Zero(x.rows(), x.cols());
    return (x * ((mag - delta) / mag)).eval();
}

/// In-place group shrinkage of consecutive runs of `group_size` entries.
void shrink_groups(Eigen::Ref<Eigen::VectorXd> values, int group_size, double delta);

} // namespace fetgv
