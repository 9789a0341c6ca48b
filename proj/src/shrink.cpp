#include <fetgv/shrink.hpp>

#include <stdexcept>

namespace fetgv {

void shrink_groups(Eigen::Ref<Eigen::VectorXd> values, int group_size, double delta)
{
    if (group_size <= 0 || values.size() % group_size != 0) {
        throw std::invalid_argument("shrink_groups: length is not a multiple of the group size");
    }
    for (Eigen::Index g = 0; g < values.size(); g += group_size) {
        auto group = values.segment(g, group_size);
        const double mag = group.norm();
        if (mag <= delta || mag == 0.0) {
            group.setZero();
        } else {
            group *= (mag - delta) / mag;
        }
    }
}

} // namespace fetgv
