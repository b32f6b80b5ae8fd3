#include "dofpp/sampling.hpp"

#include "dofpp/error.hpp"

namespace dofpp {

void SamplePlan::validate() const
{
    require(count >= 1, "SamplePlan requires count >= 1");
    require(path_grid >= 64, "SamplePlan requires path_grid >= 64");
    require(s_max >= 0.0, "SamplePlan requires s_max >= 0");
}

} // namespace dofpp
