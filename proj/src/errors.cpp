#include "nbtrade/errors.hpp"

#include <sstream>

namespace nbtrade {

namespace {

std::string describe(const std::string& queue, double utilization)
{
    std::ostringstream out;
    out << queue << " queue is unstable: utilization " << utilization
        << " >= 1 (reduce arrival rate or packet size, or raise the link rate)";
    return out.str();
}

} // namespace

UnstableQueueError::UnstableQueueError(const std::string& queue, double utilization)
    : std::runtime_error(describe(queue, utilization)),
      queue_(queue),
      utilization_(utilization)
{
}

} // namespace nbtrade
