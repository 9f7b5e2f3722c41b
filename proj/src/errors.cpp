#include "asdflow/errors.hpp"

#include <cstdio>

namespace asdflow {

namespace {
std::string describe(std::size_t node, double value, const std::string& where) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: profile not positive at node %zu (r = %.17g)",
                  where.c_str(), node, value);
    return buf;
}
}  // namespace

DomainError::DomainError(std::size_t node, double value, const std::string& where)
    : std::domain_error(describe(node, value, where)), node_(node), value_(value) {}

}  // namespace asdflow
