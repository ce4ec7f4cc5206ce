#include "yamabe/errors.hpp"

namespace yamabe {

ConeViolation::ConeViolation(std::size_t node, double x, const std::string& what)
    : DomainError("node " + std::to_string(node) + " (x = " + std::to_string(x) + "): " + what),
      node_(node), x_(x) {}

} // namespace yamabe
