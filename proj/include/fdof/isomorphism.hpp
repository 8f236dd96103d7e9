#pragma once

#include <cstddef>
#include <stdexcept>

#include "fdof/dataset.hpp"

namespace fdof {

inline constexpr std::size_t kDefaultBlankNodeBound = 12;

class IsomorphismBoundExceeded : public std::runtime_error {
 public:
  explicit IsomorphismBoundExceeded(std::size_t count, std::size_t bound);
};

// True iff some bijection between the blank nodes of `a` and `b` makes the
// quad sets equal. Throws IsomorphismBoundExceeded when the two datasets
// together hold more than `bound` distinct blank nodes.
bool isomorphic(const Dataset& a, const Dataset& b,
                std::size_t bound = kDefaultBlankNodeBound);

}  // namespace fdof
