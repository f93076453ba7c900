#ifndef LGQK_ERRORS_HPP
#define LGQK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lgqk {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape or length disagreement between operands.
struct dimension_error : error {
  using error::error;
};

// Input violates a symmetry/Hermiticity tolerance.
struct symmetry_error : error {
  using error::error;
};

// Iterative solver exceeded its iteration cap.
struct convergence_error : error {
  using error::error;
};

// Requested system size exceeds the dense-simulation cap.
struct capacity_error : error {
  using error::error;
};

// Linear system has no unique solution at the requested shift.
struct singular_error : error {
  using error::error;
};

// Scalar argument outside its documented range.
struct value_error : error {
  using error::error;
};

struct config_error : error {
  using error::error;
};

struct io_error : error {
  using error::error;
};

}  // namespace lgqk

#endif  // LGQK_ERRORS_HPP
