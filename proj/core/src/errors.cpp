#include "galiray/errors.hpp"

namespace galiray {

void require_dim(int dim, int lo, int hi) {
  if (dim < lo || dim > hi) {
    throw DimensionError("dimension " + std::to_string(dim) + " outside [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
  }
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace galiray
