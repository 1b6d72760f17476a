#ifndef HEMOPRIOR_PRIOR_SCALAR_MAP_H_
#define HEMOPRIOR_PRIOR_SCALAR_MAP_H_

#include <cstddef>
#include <vector>

namespace hemoprior {

// Row-major single-channel map sharing the spatial grid of its source frame.
struct ScalarMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ScalarMap() = default;
  ScalarMap(int w, int h, double fill = 0.0);

  std::size_t size() const { return values.size(); }
  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

  bool SameShape(const ScalarMap& other) const {
    return width == other.width && height == other.height;
  }
  double Mean() const;
};

// Throws ValidationError naming `what` when the grids differ.
void RequireSameShape(const ScalarMap& a, const ScalarMap& b, const char* what);

}  // namespace hemoprior

#endif  // HEMOPRIOR_PRIOR_SCALAR_MAP_H_
