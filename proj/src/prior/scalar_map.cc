#include "hemoprior/prior/scalar_map.h"

#include <numeric>
#include <string>

#include "hemoprior/errors.h"

namespace hemoprior {

ScalarMap::ScalarMap(int w, int h, double fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw ValidationError("negative map size");
  values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

double ScalarMap::Mean() const {
  if (values.empty()) throw ValidationError("mean of empty map");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

void RequireSameShape(const ScalarMap& a, const ScalarMap& b, const char* what) {
  if (!a.SameShape(b)) {
    throw ValidationError(std::string(what) + ": shape mismatch " + std::to_string(a.width) +
                          "x" + std::to_string(a.height) + " vs " + std::to_string(b.width) +
                          "x" + std::to_string(b.height));
  }
}

}  // namespace hemoprior
