#include "hemoprior/io/classes.h"

#include <algorithm>

#include "hemoprior/errors.h"

namespace hemoprior {

static_assert(std::is_sorted(kClassNames.begin(), kClassNames.end()),
              "class table must stay in lexicographic order");

std::optional<int> ClassIndex(std::string_view name) {
  auto it = std::lower_bound(kClassNames.begin(), kClassNames.end(), name);
  if (it == kClassNames.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - kClassNames.begin());
}

std::string_view ClassName(int index) {
  if (index < 0 || index >= kNumClasses) {
    throw ValidationError("class index out of range: " + std::to_string(index));
  }
  return kClassNames[static_cast<std::size_t>(index)];
}

ClassSet DefaultEvaluableClasses() {
  ClassSet set = AllClasses();
  set.reset(*ClassIndex("Ampulla of Vater"));
  set.reset(*ClassIndex("Blood - hematin"));
  set.reset(*ClassIndex("Polyp"));
  return set;
}

ClassSet AllClasses() { return ClassSet{}.set(); }

ClassSet ParseClassSet(std::string_view spec) {
  if (spec == "default") return DefaultEvaluableClasses();
  if (spec == "all") return AllClasses();
  ClassSet set;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    auto idx = ClassIndex(item);
    if (!idx) throw ValidationError("unknown class name: '" + std::string(item) + "'");
    set.set(static_cast<std::size_t>(*idx));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return set;
}

}  // namespace hemoprior
