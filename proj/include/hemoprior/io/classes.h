#ifndef HEMOPRIOR_IO_CLASSES_H_
#define HEMOPRIOR_IO_CLASSES_H_

#include <array>
#include <bitset>
#include <optional>
#include <string>
#include <string_view>

namespace hemoprior {

inline constexpr int kNumClasses = 14;

// Fixed lexicographic order of the Kvasir-Capsule class folders. Index i of
// every score vector and confusion row refers to kClassNames[i].
inline constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "Ampulla of Vater",
    "Angiectasia",
    "Blood - fresh",
    "Blood - hematin",
    "Erosion",
    "Erythema",
    "Foreign Body",
    "Ileocecal valve",
    "Lymphangiectasia",
    "Normal clean mucosa",
    "Polyp",
    "Pylorus",
    "Reduced Mucosal View",
    "Ulcer",
};

using ClassSet = std::bitset<kNumClasses>;

std::optional<int> ClassIndex(std::string_view name);
std::string_view ClassName(int index);

// The 11 classes with held-out test support under the video-level split;
// Ampulla of Vater, Blood - hematin and Polyp are training-only.
ClassSet DefaultEvaluableClasses();
ClassSet AllClasses();

// "default" or "all", or a comma-separated list of class names.
ClassSet ParseClassSet(std::string_view spec);

}  // namespace hemoprior

#endif  // HEMOPRIOR_IO_CLASSES_H_
