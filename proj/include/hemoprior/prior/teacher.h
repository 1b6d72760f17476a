#ifndef HEMOPRIOR_PRIOR_TEACHER_H_
#define HEMOPRIOR_PRIOR_TEACHER_H_

#include "hemoprior/io/image.h"
#include "hemoprior/prior/prior.h"
#include "hemoprior/prior/scalar_map.h"

namespace hemoprior {

// Output cell (i, j) averages rows [floor(i*H/out_h), ceil((i+1)*H/out_h))
// and the analogous columns.
ScalarMap AdaptiveAvgPool(const ScalarMap& map, int out_height, int out_width);

inline constexpr double kBceClamp = 1e-7;

// Mean binary cross-entropy; predictions are clamped to
// [kBceClamp, 1 - kBceClamp] before the logs.
double BceMapLoss(const ScalarMap& pred, const ScalarMap& target);

// Distillation target: P_blood recomputed from the un-normalized frame and
// pooled to the decoder resolution.
ScalarMap TeacherTarget(const RgbFrame& frame, const PriorParams& params, PriorVersion version,
                        int out_height, int out_width);

// lambda_distill * BCE(student, teacher). No default weight is provided.
double DistillationLoss(const ScalarMap& student, const ScalarMap& teacher,
                        double lambda_distill);

}  // namespace hemoprior

#endif  // HEMOPRIOR_PRIOR_TEACHER_H_
