#pragma once

#include <optional>
#include <vector>

namespace transport {

enum class Sample { Target = 0, Trial = 1 };
enum class Arm { Control = 0, Treated = 1 };

// One subject. Arm and outcome are present exactly when the subject is in
// the trial; target subjects carry only the covariate.
struct SubjectRecord {
  double x = 0.0;
  Sample s = Sample::Target;
  std::optional<Arm> a;
  std::optional<double> y;

  friend bool operator==(const SubjectRecord&, const SubjectRecord&) = default;
};

// Validated study data. n and m are derived counts (trial / target); the
// only way to obtain one is validate() or the CSV parser, so every instance
// satisfies the record invariants, has at least one subject per trial arm,
// and has n + m == records.size(). m may be zero; transport estimators
// check for that themselves.
struct StudyDataset {
  std::vector<SubjectRecord> records;
  int n = 0;
  int m = 0;

  friend bool operator==(const StudyDataset&, const StudyDataset&) = default;
};

// Errors: EmptyDataset, MissingArmData, TargetWithOutcome, NonFiniteValue
// (also covers negative covariates), DegenerateTrial (an arm with no
// records).
StudyDataset validate(std::vector<SubjectRecord> records);

}  // namespace transport
