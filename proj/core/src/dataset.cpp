#include "transport/dataset.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "transport/errors.hpp"

namespace transport {

StudyDataset validate(std::vector<SubjectRecord> records) {
  if (records.empty()) throw EmptyDataset("dataset has no records");

  int n = 0, m = 0, treated = 0, control = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SubjectRecord& r = records[i];
    const std::string at = "record " + std::to_string(i);
    if (!std::isfinite(r.x) || r.x < 0.0)
      throw NonFiniteValue(at + ": covariate must be finite and >= 0");
    if (r.s == Sample::Trial) {
      if (!r.a.has_value() || !r.y.has_value())
        throw MissingArmData(at + ": trial record lacks arm or outcome");
      if (!std::isfinite(*r.y))
        throw NonFiniteValue(at + ": outcome must be finite");
      ++n;
      (*r.a == Arm::Treated ? treated : control) += 1;
    } else {
      if (r.a.has_value() || r.y.has_value())
        throw TargetWithOutcome(at + ": target record carries arm or outcome");
      ++m;
    }
  }
  if (treated < 1 || control < 1)
    throw DegenerateTrial("trial needs at least one record in each arm (treated=" +
                          std::to_string(treated) + ", control=" +
                          std::to_string(control) + ")");

  StudyDataset ds;
  ds.records = std::move(records);
  ds.n = n;
  ds.m = m;
  return ds;
}

}  // namespace transport
