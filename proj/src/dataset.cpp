#include "rampsvm/dataset.hpp"

#include <string>

#include "rampsvm/error.hpp"

namespace rampsvm {

void Dataset::validate() const {
  if (features.rows() < 1) throw InvalidInput("dataset has no samples");
  if (features.cols() < 1) throw InvalidInput("dataset has no features");
  if (labels.size() != features.rows())
    throw InvalidInput("dataset has " + std::to_string(features.rows()) + " samples but " +
                       std::to_string(labels.size()) + " labels");
  if (!features.allFinite()) throw InvalidInput("dataset has non-finite feature values");
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0)
      throw InvalidInput("label of sample " + std::to_string(i) + " is not -1 or +1");
  }
}

}  // namespace rampsvm
