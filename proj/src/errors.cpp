#include "eigenform/errors.hpp"

namespace eigenform {

void fail_consistency(const std::string& what) {
  throw ConsistencyFailure("internal consistency failure: " + what);
}

}  // namespace eigenform
