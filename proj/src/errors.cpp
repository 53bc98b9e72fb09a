#include "hrv/errors.hpp"

namespace hrv {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace hrv
