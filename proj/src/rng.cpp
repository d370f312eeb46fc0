#include "finsler/rng.hpp"

#include <cstdlib>
#include <string>

namespace finsler::rng {

std::uint64_t default_seed(std::uint64_t fallback) {
  const char* env = std::getenv("FINSLER_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    return fallback;
  }
}

}  // namespace finsler::rng
