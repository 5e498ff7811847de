#pragma once
#include <stdexcept>
#include <string>

namespace coliseum {

struct WeightError : std::runtime_error {
  explicit WeightError(const std::string& m) : std::runtime_error(m) {}
};
struct DegreeError : std::runtime_error {
  explicit DegreeError(const std::string& m) : std::runtime_error(m) {}
};
struct DuplicateGenerator : std::runtime_error {
  explicit DuplicateGenerator(const std::string& m) : std::runtime_error(m) {}
};
struct AlphabetError : std::runtime_error {
  explicit AlphabetError(const std::string& m) : std::runtime_error(m) {}
};
struct DisconnectedMask : std::runtime_error {
  explicit DisconnectedMask(const std::string& m) : std::runtime_error(m) {}
};
struct TrichotomyViolation : std::runtime_error {
  explicit TrichotomyViolation(const std::string& m) : std::runtime_error(m) {}
};
struct OrderViolation : std::runtime_error {
  explicit OrderViolation(const std::string& m) : std::runtime_error(m) {}
};
struct RootSolveFailure : std::runtime_error {
  explicit RootSolveFailure(const std::string& m) : std::runtime_error(m) {}
};
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};
struct UnsupportedSystem : ConfigError {
  explicit UnsupportedSystem(const std::string& m) : ConfigError(m) {}
};
struct IoError : std::runtime_error {
  explicit IoError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace coliseum
