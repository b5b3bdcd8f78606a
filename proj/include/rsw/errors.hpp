#ifndef RSW_ERRORS_HPP_
#define RSW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rsw {

//! Total depth H = eta - z dropped to or below zero somewhere.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(int i, int j, double depth, const std::string& where)
      : std::runtime_error("positivity violation in " + where + " at cell (" +
                           std::to_string(i) + "," + std::to_string(j) +
                           "): H = " + std::to_string(depth)),
        i_(i), j_(j), depth_(depth) {}
  int i() const { return i_; }
  int j() const { return j_; }
  double depth() const { return depth_; }

 private:
  int i_, j_;
  double depth_;
};

//! A boundary closure met flow outside its subcritical validity range.
class SubcriticalityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Scenario or config file failed validation.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Iterative solver did not reach its residual tolerance.
class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! Malformed snapshot/series file.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

//! A diagnostic could not be formed from the given samples.
class DiagnosticsError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rsw

#endif  // RSW_ERRORS_HPP_
