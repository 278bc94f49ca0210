#pragma once

#include <stdexcept>
#include <string>

namespace brachx {

// Matrix logarithm hit the branch cut at pi: the principal branch is not
// well defined and the caller has to perturb or pick a branch explicitly.
class branch_cut_error : public std::runtime_error {
  public:
    explicit branch_cut_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive integration could not proceed (step-size underflow); carries the
// time that was reached before giving up.
class integration_error : public std::runtime_error {
  public:
    integration_error(const std::string& what, double t_reached)
        : std::runtime_error(what), t_reached_(t_reached) {}
    double t_reached() const { return t_reached_; }

  private:
    double t_reached_;
};

}  // namespace brachx
