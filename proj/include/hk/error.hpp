#pragma once

#include <stdexcept>
#include <string>

namespace hk {

// Every failure carries the module error name used in JSON reports and exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail) {
  throw Error(name, detail);
}

}  // namespace hk
