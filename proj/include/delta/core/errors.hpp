#pragma once

#include <stdexcept>
#include <string>

namespace delta {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size, order or degree cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class DenominatorVanished : public Error {
 public:
  using Error::Error;
};

class KindConflict : public Error {
 public:
  using Error::Error;
};

class UnknownIndeterminate : public Error {
 public:
  explicit UnknownIndeterminate(const std::string& name)
      : Error("unknown indeterminate '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

}  // namespace delta
