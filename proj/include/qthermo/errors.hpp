// errors.hpp
// Exception types raised across the toolkit.

#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QTHERMO_DEFINE_ERROR(Name)                     \
  class Name : public Error {                          \
   public:                                             \
    explicit Name(const std::string& what)             \
        : Error(std::string(#Name ": ") + what) {}     \
  }

QTHERMO_DEFINE_ERROR(NotHermitian);
QTHERMO_DEFINE_ERROR(DimensionMismatch);
QTHERMO_DEFINE_ERROR(NotOrthonormal);
QTHERMO_DEFINE_ERROR(BadRank);
QTHERMO_DEFINE_ERROR(InvalidState);
QTHERMO_DEFINE_ERROR(BadDimension);
QTHERMO_DEFINE_ERROR(BadFraction);
QTHERMO_DEFINE_ERROR(BadGrid);
QTHERMO_DEFINE_ERROR(UnknownExperiment);
QTHERMO_DEFINE_ERROR(InvalidConfig);
QTHERMO_DEFINE_ERROR(EmptyInput);

#undef QTHERMO_DEFINE_ERROR

}  // namespace qthermo
