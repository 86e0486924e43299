#pragma once

#include <stdexcept>
#include <string>

namespace ils {

// Base class for all solver errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ILS_DEFINE_ERROR(Name)                                      \
  struct Name : Error {                                             \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

ILS_DEFINE_ERROR(RankDeficient);
ILS_DEFINE_ERROR(DegenerateRotation);
ILS_DEFINE_ERROR(NotPositiveDefinite);
ILS_DEFINE_ERROR(NotSymmetric);
ILS_DEFINE_ERROR(SingularTriangular);
ILS_DEFINE_ERROR(NonUnimodular);
ILS_DEFINE_ERROR(NonTermination);
ILS_DEFINE_ERROR(InvalidCase);

#undef ILS_DEFINE_ERROR

}  // namespace ils
