#pragma once

#include <stdexcept>
#include <string>

namespace knotrec {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define KNOTREC_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// diagram_core
KNOTREC_DEFINE_ERROR(SyntaxError);
KNOTREC_DEFINE_ERROR(StructureError);
KNOTREC_DEFINE_ERROR(PatternMismatch);

// presentations
KNOTREC_DEFINE_ERROR(MissingMeridians);
KNOTREC_DEFINE_ERROR(InconsistentTable);

// quotients
KNOTREC_DEFINE_ERROR(SearchCeilingExceeded);

// twobridge / montesinos
KNOTREC_DEFINE_ERROR(InvalidForm);
KNOTREC_DEFINE_ERROR(NotALink);
KNOTREC_DEFINE_ERROR(InfinitySlope);
KNOTREC_DEFINE_ERROR(EmptyForm);
KNOTREC_DEFINE_ERROR(TooFewTangles);
KNOTREC_DEFINE_ERROR(NotGraphType);

// seifert
KNOTREC_DEFINE_ERROR(DegenerateFibration);
KNOTREC_DEFINE_ERROR(UnsupportedIntersectionNumber);
KNOTREC_DEFINE_ERROR(IntersectionMismatch);
KNOTREC_DEFINE_ERROR(NotUnimodular);

// covers
KNOTREC_DEFINE_ERROR(MultiComponentCyclic);

// recognizer
KNOTREC_DEFINE_ERROR(NotAKnot);

#undef KNOTREC_DEFINE_ERROR

}  // namespace knotrec
