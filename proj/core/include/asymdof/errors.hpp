#pragma once

#include <stdexcept>
#include <string>

namespace asymdof {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define ASYMDOF_DEFINE_ERROR(Name)             \
    class Name : public Error {                \
       public:                                 \
        using Error::Error;                    \
    }

// model
ASYMDOF_DEFINE_ERROR(InvalidDims);
ASYMDOF_DEFINE_ERROR(RatioOutOfScope);
ASYMDOF_DEFINE_ERROR(DegenerateRegime);
ASYMDOF_DEFINE_ERROR(FactorOutOfRange);
ASYMDOF_DEFINE_ERROR(WrongRegime);

// alignment
ASYMDOF_DEFINE_ERROR(DegenerateChannels);
ASYMDOF_DEFINE_ERROR(InsufficientBranches);
ASYMDOF_DEFINE_ERROR(InfeasibleTarget);

// oracle
ASYMDOF_DEFINE_ERROR(InvalidTarget);

#undef ASYMDOF_DEFINE_ERROR

}  // namespace asymdof
