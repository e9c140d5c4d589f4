#pragma once

#include <stdexcept>
#include <string>

namespace nilzeta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NILZETA_DEFINE_ERROR(Name)                                                                \
    class Name : public Error {                                                                   \
    public:                                                                                       \
        using Error::Error;                                                                       \
    }

NILZETA_DEFINE_ERROR(NotExpandable);
NILZETA_DEFINE_ERROR(NonIntegral);
NILZETA_DEFINE_ERROR(PoleError);
NILZETA_DEFINE_ERROR(BadCoefficients);
NILZETA_DEFINE_ERROR(MixedDerivedRank);
NILZETA_DEFINE_ERROR(BudgetExceeded);
NILZETA_DEFINE_ERROR(NotFull);
NILZETA_DEFINE_ERROR(EmptyIndexSet);
NILZETA_DEFINE_ERROR(BadPrime);
NILZETA_DEFINE_ERROR(RamifiedPrime);
NILZETA_DEFINE_ERROR(BadParams);
NILZETA_DEFINE_ERROR(UnsupportedFamily);
NILZETA_DEFINE_ERROR(ParseError);

#undef NILZETA_DEFINE_ERROR

} // namespace nilzeta
