#pragma once

#include <stdexcept>
#include <string>

namespace planorth {

// Error categories map to CLI exit codes: config -> 1, assertion -> 2,
// numeric -> 3.  Library callers can also catch the concrete types.
enum class ErrorCategory { config = 1, assertion = 2, numeric = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& what)
        : std::runtime_error(what), category_(cat) {}
    ErrorCategory category() const { return category_; }

private:
    ErrorCategory category_;
};

#define PLANORTH_DEFINE_ERROR(Name, Cat)                                     \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what)                               \
            : Error(ErrorCategory::Cat, std::string(#Name ": ") + what) {}   \
    }

PLANORTH_DEFINE_ERROR(ConfigError, config);
PLANORTH_DEFINE_ERROR(InvalidMeasure, config);
PLANORTH_DEFINE_ERROR(GeometryInvalid, config);
PLANORTH_DEFINE_ERROR(InvalidLake, config);

PLANORTH_DEFINE_ERROR(BoundViolated, assertion);
PLANORTH_DEFINE_ERROR(IdentityViolated, assertion);
PLANORTH_DEFINE_ERROR(CapacityExceeded, assertion);
PLANORTH_DEFINE_ERROR(PotentialAtZero, assertion);
PLANORTH_DEFINE_ERROR(ZeroDenominator, assertion);

PLANORTH_DEFINE_ERROR(NonConvergence, numeric);
PLANORTH_DEFINE_ERROR(PrecisionExhausted, numeric);
PLANORTH_DEFINE_ERROR(QuadratureNonConvergence, numeric);
PLANORTH_DEFINE_ERROR(NegativeSelfProduct, numeric);
PLANORTH_DEFINE_ERROR(SingularGram, numeric);

#undef PLANORTH_DEFINE_ERROR

inline void require(bool cond, ErrorCategory cat, const std::string& what) {
    if (!cond) throw Error(cat, what);
}

}  // namespace planorth
