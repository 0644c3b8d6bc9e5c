#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <ios>
#include <string>

#include "planorth/errors.hpp"

namespace planorth {

/**
 * Arbitrary-precision real scalar.  Variable MPFR precision, expression
 * templates off so every operation materializes at the precision of its
 * operands.  Fresh values pick up the ambient default precision, which
 * PrecisionScope pins for the duration of a top-level operation.
 */
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

inline unsigned digits10_for_bits(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.3010299956639812)) + 1;
}

/**
 * Working-precision request plus the two tolerance knobs shared by the
 * numeric kernels: ortho_tol bounds acceptable orthonormality residuals,
 * root_tol scales the zero-residual certificates.
 */
struct PrecisionContext {
    int bits = 212;
    double ortho_tol = 1e-30;
    double root_tol = 0.0;  // 0 means "derive from bits" (2^(-bits/2), floored)

    explicit PrecisionContext(int bits_ = 212, double ortho = 1e-30,
                              double root = 0.0)
        : bits(bits_), ortho_tol(ortho), root_tol(root) {
        if (root_tol == 0.0)
            root_tol = std::ldexp(1.0, -std::min(bits / 2, 960));
        require(bits >= 64, ErrorCategory::config,
                "PrecisionContext: bits must be >= 64");
        require(ortho_tol > 0.0 && ortho_tol < 1.0, ErrorCategory::config,
                "PrecisionContext: ortho_tol must lie in (0,1)");
        require(root_tol > 0.0 && root_tol < 1.0, ErrorCategory::config,
                "PrecisionContext: root_tol must lie in (0,1)");
    }
};

/** RAII guard pinning the default MPFR precision to >= bits mantissa bits. */
class PrecisionScope {
public:
    explicit PrecisionScope(int bits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10_for_bits(bits));
    }
    explicit PrecisionScope(const PrecisionContext& ctx)
        : PrecisionScope(ctx.bits) {}
    ~PrecisionScope() { Real::default_precision(saved_); }

    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/** 2^e at ambient precision (exact). */
inline Real pow2(long e) {
    Real r(1);
    mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
    return r;
}

/** pi at ambient precision. */
inline Real const_pi() {
    Real r(0);
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline int precision_bits_of(const Real& x) {
    return static_cast<int>(mpfr_get_prec(x.backend().data()));
}

/**
 * Copy of x allocated at the ambient default precision.  Values built
 * before a PrecisionScope carry their construction-time precision, and
 * arithmetic between two such values rounds at that precision no matter
 * what the ambient default says; kernels therefore re-home every incoming
 * scalar before computing with it.
 */
inline Real to_ambient(const Real& x) {
    Real y(0);
    mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

/**
 * Full-precision decimal rendering, deterministic for a given value and
 * precision.  Scientific form so magnitudes far from 1 stay readable.
 */
inline std::string to_decimal(const Real& x) {
    const int bits = precision_bits_of(x);
    const auto digits =
        static_cast<std::streamsize>(std::ceil(bits * 0.3010299956639812)) + 2;
    return x.str(digits, std::ios_base::scientific);
}

/** Parse a decimal string at ambient precision. */
inline Real real_from_string(const std::string& s) {
    try {
        return Real(s);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse real number from '" + s + "'");
    }
}

}  // namespace planorth
