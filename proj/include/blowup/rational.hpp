#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blowup {

using Int = mpz_class;
using Rat = mpq_class;

// C(top, bot) with the zero-clamp convention used throughout: the value is 0
// whenever top < bot or bot < 0.
inline Int binomial(long top, long bot) {
    if (bot < 0 || top < bot) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top),
                 static_cast<unsigned long>(bot));
    return r;
}

inline Int factorial(long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
    return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer too large for long");
    return z.get_si();
}

inline long rat_to_long(const Rat& r) {
    if (!is_integer(r)) throw std::domain_error("expected an integer, got " + r.get_str());
    return to_long(Int(r.get_num()));
}

}  // namespace blowup
