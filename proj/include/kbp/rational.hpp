#pragma once

#include <gmpxx.h>

#include "kbp/size.hpp"

namespace kbp {

inline mpq_class make_rational(long num, long den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// Value of a size in whole units.
inline mpq_class to_rational(Size s) { return make_rational(s.raw(), Size::scale); }

}  // namespace kbp
