#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kmgrad {

// All arithmetic in this library is exact. Rat is an arbitrary-precision
// rational; no floating point appears anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rat& r) { return sgn(r); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline std::string to_string(const Rat& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    r.canonicalize();
    return r;
}

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace kmgrad
