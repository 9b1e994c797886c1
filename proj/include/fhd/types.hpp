#ifndef FHD_TYPES_HPP
#define FHD_TYPES_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace fhd {

using cplx = std::complex<double>;

// Point of C^2. Kept as a plain aggregate so grids of them stay flat in memory.
struct C2 {
    cplx x{0.0, 0.0};
    cplx y{0.0, 0.0};
};

inline double norm2_sq(const C2& z) { return std::norm(z.x) + std::norm(z.y); }
inline double norm2(const C2& z) { return std::sqrt(norm2_sq(z)); }

inline bool is_finite(const cplx& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
}
inline bool is_finite(const C2& z) { return is_finite(z.x) && is_finite(z.y); }

// Orbit direction: forward composes the fiber maps, backward their inverses.
enum class Side : int { plus = +1, minus = -1 };

inline Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

// Thrown when a configuration asks for something the catalogue does not model.
struct unsupported_configuration : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an evaluation is requested outside its stated domain.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fhd

#endif
