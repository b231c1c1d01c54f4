#include "confocal/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace confocal::specfun {

double log_gamma(double u) {
    if (!(u > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive, got " +
                                std::to_string(u));
    }
    return std::lgamma(u);
}

double pochhammer(double u, double gamma) {
    if (!(gamma > 0.0)) {
        throw std::domain_error("pochhammer: exponent must be positive, got " +
                                std::to_string(gamma));
    }
    if (!(u >= 0.0)) {
        throw std::domain_error("pochhammer: argument must be >= 0, got " +
                                std::to_string(u));
    }
    if (u == 0.0) return 0.0;  // limit u -> 0+ of Gamma(u+gamma)/Gamma(u)
    return std::exp(std::lgamma(u + gamma) - std::lgamma(u));
}

double dsqrt(double u) { return pochhammer(u, 0.5); }

}  // namespace confocal::specfun
