#include "randfib/params.hpp"

#include <cmath>
#include <sstream>

namespace randfib {

Params validate_params(double a, double b, double eps) {
    if (!(a > 0.0) || !(a < 1.0) || !std::isfinite(a)) {
        std::ostringstream msg;
        msg << "OutOfRange(a): requires 0 < a < 1, got a=" << a;
        throw OutOfRangeError(msg.str());
    }
    if (!(b > 1.0 - a) || !std::isfinite(b)) {
        std::ostringstream msg;
        msg << "OutOfRange(b): requires b > 1 - a, got b=" << b
            << " with 1 - a = " << (1.0 - a);
        throw OutOfRangeError(msg.str());
    }
    if (!(eps >= 0.0) || !(eps <= 1.0)) {
        std::ostringstream msg;
        msg << "OutOfRange(eps): requires 0 <= eps <= 1, got eps=" << eps;
        throw OutOfRangeError(msg.str());
    }
    return Params{a, b, eps};
}

Roots lambda_roots(const Params& params, double eps) {
    if (!(eps >= 0.0) || !(eps <= 1.0)) {
        std::ostringstream msg;
        msg << "OutOfRange(eps): requires 0 <= eps <= 1, got eps=" << eps;
        throw OutOfRangeError(msg.str());
    }
    const double a = params.a;
    const double bq = params.b * (1.0 - eps);
    const double disc = std::sqrt(a * a + 4.0 * bq);
    const double lambda1 = 0.5 * (a + disc);
    const double lambda2 = (bq == 0.0) ? 0.0 : -bq / lambda1;
    return Roots{lambda1, lambda2, eps};
}

} // namespace randfib
