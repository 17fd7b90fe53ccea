#include "gaucoll/observables.hpp"

#include "gaucoll/symplectic.hpp"

#include <cmath>

namespace gaucoll {

double occupation(const Mat& theta, int mode, double tol) {
    require_valid_cm(theta, tol);
    if (mode < 0 || 2 * mode + 1 >= theta.rows()) {
        throw ShapeError("occupation: mode index out of range");
    }
    return 0.5 * (theta(2 * mode, 2 * mode) + theta(2 * mode + 1, 2 * mode + 1) -
                  1.0);
}

double mutual_information(const EmbeddedState& state, double tol) {
    const double mi = gaussian_entropy(state.theta(), tol) +
                      gaussian_entropy(state.ancilla(), tol) -
                      gaussian_entropy(state.gamma, tol);
    if (mi < 0.0) {
        if (mi < -tol) {
            throw ValidityError("mutual_information: negative value " +
                                std::to_string(mi) + " beyond tolerance");
        }
        return 0.0;
    }
    return mi;
}

double tms_steady_occupation(double nu_e) {
    if (nu_e < 0.0 || nu_e >= std::asinh(1.0)) {
        throw DomainError("tms_steady_occupation: no steady state outside "
                          "0 <= nu_e < asinh(1)");
    }
    const double s2 = std::sinh(nu_e) * std::sinh(nu_e);
    return s2 / (1.0 - s2);
}

} // namespace gaucoll
