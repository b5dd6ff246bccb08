#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fockse {

// Adaptive quadrature used as the independent numeric oracle for the
// closed-form pipelines (and by the few float-only observables).

template <class F>
double integrate_half_line(F&& f, double tol = 1e-12) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(std::forward<F>(f), tol);
}

template <class F>
double integrate_finite(F&& f, double a, double b, double tol = 1e-12) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(std::forward<F>(f), a, b,
                                                                         12, tol);
}

}  // namespace fockse
