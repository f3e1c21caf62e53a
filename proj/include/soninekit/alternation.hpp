#ifndef SONINEKIT_ALTERNATION_HPP
#define SONINEKIT_ALTERNATION_HPP

#include <vector>

namespace soninekit {

/// Detected sign-pattern violations of a divided-difference table.
struct AlternationViolation {
    bool found = false;
    double worst = 0.0;          // normalized worst violation across all orders
    double worst_location = 0.0; // abscissa of the worst violation
    int worst_order = -1;
    double first_location = 0.0; // smallest abscissa at the lowest violating order
    int first_order = -1;
    std::vector<double> per_order_worst;    // size max_order + 1
    std::vector<double> per_order_location; // abscissa of each order's worst
};

/// Checks the finite necessary condition for complete monotonicity of
/// samples ys on strictly increasing abscissas xs: divided differences of
/// order n = 0..max_order must satisfy (-1)^n dd >= -tol * scale_n, where
/// scale_n is the largest |dd| of that order. Returns the violations found.
AlternationViolation check_alternating_differences(const std::vector<double>& xs,
                                                   const std::vector<double>& ys,
                                                   int max_order, double tol);

} // namespace soninekit

#endif
