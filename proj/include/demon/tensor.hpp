#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "demon/complex_matrix.hpp"
#include "demon/layout.hpp"
#include "demon/tolerances.hpp"

namespace demon {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial trace over every factor not listed in `keep`. The result's factor
// order is the layout order restricted to `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                            std::span<const std::string> keep);
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemLayout& layout,
                                   std::initializer_list<std::string> keep) {
    return partial_trace(m, layout, std::span<const std::string>(keep.begin(), keep.size()));
}

// Lift an operator acting on the named factors (listed in layout order) to
// the full register, tensoring identity everywhere else.
ComplexMatrix embed(const ComplexMatrix& op, const SubsystemLayout& layout,
                    std::span<const std::string> on);
inline ComplexMatrix embed(const ComplexMatrix& op, const SubsystemLayout& layout,
                           std::initializer_list<std::string> on) {
    return embed(op, layout, std::span<const std::string>(on.begin(), on.size()));
}

// (<ket| x I) m (|ket> x I) on the named factor: the unnormalized operator
// left on the remaining factors after projecting one factor onto `ket`.
ComplexMatrix contract_factor(const ComplexMatrix& m, const SubsystemLayout& layout,
                              const std::string& factor, const ComplexMatrix& ket);

struct EigResult {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // column j pairs with values[j]
};

// Eigendecomposition of a Hermitian matrix. The input is checked against
// `tolerance` and symmetrized before the solve.
EigResult herm_eig(const ComplexMatrix& h, double tolerance = tol::hermitian);
std::vector<double> herm_eigenvalues(const ComplexMatrix& h, double tolerance = tol::hermitian);

// V f(diag) V^dagger for a Hermitian input.
ComplexMatrix herm_func(const ComplexMatrix& h, const std::function<cplx(double)>& f,
                        double tolerance = tol::hermitian);

bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::hermitian);
bool is_unitary(const ComplexMatrix& m, double tolerance = tol::unitary);
bool is_psd(const ComplexMatrix& m, double tolerance = tol::psd_floor);

} // namespace demon
