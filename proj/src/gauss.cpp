#include "manikern/gauss.hpp"
#include "manikern/errors.hpp"
#include "manikern/specfun.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace manikern {

// Golub-Welsch: nodes are the eigenvalues of the symmetrized Jacobi matrix,
// weights come from the first component of each eigenvector.
Rule1D gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1) throw domain_error("gauss_jacobi: requires n >= 1");
    if (alpha <= -1.0 || beta <= -1.0) throw domain_error("gauss_jacobi: requires alpha, beta > -1");

    const double ab = alpha + beta;
    Eigen::VectorXd diag(n), subdiag(n > 1 ? n - 1 : 1);
    diag(0) = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag(k) = (beta * beta - alpha * alpha) / den;
    }
    for (int k = 1; k < n; ++k) {
        double bk;
        if (k == 1) {
            bk = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                 ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            bk = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                 ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
        }
        subdiag(k - 1) = std::sqrt(bk);
    }

    const double mu0 = std::pow(2.0, ab + 1.0) * gamma_fn(alpha + 1.0) * gamma_fn(beta + 1.0) /
                       gamma_fn(ab + 2.0);

    if (n == 1) {
        return Rule1D{{diag(0)}, {mu0}};
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
        throw singular_error("gauss_jacobi: tridiagonal eigensolve failed");

    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()(i);
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

Rule1D gauss_legendre(int n) {
    return gauss_jacobi(n, 0.0, 0.0);
}

} // namespace manikern
