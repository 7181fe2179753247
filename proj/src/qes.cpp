#include "qd/qes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qd {

DenseMatrix operator_matrix(const SpectralProblem& prob) {
    if (prob.m < 1) throw std::invalid_argument("m must be positive");
    const int m = prob.m;
    const double scaled_b = 2.0 * prob.b * std::pow(m, 2.0 / 3.0);
    DenseMatrix A(m, std::vector<Complex>(m, Complex(0.0)));
    for (int k = 0; k < m; ++k) {
        if (k >= 2) A[k - 2][k] += Complex(k * (k - 1.0));
        if (k >= 1) A[k - 1][k] += Complex(scaled_b * k);
        if (k + 1 < m) A[k + 1][k] += Complex(2.0 * (m - 1.0 - k));
    }
    return A;
}

std::vector<EigenPair> eigenpairs(const SpectralProblem& prob) {
    const int m = prob.m;
    const DenseMatrix A = operator_matrix(prob);
    Eigen::MatrixXcd M(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) M(r, c) = A[r][c];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigen decomposition failed");

    std::vector<EigenPair> pairs(m);
    for (int j = 0; j < m; ++j) {
        EigenPair& p = pairs[j];
        p.beta = solver.eigenvalues()(j);
        Eigen::VectorXcd v = solver.eigenvectors().col(j);
        // Rayleigh-quotient iteration: the matrix is far from normal, so the
        // Schur-derived vectors need sharpening
        double best_res = (M * v - p.beta * v).norm() / v.norm();
        Eigen::VectorXcd best_v = v;
        Complex best_beta = p.beta;
        for (int it = 0; it < 4 && best_res > 1e-14; ++it) {
            const Eigen::MatrixXcd shifted =
                M - p.beta * Eigen::MatrixXcd::Identity(m, m);
            Eigen::VectorXcd w = shifted.fullPivLu().solve(v);
            const double wn = w.norm();
            if (!(wn > 0.0) || !std::isfinite(wn)) break;
            v = w / wn;
            p.beta = (v.adjoint() * M * v)(0);
            const double res = (M * v - p.beta * v).norm();
            if (res < best_res) {
                best_res = res;
                best_v = v;
                best_beta = p.beta;
            }
        }
        v = best_v;
        p.beta = best_beta;
        // deg p_m = m-1 exactly: a lower degree would be mapped out of its
        // own span by the 2(m-1-k) z^{k+1} band
        v /= v(m - 1);
        p.coeffs.assign(v.data(), v.data() + m);
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const EigenPair& a, const EigenPair& b) {
                  if (std::abs(a.beta.real() - b.beta.real()) > 1e-9)
                      return a.beta.real() > b.beta.real();
                  return a.beta.imag() < b.beta.imag();
              });
    return pairs;
}

EigenPair select_state(const std::vector<EigenPair>& pairs, SelectRule rule,
                       int index) {
    if (pairs.empty()) throw std::invalid_argument("no eigenpairs");
    switch (rule) {
        case SelectRule::MaxReal:
            return *std::max_element(pairs.begin(), pairs.end(),
                                     [](const EigenPair& a,
                                        const EigenPair& b) {
                                         return a.beta.real() < b.beta.real();
                                     });
        case SelectRule::MinReal:
            return *std::min_element(pairs.begin(), pairs.end(),
                                     [](const EigenPair& a,
                                        const EigenPair& b) {
                                         return a.beta.real() < b.beta.real();
                                     });
        case SelectRule::MaxModulus:
            return *std::max_element(pairs.begin(), pairs.end(),
                                     [](const EigenPair& a,
                                        const EigenPair& b) {
                                         return std::abs(a.beta) <
                                                std::abs(b.beta);
                                     });
        case SelectRule::Index:
            if (index < 0 || index >= static_cast<int>(pairs.size()))
                throw std::out_of_range("eigenpair index out of range");
            return pairs[index];
    }
    throw std::invalid_argument("unknown selection rule");
}

namespace {

// The roots of p_m obey the Heine-Stieltjes system
//   sum_{j != i} 1/(r_i - r_j) = r_i^2 - b m^{2/3}
// (evaluate the differential equation at a root of p_m). Newton on this
// system repairs the severe conditioning loss of the monomial coefficients:
// the outer roots of the companion-matrix seeds can be off by O(1) at
// m ~ 40. Full Newton steps overshoot from such seeds, so each step is
// clamped to a fraction of the nearest-neighbour gap and backtracked until
// the residual norm decreases.
double bethe_residual(const std::vector<Complex>& r, double bm,
                      Eigen::VectorXcd& F) {
    const int n = static_cast<int>(r.size());
    for (int i = 0; i < n; ++i) {
        Complex f = -r[i] * r[i] + bm;
        for (int j = 0; j < n; ++j)
            if (j != i) f += 1.0 / (r[i] - r[j]);
        F(i) = f;
    }
    return F.norm();
}

void refine_roots(std::vector<Complex>& r, double bm) {
    const int n = static_cast<int>(r.size());
    if (n == 0) return;
    Eigen::MatrixXcd J(n, n);
    Eigen::VectorXcd F(n), Ftrial(n);
    std::vector<Complex> trial(n);
    double fn = bethe_residual(r, bm, F);
    for (int it = 0; it < 200 && fn > 1e-12 * n; ++it) {
        for (int i = 0; i < n; ++i) {
            Complex dii = -2.0 * r[i];
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex inv = 1.0 / (r[i] - r[j]);
                dii -= inv * inv;
                J(i, j) = inv * inv;
            }
            J(i, i) = dii;
        }
        const Eigen::VectorXcd step = J.fullPivLu().solve(-F);
        double t = 1.0;
        for (int i = 0; i < n; ++i) {
            double gap = 1e300;
            for (int j = 0; j < n; ++j)
                if (j != i) gap = std::min(gap, std::abs(r[i] - r[j]));
            const double s = std::abs(step(i));
            if (s > 0.3 * gap) t = std::min(t, 0.3 * gap / s);
        }
        bool accepted = false;
        for (int bt = 0; bt < 30; ++bt) {
            for (int i = 0; i < n; ++i) trial[i] = r[i] + t * step(i);
            const double ft = bethe_residual(trial, bm, Ftrial);
            if (ft < fn) {
                r = trial;
                F = Ftrial;
                fn = ft;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
    }
}

}  // namespace

RootMeasure rescaled_measure(const SpectralProblem& prob,
                             const EigenPair& pair, const Tolerances& tol) {
    RootMeasure mu;
    mu.weight = 1.0 / prob.m;
    ComplexPolynomial p(pair.coeffs);
    if (p.degree() < 1) return mu;
    std::vector<Complex> r = roots(p, tol);
    refine_roots(r, prob.b * std::pow(prob.m, 2.0 / 3.0));
    const double scale = std::pow(prob.m, 1.0 / 3.0);
    for (Complex root : r) mu.points.push_back(root / scale);
    return mu;
}

RiccatiResidual riccati_residual(const SpectralProblem& prob,
                                 const EigenPair& pair, Complex z,
                                 const Tolerances& tol) {
    const RootMeasure mu = rescaled_measure(prob, pair, tol);
    double scale = 1.0;
    for (Complex r : mu.points) scale = std::max(scale, std::abs(r));
    for (Complex r : mu.points)
        if (std::abs(z - r) < 1e-6 * scale)
            throw std::invalid_argument("pole proximity");
    const double m = prob.m;
    Complex rho(0.0), drho(0.0);
    for (Complex r : mu.points) {
        const Complex inv = 1.0 / (z - r);
        rho += inv;
        drho -= inv * inv;
    }
    rho /= m;
    drho /= m;
    const Complex beta_scaled = pair.beta / std::pow(m, 4.0 / 3.0);
    const Complex common =
        rho * rho + drho / m - 2.0 * (z * z - prob.b) * rho - beta_scaled;
    RiccatiResidual res;
    res.exact = common + 2.0 * (m - 1.0) * z / m;
    res.published = common + 2.0 * z;
    return res;
}

std::vector<Complex> beta_limit_estimate(double b, const std::vector<int>& ms,
                                         SelectRule rule) {
    std::vector<Complex> out;
    out.reserve(ms.size());
    for (int m : ms) {
        const SpectralProblem prob{m, b};
        const EigenPair pair = select_state(eigenpairs(prob), rule);
        out.push_back(pair.beta / std::pow(m, 4.0 / 3.0));
    }
    return out;
}

}  // namespace qd
