#include "qd/complex_poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace qd {

ComplexPolynomial::ComplexPolynomial(std::vector<Complex> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex(0.0));
    // strip trailing zeros so degree is meaningful
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) == 0.0)
        coeffs_.pop_back();
}

ComplexPolynomial ComplexPolynomial::from_roots(
    const std::vector<Complex>& rts, Complex leading) {
    std::vector<Complex> c{leading};
    for (Complex r : rts) {
        c.push_back(Complex(0.0));
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] = c[i - 1] - r * c[i];
        c[0] = -r * c[0];
    }
    return ComplexPolynomial(std::move(c));
}

ComplexPolynomial ComplexPolynomial::quartic_family(Complex a) {
    return from_roots({Complex(-1.0), Complex(1.0), a, std::conj(a)});
}

Complex ComplexPolynomial::operator()(Complex z) const {
    Complex acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

void ComplexPolynomial::eval2(Complex z, Complex& p, Complex& dp) const {
    p = Complex(0.0);
    dp = Complex(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

ComplexPolynomial ComplexPolynomial::derivative() const {
    if (degree() == 0) return ComplexPolynomial({Complex(0.0)});
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * coeffs_[k];
    return ComplexPolynomial(std::move(d));
}

ComplexPolynomial ComplexPolynomial::operator*(
    const ComplexPolynomial& other) const {
    std::vector<Complex> c(coeffs_.size() + other.coeffs_.size() - 1,
                           Complex(0.0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * other.coeffs_[j];
    return ComplexPolynomial(std::move(c));
}

bool ComplexPolynomial::is_real(double tol) const {
    for (Complex c : coeffs_)
        if (std::abs(c.imag()) > tol * (1.0 + std::abs(c))) return false;
    return true;
}

bool ComplexPolynomial::is_monic(double tol) const {
    return std::abs(leading() - Complex(1.0)) < tol;
}

std::vector<Complex> roots(const ComplexPolynomial& p, const Tolerances& tol) {
    const int n = p.degree();
    if (n < 1) throw PolyError("constant polynomial");
    if (n == 1)
        return {-p.coeffs()[0] / p.coeffs()[1]};

    // rescale z = s*u so the companion matrix and the Aberth evaluations run
    // on balanced coefficients (s ~ geometric mean of the root moduli)
    const Complex lead = p.coeffs()[n];
    double s = 1.0;
    if (std::abs(p.coeffs()[0]) > 0.0)
        s = std::pow(std::abs(p.coeffs()[0] / lead), 1.0 / n);
    if (!(s > 1e-150) || !(s < 1e150)) s = 1.0;
    std::vector<Complex> sc(n + 1);
    double pw = 1.0;
    for (int k = 0; k <= n; ++k) {
        sc[k] = p.coeffs()[k] * pw / (lead * std::pow(s, n));
        pw *= s;
    }
    const ComplexPolynomial q(sc);

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -q.coeffs()[i] / q.leading();
    for (int i = 1; i < n; ++i) comp(i, i - 1) = Complex(1.0);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> out(n);
    for (int i = 0; i < n; ++i) out[i] = es.eigenvalues()(i);

    // Aberth-Ehrlich refinement seeded by the companion eigenvalues; plain
    // per-root Newton stalls on badly scaled high-degree coefficients
    for (int sweep = 0; sweep < 100; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex v, dv;
            q.eval2(out[i], v, dv);
            if (v == Complex(0.0)) continue;
            const Complex newton = (std::abs(dv) > 0.0) ? v / dv : Complex(0.0);
            Complex repulse(0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const Complex d = out[i] - out[j];
                if (std::abs(d) > 1e-300) repulse += 1.0 / d;
            }
            const Complex denom = 1.0 - newton * repulse;
            const Complex w =
                std::abs(denom) > 1e-12 ? newton / denom : newton;
            if (std::abs(w) < 2.0) out[i] -= w;
            worst = std::max(worst, std::abs(w) / (1.0 + std::abs(out[i])));
        }
        if (worst < 1e-15) break;
    }
    for (Complex& r : out) r *= s;
    (void)tol;
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<std::pair<Complex, int>> cluster_roots(
    const std::vector<Complex>& rts, double gap) {
    std::vector<std::pair<Complex, int>> out;
    std::vector<bool> used(rts.size(), false);
    for (std::size_t i = 0; i < rts.size(); ++i) {
        if (used[i]) continue;
        Complex sum = rts[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < rts.size(); ++j) {
            if (!used[j] && std::abs(rts[j] - rts[i]) < gap) {
                sum += rts[j];
                ++count;
                used[j] = true;
            }
        }
        out.emplace_back(sum / static_cast<double>(count), count);
    }
    return out;
}

}  // namespace qd
