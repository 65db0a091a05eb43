#include "ich/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ich {

namespace detail {

std::vector<double> synth_closed_1d(const SpectralField& u, const TrigTables& tab) {
    const int P = tab.P;
    const int n = u.n();
    std::vector<double> w(static_cast<std::size_t>(P) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        const double a = u.coeffs()[k - 1];
        if (a == 0.0) continue;
        const double* row = tab.sin_row(k);
        for (int i = 1; i <= P - 1; ++i) w[i] += a * row[i];
    }
    const double norm = std::sqrt(2.0 / kPi);
    for (double& v : w) v *= norm;
    return w; // endpoints stay exactly 0
}

std::vector<double> synth_closed_2d(const SpectralField& u, const TrigTables& tab) {
    const int P = tab.P;
    const int n = u.n();
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    std::vector<double> tmp(static_cast<std::size_t>(P + 1) * n, 0.0);
    for (int i = 1; i <= P - 1; ++i) {
        double* trow = tmp.data() + static_cast<std::size_t>(i) * n;
        for (int k1 = 1; k1 <= n; ++k1) {
            const double s = tab.sin_row(k1)[i];
            const double* arow = u.coeffs().data() + static_cast<std::size_t>(k1 - 1) * n;
            for (int k2 = 0; k2 < n; ++k2) trow[k2] += s * arow[k2];
        }
    }
    std::vector<double> w(stride * stride, 0.0);
    const double norm = 2.0 / kPi;
    for (int i = 1; i <= P - 1; ++i) {
        const double* trow = tmp.data() + static_cast<std::size_t>(i) * n;
        double* wrow = w.data() + static_cast<std::size_t>(i) * stride;
        for (int k2 = 1; k2 <= n; ++k2) {
            const double a = trow[k2 - 1];
            if (a == 0.0) continue;
            const double* row = tab.sin_row(k2);
            for (int j = 1; j <= P - 1; ++j) wrow[j] += a * row[j];
        }
        for (int j = 0; j <= P; ++j) wrow[j] *= norm;
    }
    return w;
}

std::vector<double> extract_interior_1d(const std::vector<double>& closed, int P) {
    return std::vector<double>(closed.begin() + 1, closed.begin() + P);
}

std::vector<double> extract_interior_2d(const std::vector<double>& closed, int P) {
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    std::vector<double> out(static_cast<std::size_t>(P - 1) * (P - 1));
    for (int i = 1; i <= P - 1; ++i)
        for (int j = 1; j <= P - 1; ++j)
            out[static_cast<std::size_t>(i - 1) * (P - 1) + (j - 1)] = closed[i * stride + j];
    return out;
}

std::vector<double> sine_analyze_2d(const TrigTables& tab, const std::vector<double>& interior, int maxdeg) {
    const int P = tab.P;
    const int M = P - 1;
    const double scale = 2.0 / P;
    // pass 1 along y
    std::vector<double> tmp(static_cast<std::size_t>(M) * (maxdeg + 1), 0.0);
    for (int i = 0; i < M; ++i) {
        const double* row = interior.data() + static_cast<std::size_t>(i) * M;
        double* trow = tmp.data() + static_cast<std::size_t>(i) * (maxdeg + 1);
        for (int m = 1; m <= maxdeg; ++m) {
            const double* srow = tab.sin_row(m);
            double acc = 0.0;
            for (int j = 1; j <= M; ++j) acc += row[j - 1] * srow[j];
            trow[m] = scale * acc;
        }
    }
    // pass 2 along x
    std::vector<double> beta(static_cast<std::size_t>(maxdeg + 1) * (maxdeg + 1), 0.0);
    for (int m1 = 1; m1 <= maxdeg; ++m1) {
        const double* srow = tab.sin_row(m1);
        double* brow = beta.data() + static_cast<std::size_t>(m1) * (maxdeg + 1);
        for (int m2 = 1; m2 <= maxdeg; ++m2) {
            double acc = 0.0;
            for (int i = 1; i <= M; ++i)
                acc += tmp[static_cast<std::size_t>(i - 1) * (maxdeg + 1) + m2] * srow[i];
            brow[m2] = scale * acc;
        }
    }
    return beta;
}

std::vector<double> cos_analyze_2d(const TrigTables& tab, const std::vector<double>& closed, int maxdeg) {
    const int P = tab.P;
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    // pass 1 along y (trapezoid weights)
    std::vector<double> tmp(stride * (maxdeg + 1), 0.0);
    for (int i = 0; i <= P; ++i) {
        const double* row = closed.data() + static_cast<std::size_t>(i) * stride;
        double* trow = tmp.data() + static_cast<std::size_t>(i) * (maxdeg + 1);
        for (int m = 0; m <= maxdeg; ++m) {
            const double* crow = tab.cos_row(m);
            double acc = 0.5 * row[0] * crow[0] + 0.5 * row[P] * crow[P];
            for (int j = 1; j <= P - 1; ++j) acc += row[j] * crow[j];
            trow[m] = acc * (m == 0 ? 1.0 : 2.0) / P;
        }
    }
    // pass 2 along x
    std::vector<double> alpha(static_cast<std::size_t>(maxdeg + 1) * (maxdeg + 1), 0.0);
    for (int m1 = 0; m1 <= maxdeg; ++m1) {
        const double* crow = tab.cos_row(m1);
        double* arow = alpha.data() + static_cast<std::size_t>(m1) * (maxdeg + 1);
        for (int m2 = 0; m2 <= maxdeg; ++m2) {
            double acc = 0.5 * tmp[0 * (maxdeg + 1) + m2] * crow[0] +
                         0.5 * tmp[static_cast<std::size_t>(P) * (maxdeg + 1) + m2] * crow[P];
            for (int i = 1; i <= P - 1; ++i)
                acc += tmp[static_cast<std::size_t>(i) * (maxdeg + 1) + m2] * crow[i];
            arow[m2] = acc * (m1 == 0 ? 1.0 : 2.0) / P;
        }
    }
    return alpha;
}

} // namespace detail

namespace {

void apply_poly_inplace(const Poly& phi, const std::vector<double>& in, std::vector<double>& out) {
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = phi(in[i]);
}

int composition_degree(const Poly& phi, int n) {
    return phi.degree() <= 0 ? 0 : phi.degree() * n;
}

double trapezoid_2d(const TrigTables& tab, const std::vector<double>& closed) {
    const int P = tab.P;
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    double acc = 0.0;
    for (int i = 0; i <= P; ++i) {
        const double* row = closed.data() + static_cast<std::size_t>(i) * stride;
        double rowsum = 0.5 * (row[0] + row[P]);
        for (int j = 1; j <= P - 1; ++j) rowsum += row[j];
        acc += (i == 0 || i == P) ? 0.5 * rowsum : rowsum;
    }
    const double h = tab.h();
    return acc * h * h;
}

} // namespace

double integral_of_composition(const SpectralField& u, const Poly& phi) {
    if (phi.is_zero()) return 0.0;
    const int n = u.n();
    const int dim = u.domain().dimension;
    if (phi.degree() == 0) return phi.coeff(0) * std::pow(kPi, dim);
    const int D = composition_degree(phi, n);
    const int P = std::max(D, n) + 1;
    auto tab = trig_tables(P, std::max(D, n));
    const Poly phi_e = phi.even_part();
    const Poly phi_o = phi.odd_part();
    double result = 0.0;
    if (dim == 1) {
        auto w = detail::synth_closed_1d(u, *tab);
        std::vector<double> h;
        if (!phi_e.is_zero()) {
            apply_poly_inplace(phi_e, w, h);
            result += trapezoid_closed(*tab, h);
        }
        if (!phi_o.is_zero()) {
            auto interior = detail::extract_interior_1d(w, P);
            apply_poly_inplace(phi_o, interior, h);
            auto beta = sine_analyze(*tab, h, D);
            for (int m = 1; m <= D; m += 2) result += beta[m] * sin_halfperiod_integral(m);
        }
    } else {
        auto w = detail::synth_closed_2d(u, *tab);
        std::vector<double> h;
        if (!phi_e.is_zero()) {
            apply_poly_inplace(phi_e, w, h);
            result += trapezoid_2d(*tab, h);
        }
        if (!phi_o.is_zero()) {
            auto interior = detail::extract_interior_2d(w, P);
            apply_poly_inplace(phi_o, interior, h);
            auto beta = detail::sine_analyze_2d(*tab, h, D);
            for (int m1 = 1; m1 <= D; m1 += 2)
                for (int m2 = 1; m2 <= D; m2 += 2)
                    result += beta[static_cast<std::size_t>(m1) * (D + 1) + m2] *
                              sin_halfperiod_integral(m1) * sin_halfperiod_integral(m2);
        }
    }
    return result;
}

SpectralField project_parity_samples(const DomainSpec& dom, const TrigTables& tab,
                                     const std::vector<double>* odd,
                                     const std::vector<double>* even, int D, int m) {
    SpectralField out(dom, m);
    const int P = tab.P;
    if (dom.dimension == 1) {
        if (odd != nullptr) {
            auto beta = sine_analyze(tab, *odd, m);
            const double norm = std::sqrt(kPi / 2.0);
            for (int k = 1; k <= m; ++k) out.coeffs()[k - 1] += norm * beta[k];
        }
        if (even != nullptr) {
            auto alpha = cos_analyze(tab, *even, D);
            const double norm = std::sqrt(2.0 / kPi);
            for (int k = 1; k <= m; ++k) {
                double acc = 0.0;
                for (int mm = (k % 2 == 0) ? 1 : 0; mm <= D; mm += 2)
                    acc += alpha[mm] * cos_sin_halfperiod_integral(mm, k);
                out.coeffs()[k - 1] += norm * acc;
            }
        }
        return out;
    }
    (void)P;
    if (odd != nullptr) {
        auto beta = detail::sine_analyze_2d(tab, *odd, m);
        const double norm = kPi / 2.0;
        for (int k1 = 1; k1 <= m; ++k1)
            for (int k2 = 1; k2 <= m; ++k2)
                out.coeffs()[static_cast<std::size_t>(k1 - 1) * m + (k2 - 1)] +=
                    norm * beta[static_cast<std::size_t>(k1) * (m + 1) + k2];
    }
    if (even != nullptr) {
        auto alpha = detail::cos_analyze_2d(tab, *even, D);
        // contract alpha with the per-axis cos-sin integrals
        std::vector<double> t2(static_cast<std::size_t>(D + 1) * m, 0.0);
        for (int m1 = 0; m1 <= D; ++m1) {
            const double* arow = alpha.data() + static_cast<std::size_t>(m1) * (D + 1);
            double* trow = t2.data() + static_cast<std::size_t>(m1) * m;
            for (int k2 = 1; k2 <= m; ++k2) {
                double acc = 0.0;
                for (int m2 = (k2 % 2 == 0) ? 1 : 0; m2 <= D; m2 += 2)
                    acc += arow[m2] * cos_sin_halfperiod_integral(m2, k2);
                trow[k2 - 1] = acc;
            }
        }
        const double norm = 2.0 / kPi;
        for (int k1 = 1; k1 <= m; ++k1) {
            for (int k2 = 1; k2 <= m; ++k2) {
                double acc = 0.0;
                for (int m1 = (k1 % 2 == 0) ? 1 : 0; m1 <= D; m1 += 2)
                    acc += t2[static_cast<std::size_t>(m1) * m + (k2 - 1)] *
                           cos_sin_halfperiod_integral(m1, k1);
                out.coeffs()[static_cast<std::size_t>(k1 - 1) * m + (k2 - 1)] += norm * acc;
            }
        }
    }
    return out;
}

SpectralField project_composition(const SpectralField& u, const Poly& phi, int m) {
    const int n = u.n();
    if (m > n) throw std::domain_error("project_composition: cutoff exceeds field resolution");
    if (phi.is_zero()) return SpectralField(u.domain(), m);
    const int dim = u.domain().dimension;
    const int D = composition_degree(phi, n);
    const int maxdeg = std::max({D, n, m});
    const int P = maxdeg + 1;
    auto tab = trig_tables(P, maxdeg);
    const Poly phi_e = phi.even_part();
    const Poly phi_o = phi.odd_part();
    auto w = (dim == 1) ? detail::synth_closed_1d(u, *tab) : detail::synth_closed_2d(u, *tab);
    std::vector<double> ho, he;
    const std::vector<double>* odd = nullptr;
    const std::vector<double>* even = nullptr;
    if (!phi_o.is_zero()) {
        auto interior = (dim == 1) ? detail::extract_interior_1d(w, P)
                                   : detail::extract_interior_2d(w, P);
        apply_poly_inplace(phi_o, interior, ho);
        odd = &ho;
    }
    if (!phi_e.is_zero()) {
        apply_poly_inplace(phi_e, w, he);
        even = &he;
    }
    return project_parity_samples(u.domain(), *tab, odd, even, D, m);
}

namespace {

// derivative samples on the closed grid: d/dx in 1D; (ux, uy) in 2D
std::vector<double> synth_deriv_closed_1d(const SpectralField& u, const TrigTables& tab) {
    const int P = tab.P;
    const int n = u.n();
    std::vector<double> w(static_cast<std::size_t>(P) + 1, 0.0);
    for (int k = 1; k <= n; ++k) {
        const double a = u.coeffs()[k - 1] * k;
        if (a == 0.0) continue;
        const double* row = tab.cos_row(k);
        for (int i = 0; i <= P; ++i) w[i] += a * row[i];
    }
    const double norm = std::sqrt(2.0 / kPi);
    for (double& v : w) v *= norm;
    return w;
}

// 2D partials; axis = 0 for d/dx, 1 for d/dy
std::vector<double> synth_partial_closed_2d(const SpectralField& u, const TrigTables& tab, int axis) {
    const int P = tab.P;
    const int n = u.n();
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    std::vector<double> tmp(stride * n, 0.0);
    for (int i = 0; i <= P; ++i) {
        double* trow = tmp.data() + static_cast<std::size_t>(i) * n;
        for (int k1 = 1; k1 <= n; ++k1) {
            const double s = (axis == 0) ? tab.cos_row(k1)[i] * k1 : tab.sin_row(k1)[i];
            if (s == 0.0) continue;
            const double* arow = u.coeffs().data() + static_cast<std::size_t>(k1 - 1) * n;
            for (int k2 = 0; k2 < n; ++k2) trow[k2] += s * arow[k2];
        }
    }
    std::vector<double> w(stride * stride, 0.0);
    const double norm = 2.0 / kPi;
    for (int i = 0; i <= P; ++i) {
        const double* trow = tmp.data() + static_cast<std::size_t>(i) * n;
        double* wrow = w.data() + static_cast<std::size_t>(i) * stride;
        for (int k2 = 1; k2 <= n; ++k2) {
            const double a = trow[k2 - 1];
            if (a == 0.0) continue;
            const double s = static_cast<double>(k2);
            const double* row = (axis == 0) ? tab.sin_row(k2) : tab.cos_row(k2);
            if (axis == 0) {
                for (int j = 0; j <= P; ++j) wrow[j] += a * row[j];
            } else {
                for (int j = 0; j <= P; ++j) wrow[j] += a * s * row[j];
            }
        }
        for (int j = 0; j <= P; ++j) wrow[j] *= norm;
    }
    return w;
}

} // namespace

double gradient_weighted_integral(const SpectralField& u, const Poly& phi) {
    if (phi.is_zero()) return 0.0;
    const int n = u.n();
    const int dim = u.domain().dimension;
    const int D = composition_degree(phi, n) + 2 * n;
    const int P = D + 1;
    auto tab = trig_tables(P, D);
    const Poly phi_e = phi.even_part();
    const Poly phi_o = phi.odd_part();
    double result = 0.0;
    if (dim == 1) {
        auto w = detail::synth_closed_1d(u, *tab);
        auto dw = synth_deriv_closed_1d(u, *tab);
        std::vector<double> h(w.size());
        if (!phi_e.is_zero()) {
            for (std::size_t i = 0; i < w.size(); ++i) h[i] = phi_e(w[i]) * dw[i] * dw[i];
            result += trapezoid_closed(*tab, h);
        }
        if (!phi_o.is_zero()) {
            std::vector<double> hi(static_cast<std::size_t>(P) - 1);
            for (int i = 1; i <= P - 1; ++i) hi[i - 1] = phi_o(w[i]) * dw[i] * dw[i];
            auto beta = sine_analyze(*tab, hi, D);
            for (int m = 1; m <= D; m += 2) result += beta[m] * sin_halfperiod_integral(m);
        }
    } else {
        auto w = detail::synth_closed_2d(u, *tab);
        auto ux = synth_partial_closed_2d(u, *tab, 0);
        auto uy = synth_partial_closed_2d(u, *tab, 1);
        std::vector<double> h(w.size());
        if (!phi_e.is_zero()) {
            for (std::size_t i = 0; i < w.size(); ++i)
                h[i] = phi_e(w[i]) * (ux[i] * ux[i] + uy[i] * uy[i]);
            result += trapezoid_2d(*tab, h);
        }
        if (!phi_o.is_zero()) {
            const std::size_t stride = static_cast<std::size_t>(P) + 1;
            std::vector<double> hi(static_cast<std::size_t>(P - 1) * (P - 1));
            for (int i = 1; i <= P - 1; ++i)
                for (int j = 1; j <= P - 1; ++j) {
                    std::size_t c = static_cast<std::size_t>(i) * stride + j;
                    hi[static_cast<std::size_t>(i - 1) * (P - 1) + (j - 1)] =
                        phi_o(w[c]) * (ux[c] * ux[c] + uy[c] * uy[c]);
                }
            auto beta = detail::sine_analyze_2d(*tab, hi, D);
            for (int m1 = 1; m1 <= D; m1 += 2)
                for (int m2 = 1; m2 <= D; m2 += 2)
                    result += beta[static_cast<std::size_t>(m1) * (D + 1) + m2] *
                              sin_halfperiod_integral(m1) * sin_halfperiod_integral(m2);
        }
    }
    return result;
}

double lp_norm(const SpectralField& u, double q) {
    if (q <= 0.0) throw std::domain_error("lp_norm: q must be positive");
    const double qr = std::round(q);
    const bool even_int = std::abs(q - qr) < 1e-12 && static_cast<long long>(qr) % 2 == 0;
    if (even_int) {
        std::vector<double> c(static_cast<std::size_t>(qr) + 1, 0.0);
        c.back() = 1.0;
        double integral = integral_of_composition(u, Poly(std::move(c)));
        return std::pow(std::max(integral, 0.0), 1.0 / q);
    }
    const int dim = u.domain().dimension;
    if (dim == 1) {
        const int M = 16384; // Simpson intervals
        auto tab = trig_tables(M, u.n());
        auto w = detail::synth_closed_1d(u, *tab);
        const double h = kPi / M;
        double acc = 0.0;
        for (int i = 0; i <= M; ++i) {
            double wgt = (i == 0 || i == M) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += wgt * std::pow(std::abs(w[i]), q);
        }
        return std::pow(acc * h / 3.0, 1.0 / q);
    }
    const int M = 512;
    auto tab = trig_tables(M, u.n());
    auto w = detail::synth_closed_2d(u, *tab);
    const double h = kPi / M;
    const std::size_t stride = static_cast<std::size_t>(M) + 1;
    double acc = 0.0;
    for (int i = 0; i <= M; ++i) {
        double wi = (i == 0 || i == M) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double* row = w.data() + static_cast<std::size_t>(i) * stride;
        double rowacc = 0.0;
        for (int j = 0; j <= M; ++j) {
            double wj = (j == 0 || j == M) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            rowacc += wj * std::pow(std::abs(row[j]), q);
        }
        acc += wi * rowacc;
    }
    return std::pow(acc * h * h / 9.0, 1.0 / q);
}

double linf_norm(const SpectralField& u, int oversample) {
    int P = std::max(oversample * u.n(), 32) + 1;
    P += P % 2; // keep the midpoint on the grid
    auto tab = trig_tables(P, u.n());
    double best = 0.0;
    if (u.domain().dimension == 1) {
        auto w = detail::synth_closed_1d(u, *tab);
        for (double v : w) best = std::max(best, std::abs(v));
    } else {
        auto w = detail::synth_closed_2d(u, *tab);
        for (double v : w) best = std::max(best, std::abs(v));
    }
    return best;
}

} // namespace ich
