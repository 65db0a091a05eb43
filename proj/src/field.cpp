#include "ich/field.hpp"

#include <cmath>
#include <stdexcept>

#include "ich/transforms.hpp"

namespace ich {

SpectralField::SpectralField(DomainSpec dom, int n) : dom_(dom), n_(n) {
    if (n < 1) throw std::domain_error("SpectralField: cutoff must be >= 1");
    c_.assign(dom.dimension == 1 ? static_cast<std::size_t>(n)
                                 : static_cast<std::size_t>(n) * n,
              0.0);
}

SpectralField SpectralField::basis(DomainSpec dom, int n, ModeIndex idx, double amplitude) {
    SpectralField f(dom, n);
    f.set_coeff(idx, amplitude);
    return f;
}

std::size_t SpectralField::flat(ModeIndex idx) const {
    if (dom_.dimension == 1) {
        if (idx.i < 1 || idx.i > n_ || idx.j != 0) throw std::domain_error("mode index out of range");
        return static_cast<std::size_t>(idx.i - 1);
    }
    if (idx.i < 1 || idx.i > n_ || idx.j < 1 || idx.j > n_)
        throw std::domain_error("mode index out of range");
    return static_cast<std::size_t>(idx.i - 1) * n_ + (idx.j - 1);
}

double SpectralField::eigenvalue_flat(std::size_t k) const {
    if (dom_.dimension == 1) {
        double i = static_cast<double>(k + 1);
        return i * i;
    }
    double i = static_cast<double>(k / n_ + 1);
    double j = static_cast<double>(k % n_ + 1);
    return i * i + j * j;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!same_layout(o)) throw std::domain_error("field layout mismatch");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!same_layout(o)) throw std::domain_error("field layout mismatch");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

SpectralField apply_power(const SpectralField& f, double s) {
    SpectralField out = f;
    if (s == 0.0) return out;
    auto& c = out.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::pow(f.eigenvalue_flat(k), s);
    return out;
}

double sobolev_norm(const SpectralField& f, double s) {
    const auto& c = f.coeffs();
    double acc = 0.0;
    if (s == 0.0) {
        for (double v : c) acc += v * v;
    } else {
        for (std::size_t k = 0; k < c.size(); ++k)
            acc += std::pow(f.eigenvalue_flat(k), s) * c[k] * c[k];
    }
    return std::sqrt(acc);
}

SpectralField project(const SpectralField& f, int m) {
    if (m > f.n()) throw std::domain_error("project: cutoff exceeds field resolution");
    SpectralField out = f;
    auto& c = out.coeffs();
    const int n = f.n();
    if (f.domain().dimension == 1) {
        for (int i = m; i < n; ++i) c[i] = 0.0;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i >= m || j >= m) c[static_cast<std::size_t>(i) * n + j] = 0.0;
    }
    return out;
}

double inner(const SpectralField& a, const SpectralField& b) {
    if (!a.same_layout(b)) throw std::domain_error("field layout mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += a.coeffs()[k] * b.coeffs()[k];
    return acc;
}

double inner_power(const SpectralField& a, const SpectralField& b, double s) {
    if (!a.same_layout(b)) throw std::domain_error("field layout mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        acc += std::pow(a.eigenvalue_flat(k), s) * a.coeffs()[k] * b.coeffs()[k];
    return acc;
}

SpectralField with_cutoff(const SpectralField& f, int new_n) {
    if (new_n == f.n()) return f;
    SpectralField out(f.domain(), new_n);
    const int keep = std::min(new_n, f.n());
    if (f.domain().dimension == 1) {
        for (int i = 0; i < keep; ++i) out.coeffs()[i] = f.coeffs()[i];
    } else {
        for (int i = 0; i < keep; ++i)
            for (int j = 0; j < keep; ++j)
                out.coeffs()[static_cast<std::size_t>(i) * new_n + j] =
                    f.coeffs()[static_cast<std::size_t>(i) * f.n() + j];
    }
    return out;
}

GridValues to_grid(const SpectralField& f, int oversample) {
    if (oversample < 1) throw std::domain_error("to_grid: oversample must be >= 1");
    const int n = f.n();
    const int N = oversample * n;
    const int P = N + 1;
    auto tab = trig_tables(P, n);
    GridValues g;
    g.domain = f.domain();
    g.n = n;
    g.points = N;
    if (f.domain().dimension == 1) {
        const double norm = std::sqrt(2.0 / kPi);
        g.values.assign(N, 0.0);
        for (int k = 1; k <= n; ++k) {
            const double a = f.coeffs()[k - 1];
            if (a == 0.0) continue;
            const double* row = tab->sin_row(k);
            for (int i = 1; i <= N; ++i) g.values[i - 1] += a * row[i];
        }
        for (double& v : g.values) v *= norm;
    } else {
        const double norm = 2.0 / kPi;
        // pass 1: contract the x-modes, pass 2: the y-modes
        std::vector<double> tmp(static_cast<std::size_t>(N) * n, 0.0);
        for (int i = 1; i <= N; ++i) {
            for (int k1 = 1; k1 <= n; ++k1) {
                const double s = tab->sin_row(k1)[i];
                if (s == 0.0) continue;
                const double* arow = f.coeffs().data() + static_cast<std::size_t>(k1 - 1) * n;
                double* trow = tmp.data() + static_cast<std::size_t>(i - 1) * n;
                for (int k2 = 0; k2 < n; ++k2) trow[k2] += s * arow[k2];
            }
        }
        g.values.assign(static_cast<std::size_t>(N) * N, 0.0);
        for (int i = 1; i <= N; ++i) {
            const double* trow = tmp.data() + static_cast<std::size_t>(i - 1) * n;
            double* vrow = g.values.data() + static_cast<std::size_t>(i - 1) * N;
            for (int k2 = 1; k2 <= n; ++k2) {
                const double a = trow[k2 - 1];
                if (a == 0.0) continue;
                const double* row = tab->sin_row(k2);
                for (int j = 1; j <= N; ++j) vrow[j - 1] += a * row[j];
            }
            for (int j = 0; j < N; ++j) vrow[j] *= norm;
        }
    }
    return g;
}

SpectralField from_grid(const GridValues& g) {
    const int n = g.n;
    const int N = g.points;
    if (N < n) throw std::domain_error("from_grid: grid too coarse for cutoff");
    if (g.domain.dimension == 1 && g.values.size() != static_cast<std::size_t>(N))
        throw std::domain_error("from_grid: grid size mismatch");
    if (g.domain.dimension == 2 && g.values.size() != static_cast<std::size_t>(N) * N)
        throw std::domain_error("from_grid: grid size mismatch");
    const int P = N + 1;
    auto tab = trig_tables(P, n);
    SpectralField f(g.domain, n);
    if (g.domain.dimension == 1) {
        auto beta = sine_analyze(*tab, g.values, n);
        const double norm = std::sqrt(kPi / 2.0);
        for (int k = 1; k <= n; ++k) f.coeffs()[k - 1] = norm * beta[k];
    } else {
        const double scale = 2.0 / P;
        std::vector<double> tmp(static_cast<std::size_t>(n) * N, 0.0);
        for (int k1 = 1; k1 <= n; ++k1) {
            const double* row = tab->sin_row(k1);
            double* trow = tmp.data() + static_cast<std::size_t>(k1 - 1) * N;
            for (int j = 0; j < N; ++j) {
                double acc = 0.0;
                for (int i = 1; i <= N; ++i)
                    acc += g.values[static_cast<std::size_t>(i - 1) * N + j] * row[i];
                trow[j] = scale * acc;
            }
        }
        const double norm = kPi / 2.0;
        for (int k1 = 1; k1 <= n; ++k1) {
            const double* trow = tmp.data() + static_cast<std::size_t>(k1 - 1) * N;
            for (int k2 = 1; k2 <= n; ++k2) {
                const double* row = tab->sin_row(k2);
                double acc = 0.0;
                for (int j = 1; j <= N; ++j) acc += trow[j - 1] * row[j];
                f.coeffs()[static_cast<std::size_t>(k1 - 1) * n + (k2 - 1)] = norm * scale * acc;
            }
        }
    }
    return f;
}

} // namespace ich
