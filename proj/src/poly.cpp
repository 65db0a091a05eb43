#include "ich/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ich {

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::operator()(double r) const {
    double acc = 0.0;
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k) acc = acc * r + c_[k];
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Poly(std::move(d));
}

Poly Poly::antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<double> a(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / static_cast<double>(k + 1);
    return Poly(std::move(a));
}

Poly Poly::even_part() const {
    std::vector<double> e(c_.size(), 0.0);
    for (std::size_t k = 0; k < c_.size(); k += 2) e[k] = c_[k];
    return Poly(std::move(e));
}

Poly Poly::odd_part() const {
    std::vector<double> o(c_.size(), 0.0);
    for (std::size_t k = 1; k < c_.size(); k += 2) o[k] = c_[k];
    return Poly(std::move(o));
}

bool Poly::is_odd() const {
    for (std::size_t k = 0; k < c_.size(); k += 2)
        if (c_[k] != 0.0) return false;
    return true;
}

Poly Poly::operator*(double s) const {
    std::vector<double> c(c_);
    for (double& v : c) v *= s;
    return Poly(std::move(c));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff((int)k) + o.coeff((int)k);
    return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (o * -1.0); }

double Poly::root_bound() const {
    if (c_.size() <= 1) return 1.0;
    double lead = std::abs(c_.back());
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) m = std::max(m, std::abs(c_[k]) / lead);
    return 1.0 + m;
}

namespace {

double bisect_root(const Poly& p, double lo, double hi) {
    double flo = p(lo);
    if (flo == 0.0) return lo;
    double fhi = p(hi);
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = p(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

std::vector<double> Poly::real_roots() const {
    std::vector<double> roots;
    int deg = degree();
    if (deg <= 0) return roots; // constants (incl. zero poly): no isolated roots reported
    if (deg == 1) {
        roots.push_back(-c_[0] / c_[1]);
        return roots;
    }
    std::vector<double> crit = derivative().real_roots();
    double bound = root_bound();
    std::vector<double> knots;
    knots.push_back(-bound - 1.0);
    for (double c : crit)
        if (c > knots.back()) knots.push_back(c);
    if (bound + 1.0 > knots.back()) knots.push_back(bound + 1.0);
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        double a = knots[i], b = knots[i + 1];
        double fa = (*this)(a), fb = (*this)(b);
        if (fa == 0.0) {
            if (roots.empty() || std::abs(roots.back() - a) > 0.0) roots.push_back(a);
            continue;
        }
        if (fb == 0.0) continue; // picked up as the left end of the next bracket
        if ((fa < 0.0) != (fb < 0.0)) roots.push_back(bisect_root(*this, a, b));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

double Poly::global_min() const {
    if (c_.empty()) return 0.0;
    if (degree() == 0) return c_[0];
    if (degree() % 2 != 0 || leading() < 0.0)
        return -std::numeric_limits<double>::infinity();
    double best = (*this)(0.0);
    for (double r : derivative().real_roots()) best = std::min(best, (*this)(r));
    return best;
}

} // namespace ich
