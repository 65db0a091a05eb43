#include "ich/transforms.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace ich {

namespace {

std::shared_ptr<const TrigTables> build_tables(int P, int maxdeg) {
    auto t = std::make_shared<TrigTables>();
    t->P = P;
    t->maxdeg = maxdeg;
    const std::size_t stride = static_cast<std::size_t>(P) + 1;
    t->sin_tab.assign(static_cast<std::size_t>(maxdeg + 1) * stride, 0.0);
    t->cos_tab.assign(static_cast<std::size_t>(maxdeg + 1) * stride, 0.0);
    const double h = kPi / P;
    for (int m = 0; m <= maxdeg; ++m) {
        double* srow = t->sin_tab.data() + m * stride;
        double* crow = t->cos_tab.data() + m * stride;
        for (int i = 0; i <= P; ++i) {
            srow[i] = std::sin(m * h * i);
            crow[i] = std::cos(m * h * i);
        }
    }
    return t;
}

} // namespace

std::shared_ptr<const TrigTables> trig_tables(int P, int maxdeg) {
    thread_local std::map<std::pair<int, int>, std::shared_ptr<const TrigTables>> cache;
    auto key = std::make_pair(P, maxdeg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (cache.size() > 24) cache.clear();
    auto t = build_tables(P, maxdeg);
    cache.emplace(key, t);
    return t;
}

std::vector<double> sine_analyze(const TrigTables& t, const std::vector<double>& interior, int maxdeg) {
    const int P = t.P;
    std::vector<double> beta(static_cast<std::size_t>(maxdeg) + 1, 0.0);
    const double scale = 2.0 / P;
    for (int m = 1; m <= maxdeg; ++m) {
        const double* row = t.sin_row(m);
        double acc = 0.0;
        for (int i = 1; i <= P - 1; ++i) acc += interior[i - 1] * row[i];
        beta[m] = scale * acc;
    }
    return beta;
}

std::vector<double> cos_analyze(const TrigTables& t, const std::vector<double>& closed, int maxdeg) {
    const int P = t.P;
    std::vector<double> alpha(static_cast<std::size_t>(maxdeg) + 1, 0.0);
    for (int m = 0; m <= maxdeg; ++m) {
        const double* row = t.cos_row(m);
        double acc = 0.5 * closed[0] * row[0];
        for (int i = 1; i <= P - 1; ++i) acc += closed[i] * row[i];
        acc += 0.5 * closed[P] * row[P];
        alpha[m] = acc * (m == 0 ? 1.0 : 2.0) / P;
    }
    return alpha;
}

double trapezoid_closed(const TrigTables& t, const std::vector<double>& closed) {
    const int P = t.P;
    double acc = 0.5 * (closed[0] + closed[P]);
    for (int i = 1; i <= P - 1; ++i) acc += closed[i];
    return acc * t.h();
}

} // namespace ich
