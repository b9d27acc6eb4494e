#include "isolab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "isolab/error.hpp"

namespace isolab {
namespace {

// Kronrod abscissae in decreasing order; odd indices are the Gauss nodes.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for kXgk[1], kXgk[3], kXgk[5] and the center.
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel
{
    double a;
    double b;
    double value;
    double error;
    std::size_t order;  // creation index, breaks ties deterministically
};

struct LargerError
{
    bool operator()(const Panel& x, const Panel& y) const
    {
        if (x.error != y.error)
            return x.error < y.error;
        return x.order > y.order;
    }
};

}  // namespace

QuadratureResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    bool finite = std::isfinite(fc);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        finite = finite && std::isfinite(f1) && std::isfinite(f2);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }
    if (!finite)
        throw ConvergenceError("quadrature: integrand is not finite on the panel");

    QuadratureResult r;
    r.value = kronrod * half;
    r.error = std::abs((kronrod - gauss) * half);
    r.panels = 1;
    return r;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options)
{
    if (a == b)
        return {};
    if (b < a) {
        auto r = integrate(f, b, a, options);
        r.value = -r.value;
        return r;
    }

    std::priority_queue<Panel, std::vector<Panel>, LargerError> queue;
    std::size_t order = 0;
    auto first = gauss_kronrod15(f, a, b);
    queue.push({a, b, first.value, first.error, order++});
    double total = first.value;
    double total_error = first.error;

    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (queue.size() >= options.max_panels)
            throw ConvergenceError("quadrature: panel limit reached before the error target");
        Panel worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;  // cannot split further in double precision
        queue.pop();
        auto left = gauss_kronrod15(f, worst.a, mid);
        auto right = gauss_kronrod15(f, mid, worst.b);
        queue.push({worst.a, mid, left.value, left.error, order++});
        queue.push({mid, worst.b, right.value, right.error, order++});
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
    }

    // Final sum in a fixed order (by left endpoint).
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadratureResult r;
    for (const auto& p : panels) {
        r.value += p.value;
        r.error += p.error;
    }
    r.panels = panels.size();
    return r;
}

}  // namespace isolab
