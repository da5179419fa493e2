#include "demon/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace demon {

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < pts[i].size(); ++j) {
            const double diff = pts[i][j] - pts[0][j];
            s += diff * diff;
        }
        d = std::max(d, std::sqrt(s));
    }
    return d;
}

} // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> start,
                                      const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    if (n == 0) throw std::invalid_argument("nelder_mead_minimize: empty start point");

    constexpr double alpha = 1.0;  // reflection
    constexpr double gamma = 2.0;  // expansion
    constexpr double beta = 0.5;   // contraction
    constexpr double delta = 0.5;  // shrink

    NelderMeadResult result;
    auto evaluate = [&](std::span<const double> x) {
        ++result.evaluations;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.initial_step;
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i <= n && result.evaluations < options.max_evaluations; ++i) {
        vals[i] = evaluate(pts[i]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), candidate(n);

    while (result.evaluations < options.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        {
            std::vector<std::vector<double>> tmp_p(n + 1);
            std::vector<double> tmp_v(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                tmp_p[i] = std::move(pts[order[i]]);
                tmp_v[i] = vals[order[i]];
            }
            pts = std::move(tmp_p);
            vals = std::move(tmp_v);
        }

        if (simplex_diameter(pts) < options.x_tolerance ||
            vals[n] - vals[0] < options.f_tolerance) {
            result.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        for (std::size_t j = 0; j < n; ++j) {
            candidate[j] = centroid[j] + alpha * (centroid[j] - pts[n][j]);
        }
        const double reflected = evaluate(candidate);

        if (reflected < vals[0]) {
            std::vector<double> expanded_pt(n);
            for (std::size_t j = 0; j < n; ++j) {
                expanded_pt[j] = centroid[j] + gamma * (candidate[j] - centroid[j]);
            }
            const double expanded = evaluate(expanded_pt);
            if (expanded < reflected) {
                pts[n] = std::move(expanded_pt);
                vals[n] = expanded;
            } else {
                pts[n] = candidate;
                vals[n] = reflected;
            }
        } else if (reflected < vals[n - 1]) {
            pts[n] = candidate;
            vals[n] = reflected;
        } else {
            const bool outside = reflected < vals[n];
            std::vector<double> contracted_pt(n);
            if (outside) {
                for (std::size_t j = 0; j < n; ++j) {
                    contracted_pt[j] = centroid[j] + beta * (candidate[j] - centroid[j]);
                }
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    contracted_pt[j] = centroid[j] + beta * (pts[n][j] - centroid[j]);
                }
            }
            const double contracted = evaluate(contracted_pt);
            if (contracted < (outside ? reflected : vals[n])) {
                pts[n] = std::move(contracted_pt);
                vals[n] = contracted;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j) {
                        pts[i][j] = pts[0][j] + delta * (pts[i][j] - pts[0][j]);
                    }
                    if (result.evaluations >= options.max_evaluations) break;
                    vals[i] = evaluate(pts[i]);
                }
            }
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    result.x = pts[best];
    result.value = vals[best];
    return result;
}

} // namespace demon
