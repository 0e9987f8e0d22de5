#include "manasim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace manasim::quadrature {

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on the
// Legendre recurrence.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule make_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[order - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    return rule;
}

// Neumaier-compensated accumulator; the reduction over many signed panel
// values must not leak rounding into the tolerance budget.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + carry; }
};

// Axis-aligned panel [x0,x1] x [y0,y1]. Panels come from a quadtree over a
// square root domain with identical cuts on both axes, so a panel that meets
// the diagonal always has x-interval == y-interval.
struct Panel {
    double x0, x1, y0, y1;

    double side() const { return x1 - x0; }
    bool on_diagonal() const { return x0 == y0 && x1 == y1; }
    bool below_diagonal() const { return y1 <= x0; }  // tau > tau' everywhere
    bool above_diagonal() const { return x1 <= y0; }
    double distance_to_diagonal() const {
        if (on_diagonal()) return 0.0;
        return below_diagonal() ? x0 - y1 : y0 - x1;
    }
};

struct Entry {
    Panel panel;
    Complex value;   // higher-order rule
    double error;    // |higher - lower|
    int depth;
    bool alive = true;
};

class Engine {
public:
    Engine(const Integrand2D& f, Square domain, const QuadratureSpec& spec, Region region,
           Symmetry symmetry)
        : f_(f),
          spec_(spec),
          region_(region),
          symmetry_(symmetry),
          base_(make_rule(spec.panels.gauss_order)),
          ref_(make_rule(spec.panels.gauss_order_ref)),
          extent_(domain.hi - domain.lo) {}

    Integral run(Square domain) {
        collect({domain.lo, domain.hi, domain.lo, domain.hi}, 0);

        // Worst-first global refinement: split the panel with the largest
        // error estimate until the total meets the tolerance. Ties break on
        // the insertion sequence, so the whole process is deterministic.
        struct WorstFirst {
            bool operator()(const std::pair<double, std::size_t>& a,
                            const std::pair<double, std::size_t>& b) const {
                if (a.first != b.first) return a.first < b.first;
                return a.second > b.second;  // equal errors: earlier panel first
            }
        };
        std::priority_queue<std::pair<double, std::size_t>,
                            std::vector<std::pair<double, std::size_t>>, WorstFirst>
            worst;
        double total_error = 0.0;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            total_error += entries_[i].error;
            worst.push({entries_[i].error, i});
        }
        while (total_error > spec_.target_abs_tol && !worst.empty() &&
               evaluations_ < spec_.panels.max_evaluations) {
            const std::size_t index = worst.top().second;
            worst.pop();
            if (!entries_[index].alive) continue;
            if (entries_[index].depth >= spec_.panels.max_subdivisions) continue;
            const Panel parent = entries_[index].panel;
            const int child_depth = entries_[index].depth + 1;
            entries_[index].alive = false;
            total_error -= entries_[index].error;
            for (const auto& child : split(parent)) {
                if (skip(child)) continue;
                add_entry(child, child_depth);  // may reallocate entries_
                total_error += entries_.back().error;
                worst.push({entries_.back().error, entries_.size() - 1});
            }
        }
        return reduce();
    }

private:
    bool skip(const Panel& p) const {
        const bool fold_upper =
            region_ == Region::lower_triangle || symmetry_ == Symmetry::hermitian;
        return fold_upper && p.above_diagonal();
    }

    void collect(const Panel& p, int depth) {
        if (skip(p)) return;
        if (p.side() > structural_target(p) * (1.0 + 1e-12) &&
            depth < spec_.panels.max_subdivisions) {
            for (const auto& child : split(p)) collect(child, depth + 1);
            return;
        }
        add_entry(p, depth);
    }

    std::array<Panel, 4> split(const Panel& p) const {
        const double mx = 0.5 * (p.x0 + p.x1);
        const double my = 0.5 * (p.y0 + p.y1);
        return {Panel{p.x0, mx, p.y0, my}, Panel{mx, p.x1, p.y0, my}, Panel{p.x0, mx, my, p.y1},
                Panel{mx, p.x1, my, p.y1}};
    }

    double structural_target(const Panel& p) const {
        const double cap = extent_ / spec_.panels.coarse_divisions;
        const double wanted = std::max(spec_.panels.diagonal_peak_scale,
                                       spec_.panels.distance_growth * p.distance_to_diagonal());
        if (wanted <= 0.0) return cap;
        return std::min(wanted, cap);
    }

    void add_entry(const Panel& p, int depth) {
        Entry entry{p, {0.0, 0.0}, 0.0, depth};
        Complex lo, hi;
        if (p.on_diagonal()) {
            if (region_ == Region::lower_triangle) {
                lo = duffy_lower(p, base_);
                hi = duffy_lower(p, ref_);
            } else if (symmetry_ == Symmetry::hermitian) {
                lo = tensor_diagonal_paired(p, base_);
                hi = tensor_diagonal_paired(p, ref_);
            } else {
                lo = tensor(p, base_);
                hi = tensor(p, ref_);
            }
        } else {
            lo = tensor(p, base_);
            hi = tensor(p, ref_);
            if (symmetry_ == Symmetry::hermitian && region_ == Region::square) {
                // Fold in the mirror panel: it contributes the conjugate value.
                lo = Complex{2.0 * lo.real(), 0.0};
                hi = Complex{2.0 * hi.real(), 0.0};
            }
        }
        entry.value = hi;
        entry.error = std::abs(hi - lo);
        entries_.push_back(entry);
    }

    Integral reduce() const {
        CompensatedSum re, im, err;
        for (const auto& entry : entries_) {
            if (!entry.alive) continue;
            re.add(entry.value.real());
            im.add(entry.value.imag());
            err.add(entry.error);
        }
        Integral out;
        out.value = {re.total(), im.total()};
        out.error_estimate = err.total();
        out.converged = out.error_estimate <= spec_.target_abs_tol;
        out.evaluations = evaluations_;
        return out;
    }

    // Tensor rule on a rectangular panel.
    Complex tensor(const Panel& p, const GaussRule& rule) {
        const double cx = 0.5 * (p.x0 + p.x1), hx = 0.5 * (p.x1 - p.x0);
        const double cy = 0.5 * (p.y0 + p.y1), hy = 0.5 * (p.y1 - p.y0);
        Complex sum{0.0, 0.0};
        const int n = static_cast<int>(rule.nodes.size());
        for (int i = 0; i < n; ++i) {
            const double x = cx + hx * rule.nodes[i];
            Complex row{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                const double y = cy + hy * rule.nodes[j];
                row += rule.weights[j] * f_(x, y);
            }
            sum += rule.weights[i] * row;
        }
        evaluations_ += static_cast<std::int64_t>(n) * n;
        return sum * (hx * hy);
    }

    // Diagonal panel of a Hermitian integrand: nodes (x_i, x_j) and (x_j, x_i)
    // carry conjugate values, so each pair contributes 2 w_i w_j Re f and the
    // panel sum is real by construction.
    Complex tensor_diagonal_paired(const Panel& p, const GaussRule& rule) {
        const double c = 0.5 * (p.x0 + p.x1), h = 0.5 * (p.x1 - p.x0);
        const int n = static_cast<int>(rule.nodes.size());
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = c + h * rule.nodes[i];
            sum += rule.weights[i] * rule.weights[i] * f_(xi, xi).real();
            for (int j = i + 1; j < n; ++j) {
                const double xj = c + h * rule.nodes[j];
                sum += 2.0 * rule.weights[i] * rule.weights[j] * f_(xi, xj).real();
            }
        }
        evaluations_ += static_cast<std::int64_t>(n) * (n + 1) / 2;
        return {sum * (h * h), 0.0};
    }

    // Lower triangle {y <= x} of a diagonal panel via the Duffy map
    // x = a + s u, y = a + s u v, Jacobian s^2 u.
    Complex duffy_lower(const Panel& p, const GaussRule& rule) {
        const double a = p.x0, s = p.side();
        const int n = static_cast<int>(rule.nodes.size());
        Complex sum{0.0, 0.0};
        for (int i = 0; i < n; ++i) {
            const double u = 0.5 * (rule.nodes[i] + 1.0);
            const double x = a + s * u;
            Complex row{0.0, 0.0};
            for (int j = 0; j < n; ++j) {
                const double v = 0.5 * (rule.nodes[j] + 1.0);
                row += rule.weights[j] * f_(x, a + s * u * v);
            }
            sum += rule.weights[i] * u * row;
        }
        evaluations_ += static_cast<std::int64_t>(n) * n;
        return sum * (0.25 * s * s);
    }

    const Integrand2D& f_;
    const QuadratureSpec& spec_;
    Region region_;
    Symmetry symmetry_;
    GaussRule base_;
    GaussRule ref_;
    double extent_;
    std::vector<Entry> entries_;
    std::int64_t evaluations_ = 0;
};

}  // namespace

void QuadratureSpec::validate() const {
    if (!(truncation_radius >= 4.0)) {
        std::ostringstream msg;
        msg << "quadrature: truncation radius must be >= 4 sigma_t, got " << truncation_radius;
        fail(msg.str());
    }
    if (!(target_abs_tol > 0.0)) fail("quadrature: target tolerance must be positive");
    if (panels.gauss_order < 2 || panels.gauss_order_ref <= panels.gauss_order)
        fail("quadrature: need 2 <= gauss_order < gauss_order_ref");
    if (panels.coarse_divisions < 1 || panels.max_subdivisions < 1 || panels.max_evaluations < 1)
        fail("quadrature: panel limits must be positive");
}

Integral integrate2d(const Integrand2D& f, Square domain, const QuadratureSpec& spec, Region region,
                     Symmetry symmetry) {
    spec.validate();
    if (!(domain.hi > domain.lo)) fail("quadrature: empty integration square");
    Engine engine(f, domain, spec, region, symmetry);
    return engine.run(domain);
}

EpsilonSchedule EpsilonSchedule::dyadic(double sigma_t, int k_min, int k_max) {
    if (!(sigma_t > 0.0)) fail("epsilon schedule: sigma_t must be positive");
    if (k_min > k_max) fail("epsilon schedule: k_min must not exceed k_max");
    EpsilonSchedule schedule;
    for (int k = k_min; k <= k_max; ++k) schedule.values.push_back(sigma_t * std::ldexp(1.0, -k));
    return schedule;
}

void EpsilonSchedule::validate() const {
    if (values.empty()) fail("epsilon schedule: empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) fail("epsilon schedule: all levels must be positive");
        if (i > 0 && !(values[i] < values[i - 1]))
            fail("epsilon schedule: levels must be strictly decreasing");
    }
}

namespace {

// Quadratic (or lower-degree) Lagrange extrapolation through the given
// samples, evaluated at epsilon = 0.
Complex lagrange_at_zero(const std::vector<EpsilonSample>& samples, std::size_t first,
                         std::size_t count) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = first; i < first + count; ++i) {
        double weight = 1.0;
        for (std::size_t j = first; j < first + count; ++j) {
            if (i == j) continue;
            weight *= -samples[j].epsilon / (samples[i].epsilon - samples[j].epsilon);
        }
        acc += weight * samples[i].value;
    }
    return acc;
}

}  // namespace

Extrapolation extrapolate_eps(std::vector<EpsilonSample> samples) {
    if (samples.size() < 3) fail("extrapolation: need at least 3 epsilon samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i].epsilon > 0.0)) fail("extrapolation: epsilons must be positive");
        if (i > 0 && !(samples[i].epsilon < samples[i - 1].epsilon))
            fail("extrapolation: epsilons must be strictly decreasing");
    }

    // One quadratic extrapolant per 3-sample window; windows slide toward the
    // smallest epsilons and should settle as the model captures the data.
    std::vector<Complex> window_limits;
    for (std::size_t k = 2; k < samples.size(); ++k)
        window_limits.push_back(lagrange_at_zero(samples, k - 2, 3));

    Extrapolation out;
    out.limit = window_limits.back();
    if (window_limits.size() >= 2) {
        out.error_estimate = std::abs(window_limits.back() - window_limits[window_limits.size() - 2]);
    } else {
        // Only one window: compare against the linear model through the two
        // smallest levels.
        const auto& a = samples[samples.size() - 2];
        const auto& b = samples.back();
        const Complex linear = b.value + (b.value - a.value) * (b.epsilon / (a.epsilon - b.epsilon));
        out.error_estimate = std::abs(out.limit - linear);
    }

    if (window_limits.size() >= 3) {
        const std::size_t m = window_limits.size();
        const double last = std::abs(window_limits[m - 1] - window_limits[m - 2]);
        const double prev = std::abs(window_limits[m - 2] - window_limits[m - 3]);
        const double floor = 1e-14 * (1.0 + std::abs(out.limit));
        out.converged = last <= std::max(1.5 * prev, floor);
    }
    out.samples = std::move(samples);
    return out;
}

}  // namespace manasim::quadrature
