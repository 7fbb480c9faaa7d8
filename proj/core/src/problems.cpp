#include "dmi/problems.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"

namespace dmi {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_zdt(Family f) { return f == Family::ZDT3 || f == Family::ZDT3Star; }
bool is_dtlz7(Family f) { return f == Family::DTLZ7 || f == Family::DTLZ7Star; }
bool is_dtlz2(Family f) { return f == Family::DTLZ2 || f == Family::MinusDTLZ2; }
bool is_star(Family f) { return f == Family::ZDT3Star || f == Family::DTLZ7Star || f == Family::WFG2Star; }

struct NamedInstance {
    Family family;
    std::optional<DisconnectParams> params;
    std::size_t default_m;
};

const std::map<std::string, NamedInstance, std::less<>>& registry()
{
    static const std::map<std::string, NamedInstance, std::less<>> table{
        {"zdt3", {Family::ZDT3, std::nullopt, 2}},
        {"zdt31", {Family::ZDT3Star, DisconnectParams{10, 10.0, 1.0}, 2}},
        {"zdt32", {Family::ZDT3Star, DisconnectParams{5, 0.0, 5.0}, 2}},
        {"dtlz7", {Family::DTLZ7, std::nullopt, 3}},
        {"dtlz71", {Family::DTLZ7Star, DisconnectParams{5, 0.0, 1.0}, 3}},
        {"dtlz72", {Family::DTLZ7Star, DisconnectParams{3, 0.0, 2.0}, 3}},
        {"dtlz2", {Family::DTLZ2, std::nullopt, 3}},
        {"minus_dtlz2", {Family::MinusDTLZ2, std::nullopt, 3}},
        {"wfg2", {Family::WFG2, std::nullopt, 2}},
        {"wfg21", {Family::WFG2Star, DisconnectParams{10, 1.0, 1.0}, 2}},
        {"wfg22", {Family::WFG2Star, DisconnectParams{5, 5.0, 1.0}, 2}},
        {"wfg23", {Family::WFG2Star, DisconnectParams{5, 1.0, 5.0}, 2}},
    };
    return table;
}

// ---- ZDT3 -----------------------------------------------------------------

double zdt_g(const Vector& x)
{
    const auto n = x.size();
    return 1.0 + 9.0 / static_cast<double>(n - 1) * x.tail(n - 1).sum();
}

Vector zdt3_classic(const Vector& x)
{
    const double f1 = x[0];
    const double g = zdt_g(x);
    const double f2 = g * (1.0 - std::sqrt(f1 / g) - (f1 / g) * std::sin(10.0 * kPi * f1));
    return Vector{{f1, f2}};
}

Vector zdt3_star(const Vector& x, const DisconnectParams& p)
{
    const double x1 = x[0];
    const double g = zdt_g(x);
    const double wave = std::pow(x1, p.alpha) / g * std::sin(p.regions * kPi * std::pow(x1, p.beta));
    return Vector{{x1, g * (1.0 - std::sqrt(x1 / g) - wave)}};
}

// ---- DTLZ7 ----------------------------------------------------------------

double dtlz7_g(const Vector& x, std::size_t m)
{
    const auto k = x.size() - static_cast<Eigen::Index>(m) + 1;
    return 1.0 + 9.0 / static_cast<double>(k) * x.tail(k).sum();
}

// The printed h-sum runs to m, but f_m depends on h; the sum covers the
// m-1 free objectives as in the classic problem.
Vector dtlz7_generic(const Vector& x, std::size_t m, const DisconnectParams& p)
{
    const auto mm = static_cast<Eigen::Index>(m);
    const double g = dtlz7_g(x, m);
    Vector f(mm);
    double h = static_cast<double>(m);
    for (Eigen::Index i = 0; i + 1 < mm; ++i) {
        f[i] = x[i];
        h -= f[i] / (1.0 + g) * (1.0 + std::pow(f[i], p.alpha) * std::sin(p.regions * kPi * std::pow(f[i], p.beta)));
    }
    f[mm - 1] = (1.0 + g) * h;
    return f;
}

Vector dtlz7_classic(const Vector& x, std::size_t m)
{
    const auto mm = static_cast<Eigen::Index>(m);
    const double g = dtlz7_g(x, m);
    Vector f(mm);
    double h = static_cast<double>(m);
    for (Eigen::Index i = 0; i + 1 < mm; ++i) {
        f[i] = x[i];
        h -= f[i] / (1.0 + g) * (1.0 + std::sin(3.0 * kPi * f[i]));
    }
    f[mm - 1] = (1.0 + g) * h;
    return f;
}

// ---- DTLZ2 ----------------------------------------------------------------

Vector dtlz2_shape(const Vector& position, double radius)
{
    // position has m-1 entries in [0,1]
    const auto mm = position.size() + 1;
    Vector f(mm);
    for (Eigen::Index j = 0; j < mm; ++j) {
        double v = radius;
        for (Eigen::Index i = 0; i < mm - 1 - j; ++i) {
            v *= std::cos(position[i] * kPi / 2.0);
        }
        if (j > 0) {
            v *= std::sin(position[mm - 1 - j] * kPi / 2.0);
        }
        f[j] = v;
    }
    return f;
}

double dtlz2_g(const Vector& x, std::size_t m)
{
    const auto k = x.size() - static_cast<Eigen::Index>(m) + 1;
    return (x.tail(k).array() - 0.5).square().sum();
}

double minus_dtlz2_offset(std::size_t n, std::size_t m) { return 1.0 + 0.25 * static_cast<double>(n - m + 1); }

Vector dtlz2(const Vector& x, std::size_t m)
{
    const auto mm = static_cast<Eigen::Index>(m);
    return dtlz2_shape(x.head(mm - 1), 1.0 + dtlz2_g(x, m));
}

Vector minus_dtlz2(const Vector& x, std::size_t m)
{
    const double offset = minus_dtlz2_offset(static_cast<std::size_t>(x.size()), m);
    return (Vector::Constant(static_cast<Eigen::Index>(m), offset) - dtlz2(x, m));
}

// ---- WFG2 -----------------------------------------------------------------

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double s_linear(double y, double a) { return clamp01(std::abs(y - a) / std::abs(std::floor(a - y) + a)); }

double r_nonsep(std::span<const double> y, int a)
{
    const auto size = static_cast<int>(y.size());
    double numerator = 0.0;
    for (int j = 0; j < size; ++j) {
        numerator += y[static_cast<std::size_t>(j)];
        for (int k = 0; k <= a - 2; ++k) {
            numerator += std::abs(y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>((1 + j + k) % size)]);
        }
    }
    const double half = std::ceil(a / 2.0);
    const double denominator = static_cast<double>(size) / a * half * (1.0 + 2.0 * a - 2.0 * half);
    return clamp01(numerator / denominator);
}

double r_sum(std::span<const double> y)
{
    return clamp01(std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size()));
}

// h_1 .. h_{m-1} of the convex shape at position parameters p (size m-1)
double convex_shape(const Vector& p, Eigen::Index i, Eigen::Index m)
{
    double v = 1.0;
    for (Eigen::Index j = 0; j < m - 1 - i; ++j) {
        v *= 1.0 - std::cos(p[j] * kPi / 2.0);
    }
    if (i > 0) {
        v *= 1.0 - std::sin(p[m - 1 - i] * kPi / 2.0);
    }
    return clamp01(v);
}

double disc_shape(double x1, const DisconnectParams& d)
{
    const double c = std::cos(d.regions * std::pow(x1, d.beta) * kPi);
    return clamp01(1.0 - std::pow(x1, d.alpha) * c * c);
}

/// Objective vector from the reduced position parameters p (size m-1) and
/// the distance parameter x_M.
Vector wfg2_shape(const Vector& p, double distance, std::size_t m, const DisconnectParams& d)
{
    const auto mm = static_cast<Eigen::Index>(m);
    Vector f(mm);
    for (Eigen::Index i = 0; i < mm - 1; ++i) {
        f[i] = distance + 2.0 * static_cast<double>(i + 1) * convex_shape(p, i, mm);
    }
    f[mm - 1] = distance + 2.0 * static_cast<double>(mm) * disc_shape(p[0], d);
    return f;
}

Vector wfg2(const Vector& z, std::size_t m, std::size_t k, const DisconnectParams& d)
{
    const auto n = static_cast<std::size_t>(z.size());
    const std::size_t l = n - k;

    std::vector<double> t1(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = z[static_cast<Eigen::Index>(i)] / (2.0 * static_cast<double>(i + 1));
        t1[i] = i < k ? y : s_linear(y, 0.35);
    }

    std::vector<double> t2(k + l / 2);
    std::copy_n(t1.begin(), k, t2.begin());
    for (std::size_t i = 0; i < l / 2; ++i) {
        t2[k + i] = r_nonsep(std::span<const double>(t1).subspan(k + 2 * i, 2), 2);
    }

    const std::size_t group = k / (m - 1);
    Vector p(static_cast<Eigen::Index>(m - 1));
    for (std::size_t i = 0; i + 1 < m; ++i) {
        p[static_cast<Eigen::Index>(i)] = r_sum(std::span<const double>(t2).subspan(i * group, group));
    }
    const double distance = r_sum(std::span<const double>(t2).subspan(k, l / 2));
    return wfg2_shape(p, distance, m, d);
}

constexpr DisconnectParams kWfg2Classic{5, 1.0, 1.0};

// ---- front sampling helpers ----------------------------------------------

constexpr std::size_t kSweep2d = 65536;
constexpr std::size_t kGrid3d = 128;

std::vector<Vector> sweep_positions(std::size_t m)
{
    std::vector<Vector> out;
    if (m == 2) {
        out.reserve(kSweep2d);
        for (std::size_t i = 0; i < kSweep2d; ++i) {
            out.push_back(Vector::Constant(1, static_cast<double>(i) / static_cast<double>(kSweep2d - 1)));
        }
    } else if (m == 3) {
        out.reserve(kGrid3d * kGrid3d);
        for (std::size_t i = 0; i < kGrid3d; ++i) {
            for (std::size_t j = 0; j < kGrid3d; ++j) {
                const double a = static_cast<double>(i) / static_cast<double>(kGrid3d - 1);
                const double b = static_cast<double>(j) / static_cast<double>(kGrid3d - 1);
                out.push_back(Vector{{a, b}});
            }
        }
    } else {
        throw NotSupported("sample_true_pf: sweeps are implemented for m in {2,3}");
    }
    return out;
}

/// Greedy farthest-point thinning, seeded at the first point. Returns
/// selected indices in input order.
std::vector<std::size_t> farthest_point_subset(std::span<const Vector> pts, std::size_t count)
{
    std::vector<std::size_t> chosen;
    if (pts.size() <= count) {
        chosen.resize(pts.size());
        std::iota(chosen.begin(), chosen.end(), std::size_t{0});
        return chosen;
    }
    std::vector<double> dist(pts.size(), std::numeric_limits<double>::infinity());
    std::size_t next = 0;
    while (chosen.size() < count) {
        const std::size_t current = next;
        chosen.push_back(current);
        double best = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            dist[i] = std::min(dist[i], (pts[i] - pts[current]).squaredNorm());
            if (dist[i] > best) {
                best = dist[i];
                next = i;
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Population to_population(std::vector<Vector> objectives)
{
    Population out;
    for (auto& f : objectives) {
        out.push_back(EvaluatedSolution(DecisionVector(), ObjectiveVector(std::move(f)), Source::TrueEvaluation));
    }
    return out;
}

double median(std::vector<double> v)
{
    if (v.empty()) {
        return 0.0;
    }
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) {
        return hi;
    }
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
};

} // namespace

ProblemSpec make_problem(Family family, std::size_t n, std::size_t m, std::optional<DisconnectParams> params,
                         std::size_t wfg_k, std::string id)
{
    require(m >= 2, "problem: m must be at least 2");
    require(n >= m, "problem: n must be at least m");
    if (is_star(family)) {
        require(params.has_value(), "problem: disconnected family requires parameters");
        require(params->regions >= 1, "problem: A must be >= 1");
        require(params->alpha >= 0.0, "problem: alpha must be >= 0");
        require(params->beta > 0.0, "problem: beta must be > 0");
    } else {
        params.reset();
    }

    ProblemSpec spec;
    spec.family = family;
    spec.n = n;
    spec.m = m;
    spec.params = params;
    spec.id = std::move(id);

    if (is_zdt(family)) {
        require(m == 2, "problem: ZDT families are bi-objective");
        spec.bounds = Bounds::unit(n);
    } else if (is_dtlz7(family) || is_dtlz2(family)) {
        spec.bounds = Bounds::unit(n);
    } else {
        std::size_t k = wfg_k;
        if (k == 0) {
            k = 2 * (m - 1);
            if ((n - std::min(n, k)) % 2 == 1) {
                k += m - 1;
            }
        }
        require(k % (m - 1) == 0, "problem: WFG position count must be divisible by m-1");
        require(k < n, "problem: WFG position count must be < n");
        require((n - k) % 2 == 0, "problem: WFG distance count must be even");
        spec.wfg_k = k;
        Vector upper(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            upper[static_cast<Eigen::Index>(i)] = 2.0 * static_cast<double>(i + 1);
        }
        spec.bounds = Bounds(Vector::Zero(static_cast<Eigen::Index>(n)), upper);
    }
    return spec;
}

ProblemSpec problem_from_id(std::string_view id, std::size_t n, std::size_t m)
{
    const auto& table = registry();
    const auto it = table.find(id);
    if (it == table.end()) {
        throw ConfigError("unknown problem id '" + std::string(id) + "'");
    }
    const auto& entry = it->second;
    return make_problem(entry.family, n, m == 0 ? entry.default_m : m, entry.params, 0, std::string(id));
}

std::vector<std::string> known_problem_ids()
{
    std::vector<std::string> ids;
    for (const auto& [key, value] : registry()) {
        ids.push_back(key);
    }
    return ids;
}

void EvaluationBudget::consume()
{
    std::size_t current = consumed_.load();
    do {
        if (current >= maximum_) {
            throw BudgetExhausted("evaluation budget of " + std::to_string(maximum_) + " exhausted");
        }
    } while (!consumed_.compare_exchange_weak(current, current + 1));
}

ObjectiveVector evaluate(const ProblemSpec& spec, const Vector& x)
{
    require(static_cast<std::size_t>(x.size()) == spec.n, "evaluate: dimension mismatch");
    require(spec.bounds.contains(x), "evaluate: decision vector outside bounds");
    switch (spec.family) {
    case Family::ZDT3:
        return ObjectiveVector(zdt3_classic(x));
    case Family::ZDT3Star:
        return ObjectiveVector(zdt3_star(x, *spec.params));
    case Family::DTLZ7:
        return ObjectiveVector(dtlz7_classic(x, spec.m));
    case Family::DTLZ7Star:
        return ObjectiveVector(dtlz7_generic(x, spec.m, *spec.params));
    case Family::DTLZ2:
        return ObjectiveVector(dtlz2(x, spec.m));
    case Family::MinusDTLZ2:
        return ObjectiveVector(minus_dtlz2(x, spec.m));
    case Family::WFG2:
        return ObjectiveVector(wfg2(x, spec.m, spec.wfg_k, kWfg2Classic));
    case Family::WFG2Star:
        return ObjectiveVector(wfg2(x, spec.m, spec.wfg_k, *spec.params));
    }
    throw NotSupported("evaluate: unknown family");
}

ObjectiveVector evaluate_true(const ProblemSpec& spec, const DecisionVector& x, EvaluationBudget& budget)
{
    require(static_cast<std::size_t>(x.size()) == spec.n, "evaluate_true: dimension mismatch");
    require(spec.bounds.contains(x.coords()), "evaluate_true: decision vector outside bounds");
    budget.consume();
    return evaluate(spec, x.coords());
}

Population sample_true_pf(const ProblemSpec& spec, std::size_t count, RandomSource& rng)
{
    require(count >= 1, "sample_true_pf: count must be positive");
    const auto mm = static_cast<Eigen::Index>(spec.m);

    std::vector<Vector> raw;
    if (is_dtlz2(spec.family)) {
        const double offset = minus_dtlz2_offset(spec.n, spec.m);
        raw.reserve(count);
        while (raw.size() < count) {
            Vector u(mm);
            for (Eigen::Index i = 0; i < mm; ++i) {
                u[i] = std::abs(rng.normal());
            }
            const double norm = u.norm();
            if (norm == 0.0) {
                continue;
            }
            u /= norm;
            raw.push_back(spec.family == Family::DTLZ2 ? u : Vector(offset * (Vector::Ones(mm) - u)));
        }
        return to_population(std::move(raw));
    }

    for (const auto& p : sweep_positions(spec.m)) {
        switch (spec.family) {
        case Family::ZDT3:
        case Family::ZDT3Star: {
            Vector x = Vector::Zero(static_cast<Eigen::Index>(spec.n));
            x[0] = p[0];
            raw.push_back(spec.family == Family::ZDT3 ? zdt3_classic(x) : zdt3_star(x, *spec.params));
            break;
        }
        case Family::DTLZ7:
        case Family::DTLZ7Star: {
            Vector x = Vector::Zero(static_cast<Eigen::Index>(spec.n));
            x.head(mm - 1) = p;
            raw.push_back(spec.family == Family::DTLZ7 ? dtlz7_classic(x, spec.m)
                                                       : dtlz7_generic(x, spec.m, *spec.params));
            break;
        }
        case Family::WFG2:
        case Family::WFG2Star:
            raw.push_back(wfg2_shape(p, 0.0, spec.m, spec.family == Family::WFG2 ? kWfg2Classic : *spec.params));
            break;
        default:
            throw NotSupported("sample_true_pf: unsupported family");
        }
    }

    const auto keep = nondominated_indices(raw);
    std::vector<Vector> front;
    front.reserve(keep.size());
    for (auto i : keep) {
        front.push_back(std::move(raw[i]));
    }
    const auto thinned = farthest_point_subset(front, count);
    std::vector<Vector> out;
    out.reserve(thinned.size());
    for (auto i : thinned) {
        out.push_back(front[i]);
    }
    return to_population(std::move(out));
}

std::vector<int> segment_labels(std::span<const Vector> points, double gap_factor)
{
    require(gap_factor > 0.0, "segment_labels: gap_factor must be positive");
    std::vector<int> labels(points.size(), 0);
    if (points.size() < 2) {
        return labels;
    }

    if (points.front().size() == 2) {
        std::vector<std::size_t> order(points.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
        std::vector<double> gaps;
        for (std::size_t i = 1; i < order.size(); ++i) {
            gaps.push_back((points[order[i]] - points[order[i - 1]]).norm());
        }
        std::vector<double> positive;
        std::copy_if(gaps.begin(), gaps.end(), std::back_inserter(positive), [](double g) { return g > 0.0; });
        const double threshold = gap_factor * median(positive);
        int label = 0;
        labels[order[0]] = 0;
        for (std::size_t i = 1; i < order.size(); ++i) {
            if (gaps[i - 1] > threshold) {
                ++label;
            }
            labels[order[i]] = label;
        }
        return labels;
    }

    const std::size_t n = points.size();
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                const double d = (points[i] - points[j]).norm();
                if (d > 0.0) {
                    nearest[i] = std::min(nearest[i], d);
                }
            }
        }
    }
    const double threshold = gap_factor * median(nearest);
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((points[i] - points[j]).norm() <= threshold) {
                sets.unite(i, j);
            }
        }
    }
    std::map<std::size_t, int> ids;
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = sets.find(i);
        const auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
        labels[i] = it->second;
    }
    return labels;
}

int count_segments(const Population& front, double gap_factor)
{
    if (front.size() < 2) {
        return 1;
    }
    require(front.num_objectives() == 2, "count_segments: bi-objective fronts only");
    const auto labels = segment_labels(front.objective_vectors(), gap_factor);
    return *std::max_element(labels.begin(), labels.end()) + 1;
}

SegmentCoverage segment_coverage(std::span<const Vector> front, std::span<const Vector> true_pf, double gap_factor,
                                 double tolerance_fraction)
{
    SegmentCoverage result;
    if (true_pf.empty()) {
        return result;
    }
    const auto labels = segment_labels(true_pf, gap_factor);
    result.total = *std::max_element(labels.begin(), labels.end()) + 1;

    Vector lo = true_pf.front();
    Vector hi = true_pf.front();
    for (const auto& p : true_pf) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double tolerance = tolerance_fraction * (hi - lo).norm();

    std::vector<char> hit(static_cast<std::size_t>(result.total), 0);
    for (const auto& f : front) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_index = 0;
        for (std::size_t i = 0; i < true_pf.size(); ++i) {
            const double d = (f - true_pf[i]).squaredNorm();
            if (d < best) {
                best = d;
                best_index = i;
            }
        }
        if (std::sqrt(best) <= tolerance) {
            hit[static_cast<std::size_t>(labels[best_index])] = 1;
        }
    }
    result.covered = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
    return result;
}

} // namespace dmi
