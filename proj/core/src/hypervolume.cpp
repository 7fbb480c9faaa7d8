#include "dmi/hypervolume.hpp"

#include <algorithm>

#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"

namespace dmi {

namespace {

struct Point2 {
    double x;
    double y;
};

// Points must already be strictly inside the reference box.
double sweep2(std::vector<Point2>& pts, double rx, double ry)
{
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    double area = 0.0;
    double ceiling = ry;
    for (const auto& p : pts) {
        if (p.y < ceiling) {
            area += (rx - p.x) * (ceiling - p.y);
            ceiling = p.y;
        }
    }
    return area;
}

double hv2(std::span<const Vector> points, const Vector& ref)
{
    std::vector<Point2> pts;
    for (const auto& p : points) {
        if (p[0] < ref[0] && p[1] < ref[1]) {
            pts.push_back({p[0], p[1]});
        }
    }
    return sweep2(pts, ref[0], ref[1]);
}

double hv3(std::span<const Vector> points, const Vector& ref)
{
    std::vector<const Vector*> inside;
    for (const auto& p : points) {
        if (p[0] < ref[0] && p[1] < ref[1] && p[2] < ref[2]) {
            inside.push_back(&p);
        }
    }
    std::sort(inside.begin(), inside.end(), [](const Vector* a, const Vector* b) { return (*a)[2] < (*b)[2]; });

    double volume = 0.0;
    std::vector<Point2> slab;
    for (std::size_t k = 0; k < inside.size(); ++k) {
        slab.push_back({(*inside[k])[0], (*inside[k])[1]});
        const double z = (*inside[k])[2];
        const double z_next = k + 1 < inside.size() ? (*inside[k + 1])[2] : ref[2];
        if (z_next <= z) {
            continue;
        }
        std::vector<Point2> work = slab;
        volume += sweep2(work, ref[0], ref[1]) * (z_next - z);
    }
    return volume;
}

} // namespace

double hypervolume(std::span<const Vector> points, const Vector& ref)
{
    const auto m = ref.size();
    if (m != 2 && m != 3) {
        throw NotSupported("hypervolume: only 2 or 3 objectives are supported");
    }
    for (const auto& p : points) {
        require(p.size() == m, "hypervolume: objective count mismatch");
    }
    return m == 2 ? hv2(points, ref) : hv3(points, ref);
}

double hypervolume(const Population& front, const Vector& ref)
{
    const auto objectives = front.objective_vectors();
    return hypervolume(objectives, ref);
}

std::vector<double> ihv_contributions(std::span<const Vector> points, const Vector& ref)
{
    const double total = hypervolume(points, ref);
    const auto nd = nondominated_indices(points);
    std::vector<double> contributions(points.size(), 0.0);
    std::vector<Vector> rest;
    rest.reserve(points.size());
    for (auto i : nd) {
        bool duplicated = false;
        for (std::size_t j = 0; j < points.size() && !duplicated; ++j) {
            duplicated = j != i && points[j] == points[i];
        }
        if (duplicated) {
            continue;
        }
        rest.clear();
        for (auto j : nd) {
            if (j != i) {
                rest.push_back(points[j]);
            }
        }
        contributions[i] = std::max(0.0, total - hypervolume(rest, ref));
    }
    return contributions;
}

Vector experiment_reference(std::span<const Vector> true_front)
{
    require(!true_front.empty(), "experiment_reference: empty front");
    Vector lo = true_front.front();
    Vector hi = true_front.front();
    for (const auto& f : true_front) {
        lo = lo.cwiseMin(f);
        hi = hi.cwiseMax(f);
    }
    Vector ref(hi.size());
    for (Eigen::Index i = 0; i < hi.size(); ++i) {
        if (hi[i] > 0.0) {
            ref[i] = 1.1 * hi[i];
        } else {
            const double range = hi[i] - lo[i];
            ref[i] = hi[i] + (range > 0.0 ? 0.1 * range : 0.1);
        }
    }
    return ref;
}

} // namespace dmi
