#include "geosteer/frame.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "geosteer/errors.hpp"

namespace geosteer {

double fd_step(const State& q) {
    static const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    return cbrt_eps * std::max(1.0, std::max(std::abs(q.q1), std::abs(q.q2)));
}

double FrameField::gram_det(const State& q) const {
    const Vec2 v1 = f1(q);
    const Vec2 v2 = f2(q);
    const double g12 = dot(v1, v2);
    return norm2(v1) * norm2(v2) - g12 * g12;
}

bool FrameField::degenerate_at(const State& q) const {
    if (domain_guard && !domain_guard(q)) return true;
    return gram_det(q) <= kDegeneracyEps * kDegeneracyEps;
}

void FrameField::require_valid(const State& q) const {
    if (!degenerate_at(q)) return;
    std::ostringstream msg;
    msg << "frame '" << name << "' is degenerate at q = (" << q.q1 << ", " << q.q2
        << "), gram determinant " << gram_det(q);
    throw DegenerateFrameError(msg.str(), q.q1, q.q2, gram_det(q));
}

FrameField paper_frame() {
    FrameField f;
    f.name = "paper";
    f.f1 = [](const State& q) { return Vec2{q.q1, q.q2}; };
    f.f2 = [](const State& q) { return Vec2{q.q2, -q.q1}; };
    f.jac1 = [](const State&) { return Mat2::identity(); };
    f.jac2 = [](const State&) { return Mat2{0.0, 1.0, -1.0, 0.0}; };
    f.domain_guard = [](const State& q) {
        return q.q1 * q.q1 + q.q2 * q.q2 > kDegeneracyEps;
    };
    return f;
}

namespace {

FrameField halfplane_frame() {
    FrameField f;
    f.name = "halfplane";
    f.f1 = [](const State& q) { return Vec2{q.q2, 0.0}; };
    f.f2 = [](const State& q) { return Vec2{0.0, q.q2}; };
    f.jac1 = [](const State&) { return Mat2{0.0, 1.0, 0.0, 0.0}; };
    f.jac2 = [](const State&) { return Mat2{0.0, 0.0, 0.0, 1.0}; };
    f.domain_guard = [](const State& q) { return q.q2 > kDegeneracyEps; };
    return f;
}

FrameField grushin_frame() {
    FrameField f;
    f.name = "grushin";
    f.f1 = [](const State&) { return Vec2{1.0, 0.0}; };
    f.f2 = [](const State& q) { return Vec2{0.0, q.q1}; };
    f.jac1 = [](const State&) { return Mat2{}; };
    f.jac2 = [](const State&) { return Mat2{0.0, 0.0, 1.0, 0.0}; };
    f.domain_guard = [](const State& q) { return std::abs(q.q1) > kDegeneracyEps; };
    return f;
}

}  // namespace

const std::vector<std::string>& builtin_frame_names() {
    static const std::vector<std::string> names = {"paper", "halfplane", "grushin"};
    return names;
}

FrameField builtin_frame(const std::string& name) {
    if (name == "paper") return paper_frame();
    if (name == "halfplane") return halfplane_frame();
    if (name == "grushin") return grushin_frame();
    std::ostringstream msg;
    msg << "unknown frame '" << name << "' (valid names:";
    for (const auto& n : builtin_frame_names()) msg << " " << n;
    msg << ")";
    throw UnknownFrameError(msg.str());
}

std::function<Mat2(const State&)> finite_difference_jacobian(
    std::function<Vec2(const State&)> f) {
    return [f = std::move(f)](const State& q) {
        const double h = fd_step(q);
        const Vec2 dx = (f({q.q1 + h, q.q2}) - f({q.q1 - h, q.q2})) * (1.0 / (2.0 * h));
        const Vec2 dy = (f({q.q1, q.q2 + h}) - f({q.q1, q.q2 - h})) * (1.0 / (2.0 * h));
        return Mat2{dx.x, dy.x, dx.y, dy.y};
    };
}

}  // namespace geosteer
