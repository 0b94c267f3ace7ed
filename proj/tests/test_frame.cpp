#include <doctest.h>

#include <cmath>
#include <random>

#include "geosteer/errors.hpp"
#include "geosteer/frame.hpp"

using namespace geosteer;

namespace {

State random_in_annulus(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> radius(lo, hi);
    const double a = angle(rng), r = radius(rng);
    return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace

TEST_CASE("paper frame fields and Jacobians") {
    const FrameField f = paper_frame();
    const Vec2 v1 = f.f1({1.0, 0.0});
    CHECK(v1.x == 1.0);
    CHECK(v1.y == 0.0);
    const Vec2 v2 = f.f2({1.0, 0.0});
    CHECK(v2.x == 0.0);
    CHECK(v2.y == -1.0);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const State q = random_in_annulus(rng, 0.1, 10.0);
        const Mat2 j1 = f.jac1(q);
        CHECK(j1.a11 == 1.0);
        CHECK(j1.a12 == 0.0);
        CHECK(j1.a21 == 0.0);
        CHECK(j1.a22 == 1.0);
        const Mat2 j2 = f.jac2(q);
        CHECK(j2.a11 == 0.0);
        CHECK(j2.a12 == 1.0);
        CHECK(j2.a21 == -1.0);
        CHECK(j2.a22 == 0.0);
    }
}

TEST_CASE("paper frame is orthogonal with |f1| = |f2| = |q|") {
    const FrameField f = paper_frame();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const State q = random_in_annulus(rng, 0.05, 20.0);
        const double qq = q.q1 * q.q1 + q.q2 * q.q2;
        CHECK(std::abs(dot(f.f1(q), f.f2(q))) <= 1e-12 * qq);
        CHECK(std::abs(norm2(f.f1(q)) - qq) <= 1e-12 * qq);
        CHECK(std::abs(norm2(f.f2(q)) - qq) <= 1e-12 * qq);
    }
}

TEST_CASE("builtin frame registry") {
    const FrameField half = builtin_frame("halfplane");
    const Vec2 h1 = half.f1({0.0, 2.0});
    CHECK(h1.x == 2.0);
    CHECK(h1.y == 0.0);

    const FrameField gru = builtin_frame("grushin");
    const Vec2 g2 = gru.f2({3.0, 5.0});
    CHECK(g2.x == 0.0);
    CHECK(g2.y == 3.0);

    CHECK_THROWS_AS(builtin_frame("nope"), UnknownFrameError);
    try {
        builtin_frame("nope");
    } catch (const UnknownFrameError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("paper") != std::string::npos);
        CHECK(msg.find("halfplane") != std::string::npos);
        CHECK(msg.find("grushin") != std::string::npos);
    }
}

TEST_CASE("frame_inner pairing") {
    CHECK(frame_inner({0.0, 1.0}, {1.0, 0.0}) == 0.0);
    CHECK(frame_inner({1.0, 0.0}, {1.0, 1.0}) == 1.0);
    CHECK(frame_inner({2.0, 3.0}, {4.0, -1.0}) == 5.0);
}

TEST_CASE("analytic Jacobians agree with central differences") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> wide(-5.0, 5.0);
    std::uniform_real_distribution<double> pos(0.5, 5.0);
    for (const char* name : {"paper", "halfplane", "grushin"}) {
        const FrameField frame = builtin_frame(name);
        for (int i = 0; i < 50; ++i) {
            State q{wide(rng), wide(rng)};
            if (frame.name == "halfplane") q.q2 = pos(rng);
            if (frame.name == "grushin") q.q1 = pos(rng);
            if (frame.name == "paper" && norm(q.as_vec()) < 0.1) q.q1 += 1.0;
            const double h = fd_step(q);
            const double tol = 10.0 * h * h;
            for (const bool second : {false, true}) {
                const auto field = second ? frame.f2 : frame.f1;
                const Mat2 analytic = second ? frame.jac2(q) : frame.jac1(q);
                const Mat2 fd = finite_difference_jacobian(field)(q);
                CHECK(std::abs(analytic.a11 - fd.a11) <= tol);
                CHECK(std::abs(analytic.a12 - fd.a12) <= tol);
                CHECK(std::abs(analytic.a21 - fd.a21) <= tol);
                CHECK(std::abs(analytic.a22 - fd.a22) <= tol);
            }
        }
    }
}

TEST_CASE("degeneracy guard refuses the frame's singular set") {
    const FrameField paper = paper_frame();
    CHECK(paper.degenerate_at({0.0, 0.0}));
    CHECK(paper.degenerate_at({1e-6, 0.0}));  // gram determinant below threshold
    CHECK_FALSE(paper.degenerate_at({1.0, 0.0}));
    CHECK_THROWS_AS(paper.require_valid({0.0, 0.0}), DegenerateFrameError);

    const FrameField half = builtin_frame("halfplane");
    CHECK(half.degenerate_at({1.0, -1.0}));
    CHECK_FALSE(half.degenerate_at({1.0, 1.0}));

    const FrameField gru = builtin_frame("grushin");
    CHECK(gru.degenerate_at({0.0, 3.0}));
    CHECK_FALSE(gru.degenerate_at({2.0, 3.0}));
}

TEST_CASE("control norm stays finite at large magnitudes") {
    const Control u{1e6, -1e6};
    CHECK(std::isfinite(u.norm2()));
    CHECK(u.norm2() == 2e12);
    CHECK(u.norm() == doctest::Approx(std::sqrt(2.0) * 1e6));
}

TEST_CASE("gram determinant matches its definition") {
    const FrameField paper = paper_frame();
    const State q{2.0, 1.0};
    const double qq = 5.0;
    CHECK(paper.gram_det(q) == doctest::Approx(qq * qq).epsilon(1e-14));
}
