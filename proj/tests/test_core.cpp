#include <catch2/catch_amalgamated.hpp>

#include "dlg/angle.hpp"
#include "dlg/quadrature.hpp"

using namespace dlg;

TEST_CASE("exact angle arithmetic is closed over rationals") {
    Angle a = Angle::exact(1, 3), b = Angle::exact(5, 6);
    CHECK((a + b).rational() == Rational(1, 6));
    CHECK((a - b).rational() == Rational(1, 2));
    CHECK((-a).rational() == Rational(2, 3));
    CHECK(a.scaled(4).rational() == Rational(1, 3));
    CHECK(Angle::exact(-7, 3).rational() == Rational(2, 3));
}

TEST_CASE("no drift after many exact operations with bounded denominators") {
    // denominators stay within lcm of inputs
    Rng rng(12345);
    Angle acc = Angle::exact(0, 1);
    long long worst_den = 1;
    for (int i = 0; i < 1000000; ++i) {
        Angle x = Angle::exact(rng.next_int(24) - 12, 1 + rng.next_int(12));
        acc = (i % 2 == 0) ? acc + x : acc - x;
        worst_den = std::max(worst_den, acc.rational().denominator());
    }
    CHECK(worst_den <= 27720);  // lcm(1..12)
    CHECK(acc.rational().denominator() <= 27720);
}

TEST_CASE("floating angle reduces mod 1") {
    Angle a = Angle::real(2.75), b = Angle::real(-0.5);
    CHECK(a.value() == Catch::Approx(0.75));
    CHECK(b.value() == Catch::Approx(0.5));
    CHECK((a + b).value() == Catch::Approx(0.25));
    CHECK(a.defect() == Catch::Approx(0.25));
}

TEST_CASE("mixed backend demotes to floating") {
    Angle a = Angle::exact(1, 4), b = Angle::real(0.25);
    CHECK_FALSE((a + b).is_exact());
    CHECK((a + b).value() == Catch::Approx(0.5));
}

static double factorial(int n) {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// closed form: int over unit simplex of prod x_i^{a_i} = prod a_i! / (d + sum a_i)!
static double monomial_integral(const VecI& a) {
    int d = int(a.size());
    int s = 0;
    double num = 1;
    for (int ai : a) { s += ai; num *= factorial(ai); }
    return num / factorial(d + s);
}

TEST_CASE("simplex rules integrate monomials exactly up to their degree") {
    for (int dim = 1; dim <= 4; ++dim) {
        for (int s = 0; s <= 3; ++s) {
            int deg = 2 * s + 1;
            // sweep all monomials with total degree <= deg
            VecI a(dim, 0);
            std::function<void(int, int)> sweep = [&](int pos, int rem) {
                if (pos == dim) {
                    QuadOpts o;
                    o.rule = s;
                    o.tol = 1e30;  // disable refinement: test the bare rule
                    double got = integrate_unit_simplex(dim, [&](const VecD& x) {
                        double v = 1;
                        for (int j = 0; j < dim; ++j)
                            for (int k = 0; k < a[j]; ++k) v *= x[j];
                        return v;
                    }, o);
                    double want = monomial_integral(a);
                    INFO("dim=" << dim << " s=" << s);
                    CHECK(got == Catch::Approx(want).margin(1e-13));
                    return;
                }
                for (int v = 0; v <= rem; ++v) { a[pos] = v; sweep(pos + 1, rem - v); }
                a[pos] = 0;
            };
            sweep(0, deg);
        }
    }
}

TEST_CASE("adaptive refinement handles a non-polynomial integrand") {
    // int over unit triangle of exp(x+y) = exp(1)... compute: iterated integral
    // int_0^1 int_0^{1-x} e^{x+y} dy dx = int_0^1 (e - e^x) dx = e - (e - 1) = 1.
    QuadOpts o;
    o.rule = 1;
    o.tol = 1e-10;
    double got = integrate_unit_simplex(2, [](const VecD& x) { return std::exp(x[0] + x[1]); }, o);
    CHECK(got == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("circle average integrates smooth periodic functions") {
    double got = circle_average(32, [](double t) { return std::sin(2 * M_PI * t) * std::sin(2 * M_PI * t); });
    CHECK(got == Catch::Approx(0.5).margin(1e-12));
}
