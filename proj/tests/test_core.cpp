#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gfs/fft.hpp"
#include "gfs/tensor.hpp"
#include "oracles.hpp"

using namespace gfs;

namespace {

double max_abs_diff(const ComplexTensor3& a, const ComplexTensor3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double max_abs_diff(const RealTensor3& a, const RealTensor3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

} // namespace

TEST_CASE("Grid2D enforces square side >= 2") {
    CHECK_THROWS_AS(Grid2D(3, 4), ShapeError);
    CHECK_THROWS_AS(Grid2D(1), ShapeError);
    CHECK(Grid2D(5).cells() == 25);
}

TEST_CASE("per_frequency_vectors enumerates bins lexicographically") {
    ComplexTensor3 t(2, 3);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 3; ++k) t.at(i, j, k) = cplx(i * 10 + j, k);
    std::vector<std::pair<int, int>> order;
    for (FrequencyBin bin : per_frequency_vectors(t)) {
        order.emplace_back(bin.i(), bin.j());
        CHECK(bin.channels() == 3);
    }
    CHECK(order == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("per_frequency_vectors write-back is the identity") {
    std::mt19937_64 rng(7);
    ComplexTensor3 t(4, 2);
    for (cplx& v : t.data()) v = cplx(oracle::gauss(rng), oracle::gauss(rng));
    const ComplexTensor3 copy = t;
    for (FrequencyBin bin : per_frequency_vectors(t)) bin.from_vector(bin.to_vector());
    CHECK(max_abs_diff(t, copy) == 0.0);
}

TEST_CASE("per_frequency_vectors on constant channels") {
    ComplexTensor3 t(3, 3);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.at(i, j, k) = cplx(k + 1, 0);
    for (FrequencyBin bin : per_frequency_vectors(t)) {
        const auto v = bin.to_vector();
        for (int k = 0; k < 3; ++k) CHECK(v[k] == cplx(k + 1, 0));
    }
}

TEST_CASE("dft2 of all-ones is DC only") {
    RealTensor3 ones(4, 1, 1.0);
    const ComplexTensor3 s = dft2(ones);
    CHECK(s.from_real_dft);
    CHECK(std::abs(s.at(0, 0, 0) - cplx(16, 0)) < 1e-12);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i || j) CHECK(std::abs(s.at(i, j, 0)) < 1e-12);
}

TEST_CASE("dft2 of a delta is flat") {
    RealTensor3 delta(4, 1, 0.0);
    delta.at(0, 0, 0) = 1.0;
    const ComplexTensor3 s = dft2(delta);
    for (const cplx& v : s.data()) CHECK(std::abs(v - cplx(1, 0)) < 1e-12);
}

TEST_CASE("dft2 matches the O(N^4) direct summation") {
    std::mt19937_64 rng(11);
    const RealTensor3 t = oracle::random_tensor(4, 2, rng);
    CHECK(max_abs_diff(dft2(t), oracle::brute_dft2(t)) < 1e-10);
}

TEST_CASE("dft2 rejects non-finite input") {
    RealTensor3 t(4, 1, 0.0);
    t.at(1, 2, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(dft2(t), NumericError);
}

TEST_CASE("idft2 round trip") {
    std::mt19937_64 rng(13);
    const RealTensor3 t = oracle::random_tensor(8, 3, rng);
    CHECK(max_abs_diff(idft2(dft2(t)), t) < 1e-10);
}

TEST_CASE("idft2 of a DC-only spectrum is constant") {
    ComplexTensor3 s(4, 1);
    s.at(0, 0, 0) = cplx(16, 0);
    const RealTensor3 t = idft2(s);
    for (double v : t.data()) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("idft2 rejects an asymmetric spectrum") {
    RealTensor3 ones(4, 1, 1.0);
    ComplexTensor3 s = dft2(ones);
    s.at(1, 2, 0) += cplx(1e-3, 1e-3);
    CHECK_THROWS_AS(idft2(s), SymmetryError);
}

TEST_CASE("circ_correlate with a delta filter sums channels") {
    std::mt19937_64 rng(17);
    const RealTensor3 a = oracle::random_tensor(4, 3, rng);
    RealTensor3 w(4, 3, 0.0);
    for (int k = 0; k < 3; ++k) w.at(0, 0, k) = 1.0;
    const RealMatrix r = circ_correlate(a, w);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double expect = 0.0;
            for (int k = 0; k < 3; ++k) expect += a.at(i, j, k);
            CHECK(r.at(i, j) == doctest::Approx(expect).epsilon(1e-10));
        }
}

TEST_CASE("autocorrelation of a centred bump peaks at zero lag") {
    RealTensor3 bump(8, 1, 0.0);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double di = i <= 4 ? i : i - 8;
            const double dj = j <= 4 ? j : j - 8;
            bump.at(i, j, 0) = std::exp(-(di * di + dj * dj) / 4.0);
        }
    const RealMatrix r = circ_correlate(bump, bump);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            if (i || j) CHECK(r.at(0, 0) > r.at(i, j));
}

TEST_CASE("circ_correlate matches the spatial-domain loop") {
    std::mt19937_64 rng(19);
    const RealTensor3 a = oracle::random_tensor(4, 2, rng);
    const RealTensor3 w = oracle::random_tensor(4, 2, rng);
    CHECK(max_abs_diff(circ_correlate(a, w), oracle::brute_circ_correlate(a, w)) < 1e-9);
}

TEST_CASE("circ_correlate rejects mismatched shapes") {
    RealTensor3 a(4, 2), w(4, 3);
    CHECK_THROWS_AS(circ_correlate(a, w), ShapeError);
}

TEST_CASE("DFT linearity, Parseval and round trip on random tensors") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(oracle::uniform01(rng) * 31);
        const int c = 1 + static_cast<int>(oracle::uniform01(rng) * 8);
        const RealTensor3 a = oracle::random_tensor(n, c, rng);
        const RealTensor3 b = oracle::random_tensor(n, c, rng);
        const double alpha = oracle::gauss(rng);
        const double beta = oracle::gauss(rng);

        // linearity
        RealTensor3 lin(n, c);
        for (std::size_t m = 0; m < lin.size(); ++m)
            lin.data()[m] = alpha * a.data()[m] + beta * b.data()[m];
        ComplexTensor3 expect = dft2(a);
        const ComplexTensor3 bs = dft2(b);
        for (std::size_t m = 0; m < expect.size(); ++m)
            expect.data()[m] = alpha * expect.data()[m] + beta * bs.data()[m];
        CHECK(max_abs_diff(dft2(lin), expect) < 1e-9 * std::max(1.0, frobenius_norm(lin)));

        // Parseval per channel
        const ComplexTensor3 as = dft2(a);
        for (int k = 0; k < c; ++k) {
            double spatial = 0.0, freq = 0.0;
            for (double v : a.channel(k)) spatial += v * v;
            const std::size_t plane = static_cast<std::size_t>(n) * n;
            for (std::size_t m = 0; m < plane; ++m) freq += std::norm(as.data()[k * plane + m]);
            CHECK(spatial == doctest::Approx(freq / (n * n)).epsilon(1e-9));
        }

        // round trip
        CHECK(max_abs_diff(idft2(as), a) < 1e-10);
    }
}

TEST_CASE("correlation equals the brute-force definition on random instances") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(oracle::uniform01(rng) * 7);
        const int c = 1 + static_cast<int>(oracle::uniform01(rng) * 4);
        const RealTensor3 a = oracle::random_tensor(n, c, rng);
        const RealTensor3 w = oracle::random_tensor(n, c, rng);
        CHECK(max_abs_diff(circ_correlate(a, w), oracle::brute_circ_correlate(a, w)) < 1e-9);
    }
}

TEST_CASE("circular_shift moves content modulo N") {
    std::mt19937_64 rng(31);
    const RealTensor3 t = oracle::random_tensor(5, 2, rng);
    const RealTensor3 s = circular_shift(t, 2, -1);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                CHECK(s.at((i + 2) % 5, (j + 4) % 5, k) == t.at(i, j, k));
    const RealTensor3 back = circular_shift(s, -2, 1);
    CHECK(max_abs_diff(back, t) == 0.0);
}
