#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "netmon/dissim.hpp"
#include "netmon/error.hpp"
#include "support.hpp"

using namespace netmon;

TEST_CASE("pccd hand examples") {
    Eigen::MatrixXd data(4, 4);
    data.col(0) << 1, -1, 1, -1;
    data.col(1) << 1, 1, -1, -1;
    data.col(2) = data.col(0);
    data.col(3) = -data.col(0);
    const auto h = pccd_values(data, testing::letters(4));
    CHECK(h(0, 2) == doctest::Approx(0.0));
    CHECK(h(0, 3) == doctest::Approx(2.0));
    CHECK(h(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(h(0, 1) == doctest::Approx(1.4142136).epsilon(1e-7));
    CHECK(h.diagonal().isZero());
}

TEST_CASE("pccd errors") {
    Eigen::MatrixXd data(5, 2);
    data.col(0) << 1, 2, 3, 4, 5;
    data.col(1).setConstant(0.3);
    try {
        pccd_values(data, {"AAA", "BBB"});
        FAIL("expected an error");
    } catch (const NumericalError& e) {
        CHECK(std::string(e.what()).find("BBB") != std::string::npos);
    }
    CHECK_THROWS_AS(pccd_values(Eigen::MatrixXd::Random(2, 3), testing::letters(3)), DataError);
}

TEST_CASE("pccd metric axioms on random windows") {
    testing::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto data = testing::random_returns(63, 8, rng);
        const auto h = pccd_values(data, testing::letters(8));
        CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(h.minCoeff() >= 0.0);
        CHECK(h.maxCoeff() <= 2.0);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                if (i != j) CHECK(h(i, j) > 0.0);
                for (int k = 0; k < 8; ++k) CHECK(h(i, k) <= h(i, j) + h(j, k) + 1e-9);
            }
    }
}

TEST_CASE("pccd invariant under positive affine transforms") {
    testing::Rng rng(5);
    std::uniform_real_distribution<double> a(-3, 3), b(0.1, 10);
    for (int trial = 0; trial < 50; ++trial) {
        auto data = testing::random_returns(40, 5, rng);
        const auto before = pccd_values(data, testing::letters(5));
        for (int c = 0; c < 5; ++c) data.col(c) = (data.col(c).array() * b(rng) + a(rng)).matrix();
        const auto after = pccd_values(data, testing::letters(5));
        CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("fit_var recovers a scalar AR(1)") {
    testing::Rng rng(2024);
    const std::vector<Eigen::MatrixXd> b = {Eigen::MatrixXd::Constant(1, 1, 0.5)};
    const auto y = testing::simulate_var(b, Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), 5000, rng);
    const auto model = fit_var(y, 1, 0.0);
    REQUIRE(model.coefficients.size() == 1);
    CHECK(std::abs(model.coefficients[0](0, 0) - 0.5) < 0.05);
    CHECK(model.n_obs == 4999);
    REQUIRE(model.std_errors.has_value());
    CHECK((*model.std_errors)(0, 0) == doctest::Approx(std::sqrt(0.75 / 5000)).epsilon(0.1));
}

TEST_CASE("fit_var on white noise") {
    testing::Rng rng(99);
    const Eigen::MatrixXd y = testing::random_normal(5000, 2, rng);
    const auto model = fit_var(y, 1, 0.0);
    CHECK(model.coefficients[0].cwiseAbs().maxCoeff() < 0.05);
    CHECK((model.residual_covariance - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.1);
    const Eigen::MatrixXd& s = model.residual_covariance;
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues().minCoeff() >= -1e-10);
    CHECK(model.intercept.isZero());
}

TEST_CASE("fit_var preconditions and ridge") {
    testing::Rng rng(1);
    const Eigen::MatrixXd tiny = testing::random_normal(2, 2, rng);
    try {
        fit_var(tiny, 1, 0.0);
        FAIL("expected an error");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("insufficient observations for OLS") != std::string::npos);
    }
    CHECK_THROWS_AS(fit_var(tiny, 0, 0.0), UsageError);
    CHECK_THROWS_AS(fit_var(tiny, 2, 1.0), DataError);

    // 28 series, 63 rows: identifiable by OLS at p = 1; p = 2 needs the ridge
    const Eigen::MatrixXd wide = testing::random_returns(63, 28, rng);
    CHECK_NOTHROW(fit_var(wide, 1, 0.0));
    CHECK_THROWS_AS(fit_var(wide, 3, 0.0), DataError);
    const auto ridge = fit_var(wide, 3, auto_ridge_lambda(wide));
    CHECK(ridge.coefficients.size() == 3);
    CHECK_FALSE(ridge.std_errors.has_value());
    CHECK(ridge.ridge_lambda > 0.0);

    // collinear columns make the cross-product singular
    Eigen::MatrixXd collinear = testing::random_normal(50, 3, rng);
    collinear.col(2) = collinear.col(0);
    CHECK_THROWS_AS(fit_var(collinear, 1, 0.0), NumericalError);
}

TEST_CASE("ma_coefficients examples") {
    const auto zero = ma_coefficients({Eigen::MatrixXd::Zero(3, 3)}, 3, 4);
    REQUIRE(zero.size() == 4);
    CHECK(zero[0] == Eigen::MatrixXd::Identity(3, 3));
    for (int k = 1; k < 4; ++k) CHECK(zero[static_cast<std::size_t>(k)].isZero());

    const auto ar = ma_coefficients({Eigen::MatrixXd::Constant(1, 1, 0.5)}, 1, 4);
    CHECK(ar[0](0, 0) == 1.0);
    CHECK(ar[1](0, 0) == 0.5);
    CHECK(ar[2](0, 0) == 0.25);
    CHECK(ar[3](0, 0) == 0.125);

    const Eigen::MatrixXd half = 0.5 * Eigen::MatrixXd::Identity(2, 2);
    const auto lag2 = ma_coefficients({Eigen::MatrixXd::Zero(2, 2), half}, 2, 5);
    CHECK(lag2[0] == Eigen::MatrixXd::Identity(2, 2));
    CHECK(lag2[1].isZero());
    CHECK(lag2[2] == half);
    CHECK(lag2[3].isZero());
    CHECK(lag2[4] == 0.25 * Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(ma_coefficients({half}, 2, 0), UsageError);
}

TEST_CASE("ma_coefficients match a simulated impulse response") {
    testing::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 3;
        const int p = 1 + trial % 3;
        const auto b = testing::random_stable_var(n, p, rng);
        const Eigen::MatrixXd sigma = testing::random_spd(n, rng);
        const Eigen::MatrixXd root = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sigma).operatorSqrt();
        const auto theta = ma_coefficients(b, n, 6);
        for (Eigen::Index j = 0; j < n; ++j) {
            // propagate a single shock through the noiseless recursion
            std::vector<Eigen::VectorXd> path;
            for (int k = 0; k <= 5; ++k) {
                Eigen::VectorXd y = k == 0 ? Eigen::VectorXd(root.col(j)) : Eigen::VectorXd::Zero(n);
                for (int l = 1; l <= p && k - l >= 0; ++l)
                    y += b[static_cast<std::size_t>(l - 1)] * path[static_cast<std::size_t>(k - l)];
                path.push_back(y);
                CHECK((y - theta[static_cast<std::size_t>(k)] * root.col(j)).cwiseAbs().maxCoeff() <= 1e-8);
            }
        }
    }
}

namespace {

// Element-by-element evaluation of the generalised share formula.
Eigen::MatrixXd gvd_oracle(const std::vector<Eigen::MatrixXd>& b, const Eigen::MatrixXd& sigma, int horizon) {
    const Eigen::Index n = sigma.rows();
    std::vector<Eigen::MatrixXd> theta = {Eigen::MatrixXd::Identity(n, n)};
    for (int k = 1; k < horizon; ++k) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
        for (int j = 1; j <= k && j <= static_cast<int>(b.size()); ++j)
            t += b[static_cast<std::size_t>(j - 1)] * theta[static_cast<std::size_t>(k - j)];
        theta.push_back(t);
    }
    Eigen::MatrixXd nu(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::VectorXd ei = Eigen::VectorXd::Unit(n, i);
        double den = 0.0;
        for (const auto& t : theta) den += ei.dot(t * sigma * t.transpose() * ei);
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::VectorXd ej = Eigen::VectorXd::Unit(n, j);
            double num = 0.0;
            for (const auto& t : theta) num += std::pow(ei.dot(t * sigma * ej), 2);
            nu(i, j) = num / sigma(j, j) / den;
        }
    }
    for (Eigen::Index i = 0; i < n; ++i) nu.row(i) /= nu.row(i).sum();
    return nu;
}

}  // namespace

TEST_CASE("gvd_shares closed forms") {
    const auto ident = gvd_shares({Eigen::MatrixXd::Zero(3, 3)}, Eigen::MatrixXd::Identity(3, 3), 7);
    CHECK((ident.values - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(ident.horizon == 7);

    Eigen::MatrixXd sigma(2, 2);
    sigma << 1, 0.5, 0.5, 1;
    const auto two = gvd_shares({Eigen::MatrixXd::Zero(2, 2)}, sigma, 1);
    CHECK(std::abs(two.values(0, 0) - 0.8) <= 1e-12);
    CHECK(std::abs(two.values(0, 1) - 0.2) <= 1e-12);
    CHECK(std::abs(two.values(1, 0) - 0.2) <= 1e-12);

    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(1, 1) = 0.0;
    CHECK_THROWS_AS(gvd_shares({Eigen::MatrixXd::Zero(2, 2)}, bad, 3), NumericalError);
}

TEST_CASE("gvd_shares matches the elementwise oracle, sums rows to one, is order invariant") {
    testing::Rng rng(23);
    std::uniform_int_distribution<int> dim(2, 6), lags(1, 3), hor(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = dim(rng);
        const int p = lags(rng), k = hor(rng);
        const auto b = testing::random_stable_var(n, p, rng);
        const Eigen::MatrixXd sigma = testing::random_spd(n, rng);
        const auto shares = gvd_shares(b, sigma, k);
        CHECK((shares.values - gvd_oracle(b, sigma, k)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((shares.values.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-10);
        CHECK(shares.values.minCoeff() >= 0.0);
        CHECK(shares.values.maxCoeff() <= 1.0);

        Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
        perm.setIdentity();
        std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
        std::vector<Eigen::MatrixXd> pb;
        for (const auto& m : b) pb.push_back(perm * m * perm.transpose());
        const auto permuted = gvd_shares(pb, perm * sigma * perm.transpose(), k);
        const Eigen::MatrixXd expected = perm * shares.values * perm.transpose();
        CHECK((permuted.values - expected).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("gvdd conversion") {
    GvdShareMatrix ident{Eigen::MatrixXd::Identity(3, 3), 10};
    const auto d = gvdd(ident, testing::letters(3), 4, *parse_date("2021-05-05"));
    CHECK(d.kind == Measure::GVDD);
    CHECK(d.window_index == 4);
    CHECK(d.values.diagonal().isZero());
    CHECK(d.values(0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    Eigen::MatrixXd h(2, 2);
    h << 0.8, 0.2, 0.0, 1.0;
    const auto g = gvdd(GvdShareMatrix{h, 1}, {"x", "y"}, 0, *parse_date("2021-05-05"));
    CHECK(g.values(0, 1) == doctest::Approx(1.2649111).epsilon(1e-7));
    CHECK(g.values(1, 0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.values(0, 0) == 0.0);

    Eigen::MatrixXd full(2, 2);
    full << 0.0, 1.0, 0.5, 0.5;
    CHECK(gvdd(GvdShareMatrix{full, 1}, {"x", "y"}, 0, {}).values(0, 1) == 0.0);
}

TEST_CASE("gvdd over a window view") {
    testing::Rng rng(8);
    std::vector<Date> dates;
    Date d = *parse_date("2021-01-01");
    for (int i = 0; i < 70; ++i) {
        dates.push_back(d);
        d = Date{std::chrono::sys_days{d} + std::chrono::days{1}};
    }
    const ReturnPanel panel(dates, testing::letters(6), testing::random_returns(70, 6, rng));
    const auto windows = rolling_windows(panel, 63, 1);
    const auto g = gvdd(windows[2], GvddOptions{1, 10, 0.0});
    CHECK(g.window_end_date == dates[64]);
    CHECK(g.values.minCoeff() >= 0.0);
    CHECK(g.values.maxCoeff() <= 2.0);
    CHECK(g.values.diagonal().isZero());
    const auto auto_ridge = gvdd(windows[2], GvddOptions{2, 10, std::nullopt});
    CHECK(auto_ridge.values.allFinite());
    const auto p = pccd(windows[0]);
    CHECK(p.kind == Measure::PCCD);
    CHECK(p.labels == testing::letters(6));
}
