#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "mok/operators.hpp"
#include "mok/rng.hpp"

using namespace mok;

TEST_CASE("dual conjugates coordinates") {
    BlockSpace sp({2});
    VectorXcd e1(2);
    e1 << 1.0, 0.0;
    CHECK(dual_coords(e1) == e1); // real basis vector fixed

    VectorXcd v(2);
    v << cd(0, 1), 0.0;
    VectorXcd d = dual_coords(v);
    CHECK(d(0) == cd(0, -1));
    CHECK(d(1) == cd(0, 0));

    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
        TangentVector x{rng.cgaussian_vector(5), BlockSpace({5})};
        CHECK(dual(TangentVector{dual(x).coords, x.space}).coords == x.coords);
    }
}

TEST_CASE("rank1 outer product and layout") {
    VectorXcd t(2), f(2);
    t << 1.0, 0.0;
    f << 0.0, 1.0;
    MatrixXcd a = rank1_matrix(t, f);
    CHECK(a(0, 1) == cd(1, 0));
    CHECK(a.norm() == 1.0);

    Rng rng(2);
    VectorXcd u = rng.cgaussian_vector(4), v = rng.cgaussian_vector(4);
    MatrixXcd b = rank1_matrix(u, v);
    Eigen::JacobiSVD<MatrixXcd> svd(b);
    CHECK(svd.singularValues()(0) == doctest::Approx(u.norm() * v.norm()).epsilon(1e-12));
    for (int i = 1; i < 4; ++i) CHECK(svd.singularValues()(i) < 1e-12 * svd.singularValues()(0));

    // flattened index of (alpha, beta) is alpha*n + beta
    VectorXcd fl = flatten(b);
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) CHECK(fl(al * 4 + be) == u(al) * v(be));

    CHECK_THROWS_AS(rank1_matrix(VectorXcd::Zero(3), v.head(3)), ZeroInputError);
    CHECK_THROWS_AS(rank1_matrix(u, VectorXcd::Zero(4)), ZeroInputError);
}

TEST_CASE("flatten roundtrip is exact up to n = 30") {
    Rng rng(3);
    for (int n : {1, 2, 7, 30}) {
        MatrixXcd a = rng.cgaussian_matrix(n, n);
        CHECK(unflatten(flatten(a)) == a);
    }
}

TEST_CASE("block space validation and embedding") {
    CHECK_THROWS_AS(BlockSpace({2, 0}), DimensionMismatchError);
    BlockSpace sp({2, 3});
    CHECK(sp.total_dim() == 5);
    CHECK(sp.offset(1) == 2);
    VectorXcd v(3);
    v << 1.0, 2.0, 3.0;
    VectorXcd e = sp.embed(v, 1);
    CHECK(e(0) == cd(0, 0));
    CHECK(e(2) == cd(1, 0));
    CHECK(sp.block_of(e, 1) == v);
}

TEST_CASE("kernel_basis: identity has empty kernel") {
    BlockSpace sp({2});
    CurvatureTypeTensor sigma(MatrixXcd::Identity(4, 4), sp);
    CHECK(kernel_basis(sigma, 1e-8).empty());
}

TEST_CASE("kernel_basis: invertible diagonal blocks, zero off-diagonal") {
    // kernel is the sum of the off-diagonal blocks T_i (x) T_j^dual, i != j
    Rng rng(4);
    BlockSpace sp({2, 3});
    const int n = 5;
    MatrixXcd op = MatrixXcd::Zero(25, 25);
    for (int i = 0; i < 2; ++i) {
        const int d = sp.dim(i), off = sp.offset(i);
        MatrixXcd blk = rng.cgaussian_matrix(d * d, d * d);
        blk += 3.0 * d * MatrixXcd::Identity(d * d, d * d); // safely invertible
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c)
                    for (int e = 0; e < d; ++e)
                        op((off + a) * n + (off + b), (off + c) * n + (off + e)) =
                            blk(a * d + b, c * d + e);
    }
    CurvatureTypeTensor sigma(op, sp);
    auto basis = kernel_basis(sigma, 1e-8);
    CHECK(basis.size() == 2 * 2 * 3); // sum over i != j of n_i n_j

    // orthonormal within 1e-10, and each vector is near-annihilated
    Eigen::JacobiSVD<MatrixXcd> svd(sigma.op);
    const double smax = svd.singularValues()(0);
    for (size_t i = 0; i < basis.size(); ++i) {
        CHECK(sigma.apply(basis[i].mat).norm() <= 2e-8 * smax * basis[i].mat.norm());
        for (size_t j = 0; j < basis.size(); ++j) {
            const cd g = (basis[j].mat.conjugate().cwiseProduct(basis[i].mat)).sum();
            CHECK(std::abs(g - (i == j ? cd(1, 0) : cd(0, 0))) < 1e-10);
        }
    }
}

namespace {

// Independent construction of the type I(2,2) curvature operator from raw
// 2x2 matrix arithmetic: sigma(x (x) cy) = D(x,y), D(x,y)z = x y* z + z y* x.
MatrixXcd sigma_i22_oracle() {
    auto unit = [](int a) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(a / 2, a % 2) = 1.0;
        return m;
    };
    MatrixXcd op(16, 16);
    for (int al = 0; al < 4; ++al)
        for (int be = 0; be < 4; ++be) {
            MatrixXcd x = unit(al), y = unit(be);
            // column = flattened matrix of the operator D(e_al, e_be)
            MatrixXcd dcol(4, 4);
            for (int g = 0; g < 4; ++g) {
                MatrixXcd z = unit(g);
                MatrixXcd d = x * y.adjoint() * z + z * y.adjoint() * x;
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) dcol(2 * r + c, g) = d(r, c);
            }
            op.col(al * 4 + be) = flatten(dcol);
        }
    return op;
}

} // namespace

TEST_CASE("kernel_basis: type I(2,2) curvature operator has kernel dimension 9") {
    BlockSpace sp({4});
    CurvatureTypeTensor sigma(sigma_i22_oracle(), sp);
    Eigen::JacobiSVD<MatrixXcd> svd(sigma.op);
    int null_dim = 0;
    for (int i = 0; i < 16; ++i)
        if (svd.singularValues()(i) < 1e-8 * svd.singularValues()(0)) ++null_dim;
    CHECK(null_dim == 9); // both partial traces vanish: 16 - 4 - 3 = 9
    CHECK(kernel_basis(sigma, 1e-8).size() == 9);
}

TEST_CASE("block_component addressing and exact tiling") {
    Rng rng(5);
    BlockSpace sp({2, 3});
    const int n = 5;
    MatrixXcd op = rng.cgaussian_matrix(25, 25);
    CurvatureTypeTensor sigma(op, sp);

    CHECK_THROWS_AS(block_component(sigma, 0, 0, 2, 0), IndexOutOfRangeError);

    CurvatureTypeTensor id(MatrixXcd::Identity(25, 25), sp);
    MatrixXcd b = block_component(id, 0, 1, 0, 1);
    CHECK(b == MatrixXcd::Identity(6, 6));
    CHECK(block_component(id, 0, 1, 1, 0).norm() == 0.0);

    // reassemble all sixteen blocks and compare entrywise
    MatrixXcd rebuilt = MatrixXcd::Zero(25, 25);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int h = 0; h < 2; ++h)
                for (int k = 0; k < 2; ++k) {
                    MatrixXcd blk = block_component(sigma, i, j, h, k);
                    for (int a = 0; a < sp.dim(h); ++a)
                        for (int c = 0; c < sp.dim(k); ++c)
                            for (int u = 0; u < sp.dim(i); ++u)
                                for (int v = 0; v < sp.dim(j); ++v)
                                    rebuilt((sp.offset(h) + a) * n + (sp.offset(k) + c),
                                            (sp.offset(i) + u) * n + (sp.offset(j) + v)) =
                                        blk(a * sp.dim(k) + c, u * sp.dim(j) + v);
                }
    CHECK(rebuilt == op);
}

TEST_CASE("invariance residual and group averaging") {
    Rng rng(6);
    BlockSpace sp({3});
    MatrixXcd op = rng.cgaussian_matrix(9, 9);
    CurvatureTypeTensor sigma(op, sp);

    GroupElementSample id{MatrixXcd::Identity(3, 3), sp};
    CHECK(invariance_residual(sigma, id) == 0.0);
    CHECK(id.unitarity_defect() == 0.0);

    // a generic operator is visibly non-invariant
    GroupElementSample g{rng.haar_unitary(3), sp};
    CHECK(invariance_residual(sigma, g) > 1e-2);

    // averaging with the identity sample alone changes nothing
    MatrixXcd avg = group_average(op, {id});
    CHECK((avg - op).norm() == 0.0);

    // an exactly invariant operator is a fixed point of averaging
    MatrixXcd inv = MatrixXcd::Identity(9, 9) + 0.5 * ad_matrix(MatrixXcd::Identity(3, 3));
    std::vector<GroupElementSample> samples;
    for (int t = 0; t < 8; ++t) samples.push_back(GroupElementSample{rng.haar_unitary(3), sp});
    CHECK((group_average(inv, samples) - inv).norm() < 1e-10);

    CHECK_THROWS_AS(group_average(op, {}), SpecError);
}

TEST_CASE("sigma must be nonzero") {
    CHECK_THROWS_AS(CurvatureTypeTensor(MatrixXcd::Zero(4, 4), BlockSpace({2})), SpecError);
}

TEST_CASE("operator serialization roundtrip is bit-exact") {
    Rng rng(7);
    BlockSpace sp({2, 1});
    MatrixXcd op = rng.cgaussian_matrix(9, 9);
    CurvatureTypeTensor sigma(op, sp);
    std::string text = serialize_operator(sigma);
    CurvatureTypeTensor back = deserialize_operator(text);
    CHECK(back.space == sigma.space);
    CHECK(back.op == sigma.op);

    CHECK_THROWS_AS(deserialize_operator("{"), ParseError);
    CHECK_THROWS_AS(deserialize_operator("{\"n\":2}"), ParseError);
}

TEST_CASE("group averaging drives off-diagonal blocks toward scalar identities") {
    // two 2-dimensional blocks under independent Haar unitaries; after 2000
    // samples the (0,1) -> (0,1) block of the average is a scalar multiple of
    // the identity to Monte-Carlo accuracy, and blocks between inequivalent
    // index pairs vanish
    BlockSpace sp({2, 2});
    Rng rng(9);
    MatrixXcd a = rng.cgaussian_matrix(16, 16);
    a /= a.norm();
    std::vector<GroupElementSample> samples;
    for (int t = 0; t < 2000; ++t) {
        MatrixXcd g = MatrixXcd::Zero(4, 4);
        g.block(0, 0, 2, 2) = rng.haar_unitary(2);
        g.block(2, 2, 2, 2) = rng.haar_unitary(2);
        samples.push_back(GroupElementSample{std::move(g), sp});
    }
    CurvatureTypeTensor avg(group_average(a, samples), sp);
    MatrixXcd offdiag = block_component(avg, 0, 1, 0, 1);
    const cd c = offdiag.trace() / 4.0;
    CHECK((offdiag - c * MatrixXcd::Identity(4, 4)).norm() <= 1e-2);
    CHECK(block_component(avg, 0, 1, 1, 0).norm() <= 1e-2);
    CHECK(block_component(avg, 0, 0, 0, 1).norm() <= 1e-2);

    // the residual shrinks as the sample count grows
    auto deviation = [&](int count) {
        std::vector<GroupElementSample> part(samples.begin(), samples.begin() + count);
        CurvatureTypeTensor partial(group_average(a, part), sp);
        MatrixXcd b = block_component(partial, 0, 1, 0, 1);
        const cd cc = b.trace() / 4.0;
        return (b - cc * MatrixXcd::Identity(4, 4)).norm();
    };
    CHECK(deviation(2000) < deviation(100));
}
