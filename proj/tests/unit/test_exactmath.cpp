#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace toric;
using toric::test::rng;
using toric::test::uniform;

namespace {

MatrixXr mat(std::initializer_list<std::initializer_list<long>> rows)
{
    const Index r = static_cast<Index>(rows.size());
    const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
    MatrixXr m(r, c);
    Index i = 0;
    for (const auto& row : rows)
    {
        Index j = 0;
        for (long x : row)
            m(i, j++) = Rational(x);
        ++i;
    }
    return m;
}

MatrixXr randomMatrix(Index rows, Index cols, long range)
{
    MatrixXr m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            m(i, j) = Rational(uniform(-range, range));
    return m;
}

Ambient ambientOf(Index n)
{
    std::vector<LatticePoint> pts;
    for (Index i = 0; i < n; ++i)
        pts.push_back(point({static_cast<long>(i)}));
    return makeAmbient(pts);
}

}   // namespace

TEST_CASE("pairing and primitive vectors", "[exactmath]")
{
    CHECK(pairing(point({2, 0, 0}), point({1, 0, 0})) == 2);
    CHECK(pairing(point({0, 0, 1}), point({1, 0, 0})) == 0);
    CHECK(pairing(point({-1, 1, 0}), point({1, 0, 0})) == -1);
    CHECK_THROWS_AS(pairing(point({1, 2}), point({1, 2, 3})), DimensionError);

    CHECK(primitive(point({2, 4, 6})) == point({1, 2, 3}));
    CHECK(primitive(point({1, 0, 0})) == point({1, 0, 0}));
    CHECK(primitive(point({0, -3})) == point({0, -1}));
    CHECK_THROWS_AS(primitive(point({0, 0})), DegenerateInputError);

    VectorXr v(2);
    v << Rational(1, 2), Rational(-3, 4);
    CHECK(primitiveFromRational(v) == point({2, -3}));
}

TEST_CASE("rational parsing and printing", "[exactmath]")
{
    CHECK(parseRational("3") == 3);
    CHECK(parseRational("-7/2") == Rational(-7, 2));
    CHECK(parseRational("0.25") == Rational(1, 4));
    CHECK(parseRational("-1.5") == Rational(-3, 2));
    CHECK(parseRational("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(parseRational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parseRational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parseRational(""), std::invalid_argument);
    CHECK(toString(Rational(3)) == "3/1");
    CHECK(toString(Rational(-6, 4)) == "-3/2");
    CHECK(toString(point({1, -2, 0})) == "(1,-2,0)");
}

TEST_CASE("rational arithmetic is exact", "[exactmath]")
{
    for (int i = 0; i < 1000; ++i)
    {
        const Rational a = test::randomRational(1000, 997);
        const Rational b = test::randomRational(1000, 991);
        REQUIRE((a + b) - b == a);
        REQUIRE((a * b) / b == a);
    }
    // values far beyond 64 bits stay exact
    const Integer big = Integer(1) << 200;
    CHECK(Rational(big + 1) - Rational(big) == 1);
}

TEST_CASE("reduced row echelon examples", "[exactmath]")
{
    CHECK(reducedRowEchelon<Rational>(mat({{2, 0}, {0, 3}})).rows == mat({{1, 0}, {0, 1}}));
    CHECK(reducedRowEchelon<Rational>(mat({{1, 1}, {2, 2}})).rows == mat({{1, 1}}));
    const auto swapped = reducedRowEchelon<Rational>(mat({{0, 1}, {1, 0}}));
    CHECK(swapped.rows == mat({{1, 0}, {0, 1}}));
    CHECK(swapped.pivots == std::vector<Index>{0, 1});
}

TEST_CASE("reduced row echelon is idempotent and preserves the row space", "[exactmath]")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const Index rows = uniform(1, 5), cols = uniform(1, 6);
        MatrixXr m = randomMatrix(rows, cols, 3);
        if (uniform(0, 1))
            m.row(rows - 1) = m.row(0) * Rational(uniform(-2, 2));
        const auto e = reducedRowEchelon<Rational>(m);
        REQUIRE(reducedRowEchelon<Rational>(e.rows).rows == e.rows);
        // mutual containment of the row spaces
        const Ambient amb = ambientOf(cols);
        const TruncatedSubspace a(amb, m), b(amb, e.rows);
        REQUIRE(subspaceContains(a, b));
        REQUIRE(subspaceContains(b, a));
        // pivot columns are unit vectors
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            for (Index i = 0; i < e.rows.rows(); ++i)
                REQUIRE(e.rows(i, e.pivots[k]) == (i == static_cast<Index>(k) ? 1 : 0));
        REQUIRE(matrixRank(m) == static_cast<Index>(e.pivots.size()));
    }
}

TEST_CASE("nullspace and linear solve", "[exactmath]")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const Index rows = uniform(1, 4), cols = uniform(1, 6);
        const MatrixXr a = randomMatrix(rows, cols, 3);
        const MatrixXr n = nullspace(a);
        REQUIRE(n.rows() == cols - matrixRank(a));
        if (n.rows() > 0)
            REQUIRE((a * n.transpose()).isZero());
        // a consistent right-hand side is solved exactly
        VectorXr x = VectorXr::Zero(cols);
        for (Index j = 0; j < cols; ++j)
            x(j) = Rational(uniform(-3, 3));
        const VectorXr rhs = a * x;
        const auto sol = solveLinear(a, rhs);
        REQUIRE(sol);
        REQUIRE(a * *sol == rhs);
    }
    MatrixXr one(1, 1);
    one << Rational(1);
    VectorXr rhs(1);
    rhs << Rational(1);
    CHECK(*solveLinear(one, rhs) == rhs);
    // inconsistent system
    const MatrixXr a = mat({{1, 1}, {2, 2}});
    VectorXr b(2);
    b << Rational(1), Rational(3);
    CHECK_FALSE(solveLinear(a, b));
}

TEST_CASE("truncated subspaces", "[exactmath]")
{
    const Ambient amb = makeAmbient({point({1, 0}), point({0, 1})});   // x, y
    const auto x = TruncatedSubspace::spanOfMonomials(amb, {point({1, 0})});
    const auto xy = TruncatedSubspace::full(amb);
    CHECK(subspaceIntersect(x, xy) == x);
    CHECK(subspaceContains(xy, TruncatedSubspace(amb, mat({{1, 1}}))));
    CHECK_FALSE(subspaceContains(x, TruncatedSubspace(amb, mat({{1, 1}}))));
    CHECK(TruncatedSubspace::zero(amb).dimension() == 0);

    const Ambient other = makeAmbient({point({1, 0}), point({0, 2})});
    CHECK_THROWS_AS(subspaceIntersect(x, TruncatedSubspace::full(other)), DimensionError);
    CHECK_THROWS_AS(subspaceContains(x, TruncatedSubspace::full(other)), DimensionError);

    for (int trial = 0; trial < 200; ++trial)
    {
        const Index n = uniform(1, 6);
        const Ambient a = ambientOf(n);
        const TruncatedSubspace s(a, randomMatrix(uniform(0, n), n, 2));
        const TruncatedSubspace t(a, randomMatrix(uniform(0, n), n, 2));
        const auto meet = subspaceIntersect(s, t);
        REQUIRE(subspaceContains(s, meet));
        REQUIRE(subspaceContains(t, meet));
        REQUIRE(subspaceIntersect(s, s) == s);
        const auto join = subspaceSum(s, t);
        REQUIRE(join.dimension() + meet.dimension() == s.dimension() + t.dimension());
    }
}

TEST_CASE("sparse echelon matches dense rank and tracks combinations", "[exactmath]")
{
    for (int trial = 0; trial < 200; ++trial)
    {
        const Index rows = uniform(1, 6), cols = uniform(1, 6);
        const MatrixXr m = randomMatrix(rows, cols, 2);
        SparseEchelon ech;
        for (Index i = 0; i < rows; ++i)
        {
            SparseEchelon::Row row;
            for (Index j = 0; j < cols; ++j)
                if (m(i, j) != 0)
                    row.value[j] = m(i, j);
            row.combination[i] = Rational(1);
            if (!ech.insert(row))
            {
                // the combination is a relation among the input rows
                VectorXr rel = VectorXr::Zero(cols);
                for (const auto& [k, c] : row.combination)
                    rel += c * m.row(k).transpose();
                REQUIRE(rel.isZero());
            }
        }
        REQUIRE(static_cast<Index>(ech.size()) == matrixRank(m));
    }
}

TEST_CASE("lattice points in a box", "[exactmath]")
{
    const auto all = latticePointsInBox(point({0, 0, 0}), point({1, 1, 1}), [](const LatticePoint&) { return true; });
    CHECK(all.size() == 8);
    const auto evens = latticePointsInBox(point({0}), point({2}), [](const LatticePoint& p) { return p(0) % 2 == 0; });
    CHECK(evens == std::vector<LatticePoint>{point({0}), point({2})});
    const auto neg = latticePointsInBox(point({-1, -1, -1}), point({1, 1, 1}),
                                        [](const LatticePoint& p) { return pairing(p, point({1, 0, 0})) == -1; });
    CHECK(neg.size() == 9);
    for (const auto& p : neg)
        CHECK(p(0) == -1);
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(lexCompare(all[i - 1], all[i]) < 0);
    CHECK(latticePointsInBox(point({1}), point({0}), [](const LatticePoint&) { return true; }).empty());
}

TEST_CASE("convex hull vertices", "[exactmath]")
{
    CHECK(hullVertices({point({0, 0})}) == std::vector<LatticePoint>{point({0, 0})});
    CHECK(hullVertices({point({0, 0}), point({2, 0}), point({1, 0})}) ==
          std::vector<LatticePoint>{point({0, 0}), point({2, 0})});
    const std::vector<LatticePoint> tri{point({-1, 0, 0}), point({0, 0, -1}), point({1, 1, -1})};
    CHECK(hullVertices(tri) == tri);
    CHECK(inConvexHull(point({1, 1}), {point({0, 0}), point({2, 2})}));
    CHECK_FALSE(inConvexHull(point({1, 0}), {point({0, 0}), point({2, 2})}));

    for (int trial = 0; trial < 100; ++trial)
    {
        std::vector<LatticePoint> pts;
        const long n = uniform(1, 6);
        for (long i = 0; i < n; ++i)
        {
            const LatticePoint q = point({uniform(-3, 3), uniform(-3, 3)});
            if (std::find(pts.begin(), pts.end(), q) == pts.end())
                pts.push_back(q);
        }
        const auto v = hullVertices(pts);
        for (const auto& p : v)
            REQUIRE(std::find(pts.begin(), pts.end(), p) != pts.end());
        REQUIRE(hullVertices(v) == v);
        // every input point lies in the hull of the vertices
        for (const auto& p : pts)
            REQUIRE((std::find(v.begin(), v.end(), p) != v.end() || inConvexHull(p, v)));
    }
}
