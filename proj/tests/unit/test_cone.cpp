#include <set>

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace toric;
using toric::test::uniform;

namespace {

PolyhedralCone octant(Index n)
{
    std::vector<LatticePoint> gens;
    for (Index i = 0; i < n; ++i)
    {
        LatticePoint e = zeroPoint(n);
        e(i) = 1;
        gens.push_back(e);
    }
    return PolyhedralCone::fromGenerators(n, gens);
}

PolyhedralCone squareCone()
{
    return PolyhedralCone::fromGenerators(
        3, {point({0, 0, 1}), point({1, 0, 1}), point({0, 1, 1}), point({1, 1, 1})});
}

/** Random pointed full-dimensional cones in rank <= 4. */
std::vector<PolyhedralCone> randomCones(int count)
{
    std::vector<PolyhedralCone> out;
    while (static_cast<int>(out.size()) < count)
    {
        const Index n = uniform(1, 4);
        std::vector<LatticePoint> gens;
        const long k = uniform(n, n + 3);
        for (long i = 0; i < k; ++i)
        {
            LatticePoint g(n);
            for (Index j = 0; j < n; ++j)
                g(j) = uniform(-2, 2);
            // bias into a half-space so most samples are pointed
            g(0) = abs(g(0)) + 1;
            gens.push_back(g);
        }
        const auto c = PolyhedralCone::fromGenerators(n, gens);
        if (c.pointed() && c.fullDimensional())
            out.push_back(c);
    }
    return out;
}

/** Faces by brute force: distinct generator sets cut out by all subsets of facet normals. */
std::size_t bruteForceFaceCount(const PolyhedralCone& c)
{
    const auto& ns = c.facetNormals();
    std::set<std::vector<LatticePoint>, std::function<bool(const std::vector<LatticePoint>&,
                                                            const std::vector<LatticePoint>&)>>
        seen([](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), LexLess{});
        });
    for (std::size_t mask = 0; mask < (std::size_t{1} << ns.size()); ++mask)
    {
        std::vector<LatticePoint> gens;
        for (const auto& g : c.generators())
        {
            bool on = true;
            for (std::size_t i = 0; i < ns.size(); ++i)
                if ((mask >> i) & 1)
                    on = on && pairing(ns[i], g) == 0;
            if (on)
                gens.push_back(g);
        }
        seen.insert(gens);
    }
    return seen.size();
}

std::vector<PolyhedralCone> corpusCones()
{
    std::vector<PolyhedralCone> out;
    for (const auto& c : standardCorpus())
        out.push_back(c.monoid()->coneDual());
    return out;
}

}   // namespace

TEST_CASE("dual cone examples", "[cone]")
{
    CHECK(dualCone(octant(3)) == octant(3));
    const auto plane = PolyhedralCone::fromGenerators(2, {point({1, 0}), point({-1, 0}), point({0, 1}), point({0, -1})});
    CHECK_FALSE(plane.pointed());
    const auto origin = dualCone(plane);
    CHECK(origin.generators().empty());
    CHECK_THROWS_AS(dualCone(origin), DegenerateInputError);

    const auto c = PolyhedralCone::fromGenerators(2, {point({1, 0}), point({1, 2})});
    const auto d = dualCone(c);
    CHECK(d.generators() == std::vector<LatticePoint>{point({0, 1}), point({2, -1})});
    CHECK(d == PolyhedralCone::fromInequalities(2, {point({1, 0}), point({1, 2})}));
}

TEST_CASE("rays and flags of the octant", "[cone]")
{
    const auto o = octant(3);
    CHECK(rayGenerators(o) == std::vector<LatticePoint>{point({0, 0, 1}), point({0, 1, 0}), point({1, 0, 0})});
    CHECK(isPointed(o));
    CHECK(isFullDim(o));
    CHECK(o.contains(point({1, 0, 3})));
    CHECK_FALSE(o.contains(point({-1, 0, 0})));
    CHECK(o.containsInInterior(point({1, 1, 1})));
    CHECK_FALSE(o.containsInInterior(point({1, 1, 0})));
    const auto q = faces(octant(2));
    REQUIRE(q.size() == 4);
    CHECK(q[0].dim == 0);
    CHECK(q[1].dim == 1);
    CHECK(q[2].dim == 1);
    CHECK(q[3].dim == 2);
}

TEST_CASE("face correspondence", "[cone]")
{
    const auto sigmaDual = octant(3);
    const auto sigma = dualCone(sigmaDual);
    const auto rs = rays(sigma);
    REQUIRE(rs.size() == 3);
    // ray (0,0,1) maps to the face {m3 = 0}
    const Face zHat = faceHat(rs[0], sigmaDual);
    CHECK(zHat.generators == std::vector<LatticePoint>{point({0, 1, 0}), point({1, 0, 0})});
    CHECK(zHat.dim == 2);
    const auto fs = faces(sigma);
    CHECK(faceHat(fs.front(), sigmaDual).generators == sigmaDual.generators());
    CHECK(faceHat(fs.back(), sigmaDual).generators.empty());

    Face bogus;
    bogus.generators = {point({1, 1, 0})};
    bogus.dim = 1;
    CHECK_FALSE(isFaceOf(bogus, sigma));
    CHECK_THROWS_AS(faceHat(bogus, sigmaDual), InvalidFaceError);
    CHECK_THROWS_AS(faceFromNormals(sigma, {7}), InvalidFaceError);
}

TEST_CASE("biduality on random cones", "[cone]")
{
    for (const auto& c : randomCones(200))
    {
        const auto d = dualCone(c);
        REQUIRE(dualCone(d) == c);
        REQUIRE(d.generators() == c.facetNormals());
        for (const auto& g : c.generators())
            for (const auto& f : c.facetNormals())
                REQUIRE(pairing(f, g) >= 0);
    }
}

TEST_CASE("face lattices match brute-force enumeration", "[cone]")
{
    auto cones = corpusCones();
    cones.push_back(squareCone());
    for (const auto& c : randomCones(60))
        cones.push_back(c);
    for (const auto& c : cones)
    {
        const auto fs = faces(c);
        REQUIRE(fs.size() == bruteForceFaceCount(c));
        for (const auto& f : fs)
        {
            REQUIRE(isFaceOf(f, c));
            for (const auto& g : f.generators)
                for (const auto& n : c.facetNormals())
                    REQUIRE(pairing(n, g) >= 0);
        }
        // closed under intersection
        for (const auto& f : fs)
            for (const auto& g : fs)
            {
                std::vector<std::size_t> both = f.activeNormals;
                both.insert(both.end(), g.activeNormals.begin(), g.activeNormals.end());
                std::sort(both.begin(), both.end());
                both.erase(std::unique(both.begin(), both.end()), both.end());
                const Face meet = faceFromNormals(c, both);
                REQUIRE(std::find(fs.begin(), fs.end(), meet) != fs.end());
                for (const auto& p : meet.generators)
                {
                    REQUIRE(std::find(f.generators.begin(), f.generators.end(), p) != f.generators.end());
                    REQUIRE(std::find(g.generators.begin(), g.generators.end(), p) != g.generators.end());
                }
            }
    }
    CHECK(faces(squareCone()).size() == 10);   // vertex, 4 rays, 4 facets, the cone
}

TEST_CASE("dimensions of corresponding faces are complementary", "[cone]")
{
    auto cones = corpusCones();
    for (const auto& c : randomCones(40))
        cones.push_back(c);
    for (const auto& sigmaDual : cones)
    {
        const auto sigma = dualCone(sigmaDual);
        for (const auto& tau : faces(sigma))
            REQUIRE(tau.dim + faceHat(tau, sigmaDual).dim == sigma.rank());
    }
}
