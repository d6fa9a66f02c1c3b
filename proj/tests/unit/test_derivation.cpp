#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace toric;
using toric::test::paperMonoid;
using toric::test::planeMonoid;
using toric::test::randomElement;
using toric::test::randomRational;
using toric::test::uniform;

namespace {

AlgebraElement mono(const MonoidPtr& P, std::initializer_list<long> m, const Rational& c = Rational(1))
{
    return AlgebraElement::monomial(P, point(m), c);
}

Derivation der(const MonoidPtr& P, const std::vector<std::pair<LatticePoint, Rational>>& roots)
{
    return Derivation::fromRoots(P, roots, 10);
}

const LatticePoint e1 = point({0, 0, -1});
const LatticePoint e2 = point({-1, 1, 0});
const LatticePoint e3 = point({1, -1, 0});

/** Every derivation stored in the corpus, built on its case's monoid. */
std::vector<Derivation> corpusDerivations()
{
    std::vector<Derivation> out;
    for (const auto& c : standardCorpus())
    {
        const auto P = c.monoid();
        for (const auto& spec : c.derivations)
            out.push_back(Derivation::fromRoots(P, spec, c.defaultBounds.degreeBound));
    }
    return out;
}

/** Random sums of one to three well-defined roots with random coefficients. */
Derivation randomDerivation(const MonoidPtr& P, long coordBound = 2)
{
    static std::map<const AffineMonoid*, std::vector<DemazureRoot>> cache;
    auto& roots = cache[P.get()];
    if (roots.empty())
        roots = wellDefinedRoots(*P, coordBound, 10);
    std::vector<std::pair<LatticePoint, Rational>> spec;
    const long k = uniform(1, 3);
    for (long i = 0; i < k; ++i)
        spec.emplace_back(roots[static_cast<std::size_t>(uniform(0, static_cast<long>(roots.size()) - 1))].e,
                          randomRational(3, 2));
    return der(P, spec);
}

/** Locally nilpotent derivations used by the exponential properties. */
std::vector<Derivation> nilpotentSamples()
{
    const auto P = paperMonoid();
    std::vector<Derivation> out;
    for (const auto& r : wellDefinedRoots(*P, 2, 10))
        out.push_back(der(P, {{r.e, Rational(1)}}));
    out.push_back(der(P, {{e1, Rational(1)}, {e2, Rational(1)}}));
    out.push_back(der(P, {{e1, Rational(1)}, {e3, Rational(-2, 3)}}));
    out.push_back(der(P, {{e1, Rational(1)}, {point({1, 1, -1}), Rational(1)}}));
    for (auto& d : out)
        d = verified(d);
    return out;
}

/** Dense oracle for d(s) = 1: unknowns are the nonconstant monomials of degree <= sd. */
bool denseSliceExists(const Derivation& d, long sd)
{
    const auto& P = *d.monoid();
    std::vector<LatticePoint> unknowns;
    for (const auto& m : P.truncationSet(sd))
        if (!isZero(m))
            unknowns.push_back(m);
    std::map<LatticePoint, Index, LexLess> rows{{zeroPoint(P.rank()), 0}};
    std::vector<AlgebraElement> images;
    for (const auto& m : unknowns)
    {
        images.push_back(apply(d, AlgebraElement::monomial(d.monoid(), m)));
        for (const auto& [q, c] : images.back().termMap())
            rows.emplace(q, static_cast<Index>(rows.size()));
    }
    MatrixXr a = MatrixXr::Zero(static_cast<Index>(rows.size()), static_cast<Index>(unknowns.size()));
    for (std::size_t j = 0; j < images.size(); ++j)
        for (const auto& [q, c] : images[j].termMap())
            a(rows.at(q), static_cast<Index>(j)) = c;
    VectorXr rhs = VectorXr::Zero(a.rows());
    rhs(0) = 1;
    return solveLinear(a, rhs).has_value();
}

}   // namespace

TEST_CASE("algebra elements", "[derivation]")
{
    const auto P = paperMonoid();
    CHECK(mono(P, {1, 1, 0}) * mono(P, {0, 2, 0}) == mono(P, {1, 3, 0}));
    CHECK_THROWS_AS(mono(P, {1, 0, 0}), PreconditionError);
    const auto f = mono(P, {2, 0, 0}, Rational(3)) + mono(P, {0, 0, 1}, Rational(-1, 2));
    CHECK(toString(f) == "-1/2*chi^(0,0,1) + 3/1*chi^(2,0,0)");
    CHECK(f.coefficient(point({2, 0, 0})) == 3);
    CHECK(*f.minDegree() == 1);
    CHECK(*f.maxDegree() == 2);
    CHECK(f.truncated(1) == mono(P, {0, 0, 1}, Rational(-1, 2)));
    CHECK((f - f).isZero());
    CHECK_THROWS_AS(f + AlgebraElement::constant(planeMonoid(), 1), MonoidMismatchError);
}

TEST_CASE("applying root derivations", "[derivation]")
{
    const auto P = paperMonoid();
    const auto d1 = der(P, {{e1, Rational(1)}});
    const auto d2 = der(P, {{e2, Rational(1)}});
    CHECK(apply(d1, mono(P, {0, 0, 1})) == AlgebraElement::constant(P, 1));
    CHECK(apply(d2, mono(P, {2, 0, 0})) == mono(P, {1, 1, 0}, Rational(2)));
    CHECK(apply(d1, mono(P, {2, 0, 0})).isZero());
    CHECK(apply(Derivation::zero(P), mono(P, {2, 0, 0})).isZero());

    CHECK_THROWS_AS(makeHomogeneous(*P, point({1, 1, 1}), Rational(1), 10), PreconditionError);
    CHECK_THROWS_AS(makeHomogeneous(*P, point({-1, 0, 0}), Rational(1), 10), WellDefinednessError);
    CHECK_THROWS_AS(apply(d1, AlgebraElement::monomial(planeMonoid(), point({1, 0}))), MonoidMismatchError);

    // components with equal roots merge, zero coefficients vanish
    const auto merged = der(P, {{e2, Rational(1)}, {e1, Rational(2)}, {e2, Rational(-1)}});
    REQUIRE(merged.components().size() == 1);
    CHECK(merged.components()[0].root.e == e1);
    CHECK(merged.describe() == "2/1*d(0,0,-1)");
}

TEST_CASE("Leibniz identity on random elements", "[derivation][property]")
{
    auto ds = corpusDerivations();
    for (int i = 0; i < 20; ++i)
    {
        ds.push_back(randomDerivation(paperMonoid()));
        ds.push_back(randomDerivation(planeMonoid()));
    }
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto& d = ds[static_cast<std::size_t>(uniform(0, static_cast<long>(ds.size()) - 1))];
        const auto f = randomElement(d.monoid(), 4);
        const auto g = randomElement(d.monoid(), 4);
        REQUIRE(apply(d, f * g) == f * apply(d, g) + g * apply(d, f));
    }
}

TEST_CASE("homogeneous images and the nilpotency index", "[derivation][property]")
{
    std::vector<std::pair<MonoidPtr, std::vector<DemazureRoot>>> pools;
    for (const auto& c : standardCorpus())
    {
        const auto P = c.monoid();
        auto roots = wellDefinedRoots(*P, 3, 10);
        if (!roots.empty())
            pools.emplace_back(P, std::move(roots));
    }
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto& [P, roots] = pools[static_cast<std::size_t>(uniform(0, static_cast<long>(pools.size()) - 1))];
        const auto& root = roots[static_cast<std::size_t>(uniform(0, static_cast<long>(roots.size()) - 1))];
        const auto& pts = P->truncationSet(6);
        const auto& m = pts[static_cast<std::size_t>(uniform(0, static_cast<long>(pts.size()) - 1))];
        const HomogeneousDerivation d{root, Rational(1)};
        // the image of a monomial is supported on m + e only
        const auto image = applyHomogeneous(d, AlgebraElement::monomial(P, m));
        REQUIRE(image.size() <= 1);
        if (!image.isZero())
            REQUIRE(image.terms().front().first == LatticePoint(m + root.e));
        // d^k(chi^m) = 0 exactly when k > <p_rho, m>
        const long index = toLong(pairing(m, root.distinguishedRay)) + 1;
        AlgebraElement f = AlgebraElement::monomial(P, m);
        long k = 0;
        while (!f.isZero())
        {
            f = applyHomogeneous(d, f);
            ++k;
            REQUIRE(k <= index);
        }
        REQUIRE(k == index);
    }
}

TEST_CASE("exponentials are ring automorphisms forming a one-parameter group", "[derivation][property]")
{
    const auto ds = nilpotentSamples();
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto& d = ds[static_cast<std::size_t>(uniform(0, static_cast<long>(ds.size()) - 1))];
        const auto f = randomElement(d.monoid(), 3, 3);
        const auto g = randomElement(d.monoid(), 3, 3);
        const Rational t = randomRational(3, 3);
        const Rational s = randomRational(3, 3);
        REQUIRE(expDerivation(d, t, f * g) == expDerivation(d, t, f) * expDerivation(d, t, g));
        REQUIRE(expDerivation(d, t, expDerivation(d, s, f)) == expDerivation(d, t + s, f));
        REQUIRE(expDerivation(d, Rational(0), f) == f);
    }
    const auto P = paperMonoid();
    const auto d2 = verified(der(P, {{e2, Rational(1)}}));
    CHECK(expDerivation(d2, Rational(1), mono(P, {2, 0, 0})) ==
          mono(P, {2, 0, 0}) + mono(P, {1, 1, 0}, Rational(2)) + mono(P, {0, 2, 0}));
    const auto rotation = der(P, {{e2, Rational(1)}, {e3, Rational(1)}});
    CHECK_THROWS_AS(expDerivation(rotation, Rational(1), mono(P, {2, 0, 0})), NonNilpotentError);
}

TEST_CASE("local nilpotency verification", "[derivation]")
{
    const auto P = paperMonoid();
    const auto s = verifyLocallyNilpotent(der(P, {{e1, Rational(1)}, {e2, Rational(1)}}));
    CHECK(s.state == NilpotencyStatus::State::VerifiedUpToBound);
    CHECK(s.bound == 4);   // x^3 -> 3x^2y -> 6xy^2 -> 6y^3 -> 0
    const auto rotation = der(P, {{e2, Rational(1)}, {e3, Rational(1)}});
    for (long cap : {2L, 8L, 64L})
    {
        const auto r = verifyLocallyNilpotent(rotation, cap);
        CHECK(r.state == NilpotencyStatus::State::Inconclusive);
        CHECK(r.offendingGenerator);
    }
    const auto z = verifyLocallyNilpotent(Derivation::zero(P));
    CHECK(z.state == NilpotencyStatus::State::VerifiedUpToBound);
    CHECK(z.bound == 1);
    // a single root derivation dies after max <p_rho, g> + 1 steps on generators
    CHECK(verifyLocallyNilpotent(der(P, {{e2, Rational(1)}})).bound == 4);
}

TEST_CASE("commutators", "[derivation]")
{
    const auto P = paperMonoid();
    CHECK(commutator(der(P, {{e1, Rational(1)}}), der(P, {{e2, Rational(1)}})).empty());
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto a = randomDerivation(P);
        const auto b = randomDerivation(P);
        const auto f = randomElement(P, 4);
        const auto c = commutator(a, b);
        REQUIRE(apply(c, P, f) == apply(a, apply(b, f)) - apply(b, apply(a, f)));
    }
}

TEST_CASE("grading decomposition and hull vertices", "[derivation]")
{
    const auto P = paperMonoid();
    const LatticePoint w = point({1, 1, 1});
    const auto d = der(P, {{e1, Rational(1)}, {point({1, 1, -1}), Rational(1)}});
    const auto parts = gradeDecompose(d, w);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == -1);
    CHECK(parts[0].second.components()[0].root.e == e1);
    CHECK(parts[1].first == 1);
    CHECK(parts[1].second.components()[0].root.e == point({1, 1, -1}));
    CHECK(gradeDecompose(der(P, {{e1, Rational(1)}}), w).size() == 1);
    CHECK(gradeDecompose(Derivation::zero(P), w).empty());

    // the pieces add back up, and the extreme pieces of an LND are LNDs
    for (const auto& dd : corpusDerivations())
    {
        const auto pieces = gradeDecompose(dd, dd.monoid()->gradingVector());
        Derivation sum = Derivation::zero(dd.monoid());
        for (const auto& [deg, part] : pieces)
            sum = sum + part;
        REQUIRE(sum.components().size() == dd.components().size());
        for (std::size_t i = 0; i < sum.components().size(); ++i)
        {
            REQUIRE(sum.components()[i].root == dd.components()[i].root);
            REQUIRE(sum.components()[i].coefficient == dd.components()[i].coefficient);
        }
        if (verifyLocallyNilpotent(dd).verified())
        {
            REQUIRE(verifyLocallyNilpotent(pieces.front().second).verified());
            REQUIRE(verifyLocallyNilpotent(pieces.back().second).verified());
        }
    }

    CHECK(hullVertexComponents(der(P, {{e1, Rational(1)}})).size() == 1);
    CHECK(hullVertexComponents(der(P, {{e1, Rational(1)}, {e2, Rational(1)}, {e3, Rational(1)}})).size() == 3);
    const auto A3 = findCase("affine-space-3")->monoid();
    const auto line = der(A3, {{point({0, 0, -1}), Rational(1)}, {point({1, 0, -1}), Rational(1)},
                               {point({2, 0, -1}), Rational(1)}});
    const auto ends = hullVertexComponents(line);
    REQUIRE(ends.size() == 2);
    CHECK(ends[0].root.e == point({0, 0, -1}));
    CHECK(ends[1].root.e == point({2, 0, -1}));
    CHECK_THROWS_AS(hullVertexComponents(Derivation::zero(P)), DegenerateInputError);
}

TEST_CASE("kernels", "[derivation]")
{
    const auto P = paperMonoid();
    const auto root = *rootFromVector(*P, e1);
    const auto k = kernelHomogeneous(*P, root, 3);
    CHECK(k == test::monomialSpan(P, 3, {point({0, 0, 0}), point({2, 0, 0}), point({1, 1, 0}), point({0, 2, 0}),
                                         point({3, 0, 0}), point({2, 1, 0}), point({1, 2, 0}), point({0, 3, 0})}));
    CHECK(kernelBasis(Derivation::zero(P), 5) == TruncatedSubspace::full(P->truncationAmbient(5)));

    for (const auto& c : standardCorpus())
    {
        const auto Q = c.monoid();
        for (const auto& r : wellDefinedRoots(*Q, 2, c.defaultBounds.degreeBound))
        {
            const auto d = der(Q, {{r.e, Rational(1)}});
            for (long deg = 0; deg <= 4; ++deg)
                REQUIRE(kernelBasis(d, deg) == kernelHomogeneous(*Q, r, deg));
        }
    }
    // kernel vectors really are annihilated
    const auto d = der(P, {{e1, Rational(1)}, {e2, Rational(1)}});
    const auto kb = kernelBasis(d, 5);
    const auto& basis = *P->truncationAmbient(5);
    for (Index i = 0; i < kb.dimension(); ++i)
        REQUIRE(apply(d, AlgebraElement::fromVector(P, basis, kb.rows().row(i).transpose())).isZero());
}

TEST_CASE("slices", "[derivation]")
{
    const auto P = paperMonoid();
    const auto z = mono(P, {0, 0, 1});
    CHECK(*findSlice(der(P, {{e1, Rational(1)}}), 1).slice == z);
    CHECK(*findSlice(der(P, {{e1, Rational(1)}, {e2, Rational(1)}}), 1).slice == z);
    CHECK_FALSE(findSlice(der(P, {{e2, Rational(1)}}), 8).slice);

    // agreement with a dense solve, and every slice found really is one
    for (int trial = 0; trial < 120; ++trial)
    {
        const auto d = randomDerivation(uniform(0, 1) ? paperMonoid() : planeMonoid());
        const long sd = uniform(1, 4);
        const auto res = findSlice(d, sd);
        REQUIRE(res.slice.has_value() == denseSliceExists(d, sd));
        if (res.slice)
        {
            REQUIRE(apply(d, *res.slice) == AlgebraElement::constant(d.monoid(), 1));
            REQUIRE(res.slice->coefficient(zeroPoint(d.monoid()->rank())) == 0);
        }
    }
}

TEST_CASE("slice theorem reconstruction", "[derivation]")
{
    const auto P = paperMonoid();
    const auto z = mono(P, {0, 0, 1});
    const auto d1 = verified(der(P, {{e1, Rational(1)}}));
    const auto r = sliceTheoremCheck(d1, z, 4);
    CHECK(r.containsAll);
    CHECK(r.missing.empty());
    CHECK(sliceTheoremCheck(verified(der(P, {{e1, Rational(1)}, {e2, Rational(1)}})), z, 3).containsAll);
    CHECK(sliceTheoremCheck(d1, z, 0).containsAll);
    CHECK_THROWS_AS(sliceTheoremCheck(d1, mono(P, {2, 0, 0}), 3), PreconditionError);

    // whenever a slice exists for an LND, the reconstruction succeeds
    std::vector<Derivation> lnds = corpusDerivations();
    for (const auto& r2 : rootsWithSlice(*planeMonoid(), 2, 10))
        lnds.push_back(der(planeMonoid(), {{r2.e, Rational(1)}}));
    for (const auto& d : lnds)
    {
        if (!verifyLocallyNilpotent(d).verified())
            continue;
        const auto s = findSlice(d, 2);
        if (!s.slice)
            continue;
        for (long deg = 0; deg <= 4; ++deg)
            REQUIRE(sliceTheoremCheck(d, *s.slice, deg).containsAll);
    }
}
