// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. All checks are exact; timings are wall-clock.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_internal.hpp"
#include "test_support.hpp"
#include "toric/cli.hpp"

using namespace toric;
using cli::json;
using toric::test::paperMonoid;
using toric::test::randomElement;
using toric::test::randomRational;
using toric::test::uniform;

namespace {

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
    bool pass;
    std::string detail;
};

std::pair<int, std::string> runCli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::runCli(args, out, err);
    return {code, out.str()};
}

std::string data(const std::string& name)
{
    return std::string(TORIC_TEST_DATA) + "/" + name;
}

const LatticePoint e1 = point({0, 0, -1});
const LatticePoint e2 = point({-1, 1, 0});
const LatticePoint e3 = point({1, -1, 0});

Derivation der(const MonoidPtr& P, const std::vector<std::pair<LatticePoint, Rational>>& roots)
{
    return Derivation::fromRoots(P, roots, 10);
}

std::string pts(std::vector<LatticePoint> v)
{
    std::sort(v.begin(), v.end(), LexLess{});
    return toString(v);
}

Outcome verifyPaper()
{
    const auto t0 = Clock::now();
    const auto [code, out] = runCli({"verify-paper", "--format", "json"});
    const double secs = secondsSince(t0);
    if (code != 0)
        return {false, "exit code " + std::to_string(code)};
    const auto j = json::parse(out);
    bool ok = j["results"]["status"] == "PASS";
    std::string detail;
    for (const auto& a : j["results"]["assertions"])
    {
        const std::string id = a["id"];
        if (id == "i" || id == "ii")
        {
            ok = ok && a["basis"] == json::parse(R"([[{"coefficient":"1/1","exponent":[0,0,0]}]])");
            detail += id + ": basis {1}; ";
        }
        if (id == "ii")
            ok = ok && a["family"]["members"] ==
                           json::array({"1/1*d(0,0,-1)", "1/1*d(-1,1,0) + 1/1*d(0,0,-1)",
                                        "1/1*d(0,0,-1) + 1/1*d(1,-1,0)"});
        if (id == "iii")
        {
            ok = ok && a["dimension"] == a["ambientDimension"] && a["dimension"].get<long>() >= 45;
            detail += "iii: " + a["dimension"].dump() + "/" + a["ambientDimension"].dump() + "; ";
        }
        if (id == "iv")
        {
            ok = ok && a["dimension"].get<long>() < a["ambientDimension"].get<long>() &&
                 a["coefficientVanishesAtZ"] == true;
            detail += "iv: " + a["dimension"].dump() + "/" + a["ambientDimension"].dump() + ", z-coefficient 0; ";
        }
        ok = ok && a["status"] == "PASS";
    }
    ok = ok && secs < 10.0;
    std::ostringstream s;
    s << detail << "runtime " << secs << " s (limit 10 s)";
    return {ok, s.str()};
}

Outcome rootCensus()
{
    const auto P = paperMonoid();
    const auto roots = enumerateRoots(P->coneSigma(), 1);
    std::vector<LatticePoint> minusOne, wellDefined;
    for (const auto& r : roots)
        if (P->degree(r.e) == -1)
        {
            minusOne.push_back(r.e);
            if (isWellDefined(*P, r, 10).holds())
                wellDefined.push_back(r.e);
        }
    const bool ok = roots.size() == 12 && pts(minusOne) == "{(-1,0,0),(0,-1,0),(0,0,-1)}" &&
                    pts(wellDefined) == "{(0,0,-1)}";
    return {ok, std::to_string(roots.size()) + " roots; degree -1: " + pts(minusOne) + "; well defined: " +
                    pts(wellDefined)};
}

Outcome sliceCriterion()
{
    const auto P = paperMonoid();
    std::vector<LatticePoint> sliced;
    for (const auto& r : rootsWithSlice(*P, 3, 10))
        sliced.push_back(r.e);
    const auto s1 = findSlice(der(P, {{e1, Rational(1)}}), 1);
    const auto s2 = findSlice(der(P, {{e2, Rational(1)}}), 8);
    const auto z = AlgebraElement::monomial(P, point({0, 0, 1}));
    const bool ok = pts(sliced) == "{(0,0,-1)}" && s1.slice && *s1.slice == z && !s2.slice;
    return {ok, "rootsWithSlice " + pts(sliced) + "; slice(d_e1, 1) = " + (s1.slice ? toString(*s1.slice) : "none") +
                    "; slice(d_e2, 8) = " + (s2.slice ? toString(*s2.slice) : "none")};
}

Outcome sliceTheorem()
{
    const auto P = paperMonoid();
    const auto r = sliceTheoremCheck(verified(der(P, {{e1, Rational(1)}})), AlgebraElement::monomial(P, point({0, 0, 1})), 4);
    return {r.containsAll, "degree 4, kernel degree " + std::to_string(r.kernelDegree) + ", missing " +
                               std::to_string(r.missing.size()) + " monomials"};
}

Outcome kernelOracle()
{
    const auto t0 = Clock::now();
    std::size_t comparisons = 0, mismatches = 0;
    for (const auto& c : standardCorpus())
    {
        const auto P = c.monoid();
        for (const auto& r : wellDefinedRoots(*P, c.defaultBounds.coordBound, c.defaultBounds.degreeBound))
        {
            const auto d = der(P, {{r.e, Rational(1)}});
            for (long deg = 0; deg <= 6; ++deg)
            {
                ++comparisons;
                mismatches += !(kernelBasis(d, deg) == kernelHomogeneous(*P, r, deg));
            }
        }
    }
    const double secs = secondsSince(t0);
    std::ostringstream s;
    s << comparisons << " comparisons, " << mismatches << " mismatches, " << secs << " s (limit 30 s)";
    return {mismatches == 0 && comparisons > 0 && secs < 30.0, s.str()};
}

Outcome propertySuites()
{
    test::rng().seed(7);
    const auto P = paperMonoid();
    const auto plane = test::planeMonoid();
    const auto rootsP = wellDefinedRoots(*P, 2, 10);
    const auto rootsPlane = wellDefinedRoots(*plane, 2, 10);
    auto pick = [](const std::vector<DemazureRoot>& v) -> const DemazureRoot& {
        return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
    };

    int leibniz = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const bool usePlane = uniform(0, 1);
        const MonoidPtr& Q = usePlane ? plane : P;
        const auto& roots = usePlane ? rootsPlane : rootsP;
        std::vector<std::pair<LatticePoint, Rational>> spec;
        for (long k = uniform(1, 3); k > 0; --k)
            spec.emplace_back(pick(roots).e, randomRational(3, 2));
        const auto d = der(Q, spec);
        const auto f = randomElement(Q, 4), g = randomElement(Q, 4);
        leibniz += apply(d, f * g) == f * apply(d, g) + g * apply(d, f);
    }

    std::vector<Derivation> lnds;
    for (const auto& r : rootsP)
        lnds.push_back(verified(der(P, {{r.e, Rational(1)}})));
    lnds.push_back(verified(der(P, {{e1, Rational(1)}, {e2, Rational(1)}})));
    lnds.push_back(verified(der(P, {{e1, Rational(1)}, {e3, Rational(1)}})));
    int expOk = 0;
    for (int i = 0; i < 1000; ++i)
    {
        const auto& d = lnds[static_cast<std::size_t>(uniform(0, static_cast<long>(lnds.size()) - 1))];
        const auto f = randomElement(P, 3, 3), g = randomElement(P, 3, 3);
        const Rational t = randomRational(3, 3), s = randomRational(3, 3);
        expOk += expDerivation(d, t, f * g) == expDerivation(d, t, f) * expDerivation(d, t, g) &&
                 expDerivation(d, t, expDerivation(d, s, f)) == expDerivation(d, t + s, f);
    }

    int indexOk = 0;
    const auto& pts6 = P->truncationSet(6);
    for (int i = 0; i < 1000; ++i)
    {
        const auto& root = pick(rootsP);
        const auto& m = pts6[static_cast<std::size_t>(uniform(0, static_cast<long>(pts6.size()) - 1))];
        const HomogeneousDerivation d{root, Rational(1)};
        auto f = AlgebraElement::monomial(P, m);
        long k = 0;
        while (!f.isZero() && k < 64)
        {
            f = applyHomogeneous(d, f);
            ++k;
        }
        indexOk += k == toLong(pairing(m, root.distinguishedRay)) + 1;
    }
    const bool ok = leibniz == 1000 && expOk == 1000 && indexOk == 1000;
    return {ok, "Leibniz " + std::to_string(leibniz) + "/1000, exp homomorphism+group law " + std::to_string(expOk) +
                    "/1000, nilpotency index " + std::to_string(indexOk) + "/1000"};
}

Outcome lemmaOne()
{
    bool ok = true;
    std::string detail;
    for (const auto& c : standardCorpus())
    {
        const auto P = c.monoid();
        detail += (detail.empty() ? "" : "; ") + c.name + ":";
        for (std::size_t i = 0; i < P->sigmaRays().size(); ++i)
        {
            const auto r = lemmaOneCheck(*P, i, c.defaultBounds.coordBound, c.defaultBounds.degreeBound);
            ok = ok && r.verdict != LemmaOneReport::Verdict::InconclusiveAtBounds;
            if (c.name == "paper-example")
                ok = ok && r.verdict == LemmaOneReport::Verdict::AgreeYes;
            if (c.name == "cusp")
                ok = ok && r.verdict == LemmaOneReport::Verdict::AgreeNo;
            detail += std::string(" ") + toString(r.verdict);
        }
    }
    return {ok, detail};
}

Outcome mlTheorem()
{
    bool ok = true;
    std::string detail;
    const auto b = Bounds{};
    for (const std::string name : {"paper-example", "affine-plane", "affine-space-3", "cusp"})
    {
        const auto r = mlEqualsMlStarCheck(findCase(name)->monoid(), b.coordBound, b.degreeBound, b.sliceDegree, 8);
        const auto want = name == "cusp" ? MlComparison::Status::HypothesisNotMet : MlComparison::Status::Equal;
        ok = ok && r.status == want;
        detail += name + ": " + toString(r.status) + "; ";
    }
    return {ok, detail + "d = 8"};
}

Outcome determinism()
{
    const std::vector<std::vector<std::string>> commands{
        {"verify-paper"},
        {"analyze", "--scenario", data("paper-example.json")},
        {"roots", "--scenario", data("paper-example.json")},
        {"apply", "--scenario", data("paper-apply.json")},
        {"exp", "--scenario", data("paper-apply.json")},
        {"slice", "--scenario", data("paper-apply.json")},
        {"invariants", "ml", "--scenario", data("paper-bare.json")},
        {"invariants", "ml-star", "--scenario", data("paper-bare.json")},
        {"invariants", "hd", "--scenario", data("paper-bare.json")},
        {"invariants", "hd-star", "--scenario", data("paper-bare.json")},
        {"corpus", "export"},
    };
    std::size_t identical = 0, total = 0;
    for (const auto& base : commands)
        for (const std::string format : {"json", "text"})
        {
            auto args = base;
            args.insert(args.end(), {"--format", format});
            auto threaded = args;
            threaded.insert(threaded.end(), {"--threads", "4"});
            const auto a = runCli(args), b = runCli(args), c = runCli(threaded);
            ++total;
            identical += a.first == 0 && a == b && a == c;
        }
    return {identical == total,
            std::to_string(identical) + "/" + std::to_string(total) + " command runs byte-identical (1 vs 4 threads)"};
}

}   // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"verify-paper at default bounds", verifyPaper},
        {"root census", rootCensus},
        {"slice criterion", sliceCriterion},
        {"slice theorem reconstruction", sliceTheorem},
        {"kernel formula equivalence", kernelOracle},
        {"property suites", propertySuites},
        {"ray-wise consistency", lemmaOne},
        {"ML = ML* at probe level", mlTheorem},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        Outcome o;
        try
        {
            o = criteria[i].second();
        }
        catch (const std::exception& e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first
                  << " (" << o.detail << ")" << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
