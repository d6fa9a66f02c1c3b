#include "toric/derivation.hpp"

#include <algorithm>
#include <sstream>

#include "toric/parallel.hpp"
#include "toric/subalgebra.hpp"

namespace toric {

void requireSameMonoid(const AffineMonoid& a, const AffineMonoid& b, const char* context)
{
    if (&a != &b && !(a == b))
        throw MonoidMismatchError(std::string(context) + ": operands live over different monoids");
}

AlgebraElement::AlgebraElement(MonoidPtr monoid) : monoid_(std::move(monoid))
{
    if (!monoid_)
        throw PreconditionError("AlgebraElement: null monoid");
}

AlgebraElement AlgebraElement::constant(MonoidPtr monoid, const Rational& c)
{
    AlgebraElement f(std::move(monoid));
    f.addTermUnchecked(zeroPoint(f.monoid_->rank()), c);
    return f;
}

AlgebraElement AlgebraElement::monomial(MonoidPtr monoid, const LatticePoint& m, const Rational& c)
{
    AlgebraElement f(std::move(monoid));
    if (!f.monoid_->contains(m))
        throw PreconditionError("AlgebraElement: exponent " + toString(m) + " is not in P");
    f.addTermUnchecked(m, c);
    return f;
}

AlgebraElement AlgebraElement::fromTerms(MonoidPtr monoid, const std::vector<std::pair<LatticePoint, Rational>>& terms)
{
    AlgebraElement f(std::move(monoid));
    for (const auto& [m, c] : terms)
        f += monomial(f.monoid_, m, c);
    return f;
}

AlgebraElement AlgebraElement::fromVector(MonoidPtr monoid, const MonomialBasis& basis, const VectorXr& coeffs)
{
    if (coeffs.size() != basis.size())
        throw DimensionError("AlgebraElement::fromVector: coefficient count does not match the basis");
    AlgebraElement f(std::move(monoid));
    for (Index i = 0; i < coeffs.size(); ++i)
    {
        if (coeffs(i) != 0)
            f += monomial(f.monoid_, basis[i], coeffs(i));
    }
    return f;
}

std::vector<std::pair<LatticePoint, Rational>> AlgebraElement::terms() const
{
    std::vector<std::pair<LatticePoint, Rational>> out(terms_.begin(), terms_.end());
    const auto order = monoid_->order();
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return order(a.first, b.first); });
    return out;
}

Rational AlgebraElement::coefficient(const LatticePoint& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Integer> AlgebraElement::minDegree() const
{
    std::optional<Integer> best;
    for (const auto& [m, c] : terms_)
    {
        const Integer d = monoid_->degree(m);
        if (!best || d < *best)
            best = d;
    }
    return best;
}

std::optional<Integer> AlgebraElement::maxDegree() const
{
    std::optional<Integer> best;
    for (const auto& [m, c] : terms_)
    {
        const Integer d = monoid_->degree(m);
        if (!best || d > *best)
            best = d;
    }
    return best;
}

AlgebraElement AlgebraElement::truncated(long d) const
{
    AlgebraElement out(monoid_);
    const Integer bound(d);
    for (const auto& [m, c] : terms_)
    {
        if (monoid_->degree(m) <= bound)
            out.terms_.emplace(m, c);
    }
    return out;
}

VectorXr AlgebraElement::toVector(const MonomialBasis& basis) const
{
    VectorXr v = VectorXr::Zero(basis.size());
    for (const auto& [m, c] : terms_)
    {
        auto idx = basis.indexOf(m);
        if (!idx)
            throw IndexError("AlgebraElement::toVector: monomial " + toString(m) + " is outside the basis");
        v(*idx) = c;
    }
    return v;
}

void AlgebraElement::addTermUnchecked(const LatticePoint& m, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted)
    {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other)
{
    requireSameMonoid(*monoid_, *other.monoid_, "AlgebraElement::+");
    for (const auto& [m, c] : other.terms_)
        addTermUnchecked(m, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other)
{
    requireSameMonoid(*monoid_, *other.monoid_, "AlgebraElement::-");
    for (const auto& [m, c] : other.terms_)
        addTermUnchecked(m, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Rational& c)
{
    if (c == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

bool AlgebraElement::operator==(const AlgebraElement& other) const
{
    requireSameMonoid(*monoid_, *other.monoid_, "AlgebraElement::==");
    return terms_ == other.terms_;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b)
{
    a += b;
    return a;
}

AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b)
{
    a -= b;
    return a;
}

AlgebraElement operator*(const Rational& c, AlgebraElement a)
{
    a *= c;
    return a;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b)
{
    requireSameMonoid(*a.monoid(), *b.monoid(), "AlgebraElement::*");
    AlgebraElement out(a.monoid());
    for (const auto& [m1, c1] : a.termMap())
    {
        for (const auto& [m2, c2] : b.termMap())
        {
            LatticePoint m = m1 + m2;
            if (!a.monoid()->contains(m))
                throw std::logic_error("AlgebraElement::*: product exponent " + toString(m) + " left P");
            out.addTermUnchecked(m, c1 * c2);
        }
    }
    return out;
}

std::string toString(const AlgebraElement& f)
{
    if (f.isZero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms())
    {
        if (!first)
            os << " + ";
        first = false;
        os << toString(c) << "*chi^" << toString(m);
    }
    return os.str();
}

// ---------------------------------------------------------------------------

HomogeneousDerivation makeHomogeneous(const AffineMonoid& P, const LatticePoint& e, const Rational& coefficient,
                                      long degreeBound)
{
    if (e.size() != P.rank())
        throw DimensionError("makeHomogeneous: root " + toString(e) + " has the wrong rank");
    auto root = rootFromVector(P, e);
    if (!root)
        throw PreconditionError("makeHomogeneous: " + toString(e) + " is not a Demazure root of sigma");
    auto verdict = isWellDefined(P, *root, degreeBound);
    if (!verdict.holds())
        throw WellDefinednessError("makeHomogeneous: root " + toString(e) + " is not well defined on P: hole "
                                   + toString(*verdict.witness) + " has " + toString(*verdict.witness) + " - e in P");
    return HomogeneousDerivation{std::move(*root), coefficient};
}

const char* toString(NilpotencyStatus::State s)
{
    switch (s)
    {
        case NilpotencyStatus::State::Unchecked: return "Unchecked";
        case NilpotencyStatus::State::VerifiedUpToBound: return "VerifiedUpToBound";
        case NilpotencyStatus::State::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string toString(const NilpotencyStatus& s)
{
    if (s.state == NilpotencyStatus::State::Unchecked)
        return "Unchecked";
    return std::string(toString(s.state)) + "(" + std::to_string(s.bound) + ")";
}

Derivation::Derivation(MonoidPtr monoid, std::vector<HomogeneousDerivation> components, NilpotencyStatus status)
    : monoid_(std::move(monoid)), status_(std::move(status))
{
    if (!monoid_)
        throw PreconditionError("Derivation: null monoid");
    std::map<LatticePoint, HomogeneousDerivation, LexLess> merged;
    for (auto& c : components)
    {
        if (c.root.e.size() != monoid_->rank())
            throw DimensionError("Derivation: component root has the wrong rank");
        auto [it, inserted] = merged.emplace(c.root.e, c);
        if (!inserted)
            it->second.coefficient += c.coefficient;
    }
    for (auto& [e, c] : merged)
    {
        if (c.coefficient != 0)
            components_.push_back(std::move(c));
    }
}

Derivation Derivation::zero(MonoidPtr monoid)
{
    return Derivation(std::move(monoid), {});
}

Derivation Derivation::fromRoots(MonoidPtr monoid, const std::vector<std::pair<LatticePoint, Rational>>& roots,
                                 long degreeBound)
{
    std::vector<HomogeneousDerivation> comps;
    for (const auto& [e, c] : roots)
        comps.push_back(makeHomogeneous(*monoid, e, c, degreeBound));
    return Derivation(std::move(monoid), std::move(comps));
}

Derivation Derivation::withStatus(NilpotencyStatus status) const
{
    Derivation out = *this;
    out.status_ = std::move(status);
    return out;
}

Integer Derivation::maxDegreeShift() const
{
    std::optional<Integer> best;
    for (const auto& c : components_)
    {
        const Integer d = monoid_->degree(c.root.e);
        if (!best || d > *best)
            best = d;
    }
    return best.value_or(Integer(0));
}

Integer Derivation::maxAbsDegreeShift() const
{
    Integer best = 0;
    for (const auto& c : components_)
        best = std::max(best, Integer(abs(monoid_->degree(c.root.e))));
    return best;
}

std::string Derivation::describe() const
{
    if (components_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& c : components_)
    {
        if (!first)
            os << " + ";
        first = false;
        os << toString(c.coefficient) << "*d" << toString(c.root.e);
    }
    return os.str();
}

Derivation operator+(const Derivation& a, const Derivation& b)
{
    requireSameMonoid(*a.monoid(), *b.monoid(), "Derivation::+");
    auto comps = a.components();
    comps.insert(comps.end(), b.components().begin(), b.components().end());
    return Derivation(a.monoid(), std::move(comps));
}

AlgebraElement applyHomogeneous(const HomogeneousDerivation& d, const AlgebraElement& f)
{
    const auto& P = *f.monoid();
    AlgebraElement out(f.monoid());
    for (const auto& [m, c] : f.termMap())
    {
        const Integer k = pairing(m, d.root.distinguishedRay);
        if (k == 0)
            continue;
        LatticePoint target = m + d.root.e;
        if (!P.contains(target))
            throw WellDefinednessError("applyHomogeneous: image exponent " + toString(target)
                                       + " is not in P (root " + toString(d.root.e) + " is not well defined)");
        out.addTermUnchecked(target, d.coefficient * Rational(k) * c);
    }
    return out;
}

AlgebraElement apply(const Derivation& d, const AlgebraElement& f)
{
    requireSameMonoid(*d.monoid(), *f.monoid(), "apply");
    AlgebraElement out(f.monoid());
    for (const auto& c : d.components())
        out += applyHomogeneous(c, f);
    return out;
}

AlgebraElement apply(const std::vector<GeneralHomogeneousComponent>& d, const MonoidPtr& monoid,
                     const AlgebraElement& f)
{
    requireSameMonoid(*monoid, *f.monoid(), "apply");
    AlgebraElement out(monoid);
    for (const auto& comp : d)
    {
        for (const auto& [m, c] : f.termMap())
        {
            const Rational k = toRational(m).dot(comp.direction);
            if (k == 0)
                continue;
            LatticePoint target = m + comp.degree;
            if (!monoid->contains(target))
                throw WellDefinednessError("apply: image exponent " + toString(target) + " is not in P");
            out.addTermUnchecked(target, k * c);
        }
    }
    return out;
}

std::vector<GeneralHomogeneousComponent> commutator(const Derivation& d1, const Derivation& d2)
{
    requireSameMonoid(*d1.monoid(), *d2.monoid(), "commutator");
    // [a d_e, b d_f](chi^m) = ab (<rho_e, f> <rho_f, m> - <rho_f, e> <rho_e, m>) chi^{m+e+f}
    std::map<LatticePoint, VectorXr, LexLess> acc;
    for (const auto& a : d1.components())
    {
        for (const auto& b : d2.components())
        {
            const Rational ab = a.coefficient * b.coefficient;
            const Rational pf = Rational(pairing(b.root.e, a.root.distinguishedRay));
            const Rational pe = Rational(pairing(a.root.e, b.root.distinguishedRay));
            VectorXr v = ab * (pf * toRational(b.root.distinguishedRay) - pe * toRational(a.root.distinguishedRay));
            LatticePoint deg = a.root.e + b.root.e;
            auto it = acc.find(deg);
            if (it == acc.end())
                acc.emplace(std::move(deg), std::move(v));
            else
                it->second += v;
        }
    }
    std::vector<GeneralHomogeneousComponent> out;
    for (auto& [deg, v] : acc)
    {
        bool nonzero = false;
        for (Index i = 0; i < v.size(); ++i)
            nonzero = nonzero || v(i) != 0;
        if (nonzero)
            out.push_back({deg, std::move(v)});
    }
    return out;
}

AlgebraElement expDerivation(const Derivation& d, const Rational& t, const AlgebraElement& f, long iterationCap)
{
    requireSameMonoid(*d.monoid(), *f.monoid(), "expDerivation");
    AlgebraElement result = f;
    AlgebraElement term = f;   // t^i d^i(f) / i!
    for (long i = 1; i <= iterationCap; ++i)
    {
        term = apply(d, term);
        if (term.isZero())
            return result;
        term *= t / Rational(i);
        result += term;
    }
    throw NonNilpotentError("expDerivation: d^k(f) did not vanish within " + std::to_string(iterationCap)
                            + " iterations");
}

NilpotencyStatus verifyLocallyNilpotent(const Derivation& d, long iterationCap)
{
    NilpotencyStatus status;
    status.state = NilpotencyStatus::State::VerifiedUpToBound;
    long longest = 0;
    for (const auto& g : d.monoid()->generators())
    {
        AlgebraElement f = AlgebraElement::monomial(d.monoid(), g);
        long k = 0;
        while (!f.isZero() && k < iterationCap)
        {
            f = apply(d, f);
            ++k;
        }
        if (!f.isZero())
        {
            status.state = NilpotencyStatus::State::Inconclusive;
            status.bound = iterationCap;
            status.offendingGenerator = g;
            return status;
        }
        longest = std::max(longest, k);
    }
    status.bound = longest;
    return status;
}

Derivation verified(const Derivation& d, long iterationCap)
{
    return d.withStatus(verifyLocallyNilpotent(d, iterationCap));
}

std::vector<std::pair<Integer, Derivation>> gradeDecompose(const Derivation& d, const LatticePoint& w)
{
    if (w.size() != d.monoid()->rank())
        throw DimensionError("gradeDecompose: grading vector has the wrong rank");
    std::map<Integer, std::vector<HomogeneousDerivation>> groups;
    for (const auto& c : d.components())
        groups[pairing(c.root.e, w)].push_back(c);
    std::vector<std::pair<Integer, Derivation>> out;
    for (auto& [deg, comps] : groups)
        out.emplace_back(deg, Derivation(d.monoid(), std::move(comps)));
    return out;
}

std::vector<HomogeneousDerivation> hullVertexComponents(const Derivation& d)
{
    if (d.isZero())
        throw DegenerateInputError("hullVertexComponents: the zero derivation has no components");
    std::vector<LatticePoint> degs;
    for (const auto& c : d.components())
        degs.push_back(c.root.e);
    std::vector<HomogeneousDerivation> out;
    for (const auto& v : hullVertices(degs))
    {
        for (const auto& c : d.components())
        {
            if (c.root.e == v)
                out.push_back(c);
        }
    }
    return out;
}

namespace {

/** Images of the basis monomials under d, as sparse vectors over a shared codomain index. */
struct ImageSystem
{
    std::vector<SparseVector> images;
    std::map<LatticePoint, Index, LexLess> codomain;
};

ImageSystem imagesOf(const Derivation& d, const std::vector<LatticePoint>& monomials)
{
    auto imgs = parallelMap<AlgebraElement>(monomials.size(), [&](std::size_t i) {
        return apply(d, AlgebraElement::monomial(d.monoid(), monomials[i]));
    });
    ImageSystem sys;
    for (const auto& f : imgs)
    {
        SparseVector v;
        for (const auto& [m, c] : f.termMap())
        {
            auto [it, inserted] = sys.codomain.emplace(m, static_cast<Index>(sys.codomain.size()));
            v.emplace(it->second, c);
        }
        sys.images.push_back(std::move(v));
    }
    return sys;
}

}   // namespace

TruncatedSubspace kernelBasis(const Derivation& d, long degree)
{
    Ambient amb = d.monoid()->truncationAmbient(degree);
    if (d.isZero())
        return TruncatedSubspace::full(amb);
    const auto sys = imagesOf(d, amb->points());
    SparseEchelon ech;
    std::vector<SparseVector> relations;
    for (std::size_t i = 0; i < sys.images.size(); ++i)
    {
        SparseEchelon::Row row{sys.images[i], SparseVector{{static_cast<Index>(i), Rational(1)}}};
        if (!ech.insert(row))
            relations.push_back(std::move(row.combination));
    }
    MatrixXr k = MatrixXr::Zero(static_cast<Index>(relations.size()), amb->size());
    for (std::size_t r = 0; r < relations.size(); ++r)
    {
        for (const auto& [j, c] : relations[r])
            k(static_cast<Index>(r), j) = c;
    }
    return TruncatedSubspace(amb, k);
}

TruncatedSubspace kernelHomogeneous(const AffineMonoid& P, const DemazureRoot& root, long degree)
{
    Ambient amb = P.truncationAmbient(degree);
    std::vector<LatticePoint> mons;
    for (const auto& m : amb->points())
    {
        if (pairing(m, root.distinguishedRay) == 0)
            mons.push_back(m);
    }
    return TruncatedSubspace::spanOfMonomials(amb, mons);
}

SliceResult findSlice(const Derivation& d, long searchDegree)
{
    SliceResult res;
    res.searchDegree = searchDegree;
    std::vector<LatticePoint> unknowns;
    for (const auto& m : d.monoid()->truncationSet(searchDegree))
    {
        if (!isZero(m))
            unknowns.push_back(m);
    }
    const auto sys = imagesOf(d, unknowns);
    auto one = sys.codomain.find(zeroPoint(d.monoid()->rank()));
    if (one == sys.codomain.end())
        return res;
    SparseEchelon ech;
    for (std::size_t i = 0; i < sys.images.size(); ++i)
    {
        SparseEchelon::Row row{sys.images[i], SparseVector{{static_cast<Index>(i), Rational(1)}}};
        ech.insert(row);
    }
    SparseEchelon::Row target{SparseVector{{one->second, Rational(1)}}, SparseVector{}};
    ech.reduce(target);
    if (!target.value.empty())
        return res;
    // target - sum c_r row_r = 0 and combination = -sum c_r comb_r
    AlgebraElement s(d.monoid());
    for (const auto& [j, c] : target.combination)
        s.addTermUnchecked(unknowns[static_cast<std::size_t>(j)], -c);
    if (apply(d, s) != AlgebraElement::constant(d.monoid(), Rational(1)))
        throw std::logic_error("findSlice: recovered slice does not satisfy d(s) = 1");
    res.slice = std::move(s);
    return res;
}

SliceTheoremReport sliceTheoremCheck(const Derivation& d, const AlgebraElement& s, long degree)
{
    requireSameMonoid(*d.monoid(), *s.monoid(), "sliceTheoremCheck");
    const auto& P = *d.monoid();
    if (apply(d, s) != AlgebraElement::constant(d.monoid(), Rational(1)))
        throw PreconditionError("sliceTheoremCheck: s is not a slice (d(s) != 1)");
    if (degree < 0)
        throw PreconditionError("sliceTheoremCheck: degree must be nonnegative");

    // Every f of degree <= `degree` is sum_k pi(d^k f) s^k / k! with the
    // kernel elements pi(g) = sum_i (-1)^i s^i d^i(g) / i!, whose degree is at
    // most deg f + (nu(f) - 1) * (deg s + shift); size the kernel accordingly.
    const Integer perStep = std::max(Integer(0), s.maxDegree().value_or(Integer(0)) + d.maxDegreeShift());
    Integer kernelDeg = degree;
    for (const auto& m : P.truncationSet(degree))
    {
        AlgebraElement f = AlgebraElement::monomial(d.monoid(), m);
        long nu = 0;
        while (!f.isZero())
        {
            if (nu >= 64)
                throw NonNilpotentError("sliceTheoremCheck: d is not locally nilpotent on " + toString(m));
            f = apply(d, f);
            ++nu;
        }
        kernelDeg = std::max(kernelDeg, P.degree(m) + Integer(std::max(0L, nu - 1)) * perStep);
    }

    SliceTheoremReport rep;
    rep.degree = degree;
    rep.kernelDegree = toLong(kernelDeg);
    Ambient amb = P.truncationAmbient(degree);
    const auto kernel = kernelBasis(d, rep.kernelDegree);
    MatrixXr srow = s.truncated(degree).toVector(*amb).transpose();
    const auto gen = generateSubalgebra(P, {kernel, TruncatedSubspace(amb, srow)}, degree);
    for (Index i = 0; i < amb->size(); ++i)
    {
        VectorXr unit = VectorXr::Zero(amb->size());
        unit(i) = 1;
        if (!gen.containsVector(unit))
            rep.missing.push_back((*amb)[i]);
    }
    rep.containsAll = rep.missing.empty();
    return rep;
}

}   // namespace toric
