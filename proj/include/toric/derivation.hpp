// Sparse elements of K[X] = ⊕_{m∈P} K chi^m and derivations built from
// Demazure roots: apply, exp, nilpotency, grading, kernels and slices.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/exactmath.hpp"
#include "toric/monoid.hpp"
#include "toric/roots.hpp"

namespace toric {

class MonoidMismatchError : public std::runtime_error
{
    public:
        explicit MonoidMismatchError(const std::string& what) : std::runtime_error(what) {}
};
/** An image exponent fell outside P: the root was not well defined after all. */
class WellDefinednessError : public std::runtime_error
{
    public:
        explicit WellDefinednessError(const std::string& what) : std::runtime_error(what) {}
};
class NonNilpotentError : public std::runtime_error
{
    public:
        explicit NonNilpotentError(const std::string& what) : std::runtime_error(what) {}
};

class AlgebraElement
{
    public:
        using TermMap = std::map<LatticePoint, Rational, LexLess>;

        explicit AlgebraElement(MonoidPtr monoid);

        static AlgebraElement constant(MonoidPtr monoid, const Rational& c);
        /** c * chi^m; throws PreconditionError unless m ∈ P. */
        static AlgebraElement monomial(MonoidPtr monoid, const LatticePoint& m, const Rational& c = Rational(1));
        static AlgebraElement fromTerms(MonoidPtr monoid, const std::vector<std::pair<LatticePoint, Rational>>& terms);
        static AlgebraElement fromVector(MonoidPtr monoid, const MonomialBasis& basis, const VectorXr& coeffs);

        const MonoidPtr& monoid() const { return monoid_; }
        const TermMap& termMap() const { return terms_; }
        /** Terms in graded-lex order. */
        std::vector<std::pair<LatticePoint, Rational>> terms() const;

        bool isZero() const { return terms_.empty(); }
        std::size_t size() const { return terms_.size(); }
        Rational coefficient(const LatticePoint& m) const;
        std::optional<Integer> minDegree() const;
        std::optional<Integer> maxDegree() const;

        /** Drops the terms of w0-degree > d. */
        AlgebraElement truncated(long d) const;
        /** Coefficients over `basis`; throws IndexError if a term is missing from it. */
        VectorXr toVector(const MonomialBasis& basis) const;

        AlgebraElement& operator+=(const AlgebraElement& other);
        AlgebraElement& operator-=(const AlgebraElement& other);
        AlgebraElement& operator*=(const Rational& c);

        bool operator==(const AlgebraElement& other) const;
        bool operator!=(const AlgebraElement& other) const { return !(*this == other); }

        /** Adds c * chi^m without the membership check; callers guarantee m ∈ P. */
        void addTermUnchecked(const LatticePoint& m, const Rational& c);

    private:
        MonoidPtr monoid_;
        TermMap terms_;
};

void requireSameMonoid(const AffineMonoid& a, const AffineMonoid& b, const char* context);

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(const Rational& c, AlgebraElement a);
/** Product; every exponent m + m' is re-checked against P. */
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

std::string toString(const AlgebraElement& f);

// ---------------------------------------------------------------------------

/** lambda * d_e, with d_e(chi^m) = <p_rho, m> chi^{m+e}. */
struct HomogeneousDerivation
{
    DemazureRoot root;
    Rational coefficient;
};

/** Validates the root and its well-definedness on P (bounded); throws WellDefinednessError. */
HomogeneousDerivation makeHomogeneous(const AffineMonoid& P, const LatticePoint& e, const Rational& coefficient,
                                      long degreeBound);

struct NilpotencyStatus
{
    enum class State { Unchecked, VerifiedUpToBound, Inconclusive };
    State state = State::Unchecked;
    long bound = 0;                              // chain length k, or the cap when inconclusive
    std::optional<LatticePoint> offendingGenerator;

    bool verified() const { return state == State::VerifiedUpToBound; }
};

const char* toString(NilpotencyStatus::State s);
std::string toString(const NilpotencyStatus& s);

/**
 * A finite rational combination of well-defined root derivations with
 * pairwise distinct roots, sorted by degree vector.
 */
class Derivation
{
    public:
        Derivation(MonoidPtr monoid, std::vector<HomogeneousDerivation> components,
                   NilpotencyStatus status = {});

        static Derivation zero(MonoidPtr monoid);
        /** Sum of coefficient * d_e over the given (e, coefficient) pairs. */
        static Derivation fromRoots(MonoidPtr monoid, const std::vector<std::pair<LatticePoint, Rational>>& roots,
                                    long degreeBound);

        const MonoidPtr& monoid() const { return monoid_; }
        const std::vector<HomogeneousDerivation>& components() const { return components_; }
        const NilpotencyStatus& nilpotency() const { return status_; }
        bool isZero() const { return components_.empty(); }

        /** The same derivation carrying the given status. */
        Derivation withStatus(NilpotencyStatus status) const;

        /** Largest <w0, e> over components (0 for the zero derivation). */
        Integer maxDegreeShift() const;
        /** Largest |<w0, e>| over components. */
        Integer maxAbsDegreeShift() const;

        std::string describe() const;

    private:
        MonoidPtr monoid_;
        std::vector<HomogeneousDerivation> components_;
        NilpotencyStatus status_;
};

Derivation operator+(const Derivation& a, const Derivation& b);

AlgebraElement applyHomogeneous(const HomogeneousDerivation& d, const AlgebraElement& f);
AlgebraElement apply(const Derivation& d, const AlgebraElement& f);

/** An M-homogeneous derivation chi^m -> <direction, m> chi^{m + degree}, direction ∈ N_Q. */
struct GeneralHomogeneousComponent
{
    LatticePoint degree;
    VectorXr direction;
};

AlgebraElement apply(const std::vector<GeneralHomogeneousComponent>& d, const MonoidPtr& monoid,
                     const AlgebraElement& f);

/** Homogeneous components of [d1, d2]; empty means the derivations commute. */
std::vector<GeneralHomogeneousComponent> commutator(const Derivation& d1, const Derivation& d2);

/** exp(t d)(f) = sum_i t^i d^i(f) / i!; throws NonNilpotentError at the cap. */
AlgebraElement expDerivation(const Derivation& d, const Rational& t, const AlgebraElement& f,
                             long iterationCap = 64);

/** Iterates d on every generator monomial; k = longest chain until zero. */
NilpotencyStatus verifyLocallyNilpotent(const Derivation& d, long iterationCap = 64);
Derivation verified(const Derivation& d, long iterationCap = 64);

/** Components grouped by <w, e>, ascending degree. */
std::vector<std::pair<Integer, Derivation>> gradeDecompose(const Derivation& d, const LatticePoint& w);

/** Components whose degree vector is a vertex of the hull of all degrees. */
std::vector<HomogeneousDerivation> hullVertexComponents(const Derivation& d);

/** Ker d on the degree-<= d coefficient space, by exact elimination. */
TruncatedSubspace kernelBasis(const Derivation& d, long degree);
/** span{chi^m : m ∈ P ∩ rho^perp, <w0,m> <= degree}. */
TruncatedSubspace kernelHomogeneous(const AffineMonoid& P, const DemazureRoot& root, long degree);

struct SliceResult
{
    std::optional<AlgebraElement> slice;
    long searchDegree = 0;
};

/** Solves d(s) = 1 over the nonconstant monomials of degree <= searchDegree. */
SliceResult findSlice(const Derivation& d, long searchDegree);

struct SliceTheoremReport
{
    bool containsAll = false;
    std::vector<LatticePoint> missing;
    long degree = 0;
    long kernelDegree = 0;
};

/**
 * Checks K[X] = (Ker d)[s] up to degree `degree`: the truncated subalgebra
 * generated by the kernel and s must contain every monomial.
 */
SliceTheoremReport sliceTheoremCheck(const Derivation& d, const AlgebraElement& s, long degree);

}   // namespace toric
