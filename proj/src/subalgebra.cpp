#include "toric/subalgebra.hpp"

#include <algorithm>

#include "toric/parallel.hpp"

namespace toric {

namespace {

/** Rows of `s` re-indexed over `amb`, dropping the monomials of degree > d. */
std::vector<SparseVector> projectRows(const AffineMonoid& P, const TruncatedSubspace& s, const MonomialBasis& amb,
                                      long d)
{
    const Integer bound(d);
    std::vector<std::optional<Index>> column(static_cast<std::size_t>(s.ambientDimension()));
    for (Index j = 0; j < s.ambientDimension(); ++j)
    {
        const LatticePoint& m = s.ambientBasis()[static_cast<std::size_t>(j)];
        if (m.size() != P.rank())
            throw DimensionError("generateSubalgebra: seed ambient has the wrong rank");
        if (P.degree(m) > bound)
            continue;
        auto idx = amb.indexOf(m);
        if (!idx)
            throw IndexError("generateSubalgebra: seed monomial " + toString(m) + " is not in P");
        column[static_cast<std::size_t>(j)] = idx;
    }
    std::vector<SparseVector> out;
    for (Index r = 0; r < s.dimension(); ++r)
    {
        SparseVector v;
        for (Index j = 0; j < s.ambientDimension(); ++j)
        {
            const auto& col = column[static_cast<std::size_t>(j)];
            if (col && s.rows()(r, j) != 0)
                v.emplace(*col, s.rows()(r, j));
        }
        if (!v.empty())
            out.push_back(std::move(v));
    }
    return out;
}

class TruncatedProduct
{
    public:
        TruncatedProduct(const AffineMonoid& P, const MonomialBasis& amb, long d)
            : n_(static_cast<std::size_t>(amb.size())), table_(n_ * n_, -1), degree_(n_)
        {
            for (std::size_t i = 0; i < n_; ++i)
                degree_[i] = toLong(P.degree(amb[static_cast<Index>(i)]));
            for (std::size_t i = 0; i < n_; ++i)
            {
                for (std::size_t j = i; j < n_; ++j)
                {
                    if (degree_[i] + degree_[j] > d)
                        continue;
                    auto k = amb.indexOf(amb[static_cast<Index>(i)] + amb[static_cast<Index>(j)]);
                    if (k)
                        table_[i * n_ + j] = table_[j * n_ + i] = *k;
                }
            }
            bound_ = d;
        }

        long minDegree(const SparseVector& v) const
        {
            long best = bound_ + 1;
            for (const auto& [i, c] : v)
                best = std::min(best, degree_[static_cast<std::size_t>(i)]);
            return best;
        }

        SparseVector operator()(const SparseVector& a, const SparseVector& b) const
        {
            SparseVector out;
            for (const auto& [i, ci] : a)
            {
                for (const auto& [j, cj] : b)
                {
                    const Index k = table_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)];
                    if (k < 0)
                        continue;
                    auto [it, inserted] = out.emplace(k, ci * cj);
                    if (!inserted)
                    {
                        it->second += ci * cj;
                        if (it->second == 0)
                            out.erase(it);
                    }
                }
            }
            return out;
        }

    private:
        std::size_t n_;
        std::vector<Index> table_;
        std::vector<long> degree_;
        long bound_ = 0;
};

}   // namespace

TruncatedSubspace generateSubalgebra(const AffineMonoid& P, const std::vector<TruncatedSubspace>& seeds, long d)
{
    Ambient amb = P.truncationAmbient(d);
    const std::size_t n = static_cast<std::size_t>(amb->size());
    const TruncatedProduct product(P, *amb, d);

    SparseEchelon span;
    std::vector<SparseVector> generators;
    struct Pending
    {
        SparseVector value;
        long minDegree;
        std::size_t multipliedUpTo = 0;
    };
    std::vector<Pending> pushed;

    auto addVector = [&](const SparseVector& v) {
        SparseEchelon::Row row{v, {}};
        if (!span.insert(row))
            return false;
        pushed.push_back({v, product.minDegree(v)});
        return true;
    };

    // The constant 1 sits at index 0 (degree 0 is the unique minimum).
    addVector(SparseVector{{0, Rational(1)}});

    std::vector<SparseVector> seedVectors;
    for (const auto& s : seeds)
    {
        auto rows = projectRows(P, s, *amb, d);
        seedVectors.insert(seedVectors.end(), std::make_move_iterator(rows.begin()),
                           std::make_move_iterator(rows.end()));
    }

    std::vector<long> generatorMinDegree;
    for (const auto& g : seedVectors)
    {
        if (span.size() == n)
            break;
        if (!addVector(g))
            continue;
        generators.push_back(g);
        generatorMinDegree.push_back(product.minDegree(g));
        // Close the span under multiplication by all generators found so far.
        for (std::size_t p = 0; p < pushed.size() && span.size() < n; ++p)
        {
            while (pushed[p].multipliedUpTo < generators.size() && span.size() < n)
            {
                const std::size_t from = pushed[p].multipliedUpTo;
                const std::size_t to = generators.size();
                pushed[p].multipliedUpTo = to;
                auto prods = parallelMap<SparseVector>(to - from, [&](std::size_t k) {
                    if (pushed[p].minDegree + generatorMinDegree[from + k] > d)
                        return SparseVector{};
                    return product(pushed[p].value, generators[from + k]);
                });
                for (auto& v : prods)
                {
                    if (!v.empty())
                        addVector(v);
                }
            }
        }
    }

    if (span.size() == n)
        return TruncatedSubspace::full(amb);
    MatrixXr m = MatrixXr::Zero(static_cast<Index>(span.size()), amb->size());
    Index r = 0;
    for (const auto& [pivot, row] : span.rows())
    {
        for (const auto& [j, c] : row.value)
            m(r, j) = c;
        ++r;
    }
    return TruncatedSubspace(amb, m);
}

TruncatedSubspace truncateSubspace(const AffineMonoid& P, const TruncatedSubspace& s, long d)
{
    Ambient amb = P.truncationAmbient(d);
    auto rows = projectRows(P, s, *amb, d);
    MatrixXr m = MatrixXr::Zero(static_cast<Index>(rows.size()), amb->size());
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        for (const auto& [j, c] : rows[r])
            m(static_cast<Index>(r), j) = c;
    }
    return TruncatedSubspace(amb, m);
}

}   // namespace toric
