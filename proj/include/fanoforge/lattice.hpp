#pragma once

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace fanoforge {

/// A rational vector in the basis of some surface model's Picard lattice.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::size_t rank) : coeffs_(rank) {}
    explicit DivisorClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
    DivisorClass(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) {}

    static DivisorClass zero(std::size_t rank) { return DivisorClass(rank); }
    static DivisorClass basis(std::size_t rank, std::size_t i)
    {
        DivisorClass e(rank);
        e.coeffs_.at(i) = 1;
        return e;
    }

    std::size_t size() const noexcept { return coeffs_.size(); }
    const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
    Rational& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
    }

    DivisorClass& operator+=(const DivisorClass& other)
    {
        check_same_size(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += other.coeffs_[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& other)
    {
        check_same_size(other);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= other.coeffs_[i];
        return *this;
    }
    DivisorClass& operator*=(const Rational& s)
    {
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator*(DivisorClass a, const Rational& s) { return a *= s; }
    friend bool operator==(const DivisorClass& a, const DivisorClass& b) { return a.coeffs_ == b.coeffs_; }

private:
    void check_same_size(const DivisorClass& other) const
    {
        if (other.size() != size())
            fail(ErrorKind::InvalidInput, "divisor classes of different rank (" + std::to_string(size()) + " vs "
                                              + std::to_string(other.size()) + ")");
    }

    std::vector<Rational> coeffs_;
};

using GramMatrix = std::vector<std::vector<Rational>>;

/// Raw fields of a surface model; validated by SurfaceModel::create.
struct SurfaceData {
    std::string name;
    GramMatrix gram;
    DivisorClass canonical;
    std::vector<DivisorClass> ample_gens;
    int char_p = 0;
    /// Names of the lattice basis vectors, used by the class-expression parser.
    std::vector<std::string> basis_names;
    /// K_S^2 when it was supplied as a configuration parameter.
    std::optional<Rational> ks2_param;
};

struct Signature {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

namespace detail {

inline bool is_prime(long long n)
{
    if (n < 2)
        return false;
    for (long long q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

inline void check_symmetric(const GramMatrix& gram)
{
    const std::size_t n = gram.size();
    for (const auto& row : gram)
        if (row.size() != n)
            fail(ErrorKind::InvalidInput, "gram matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram[i][j] != gram[j][i])
                fail(ErrorKind::InvalidInput, "gram matrix is not symmetric");
}

inline bool reserved_name(const std::string& s)
{
    return s == "H" || s == "pt" || s == "K" || s == "KW" || s == "c1" || s == "c2";
}

inline bool identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

} // namespace detail

/// Counts eigenvalue signs of a symmetric rational matrix exactly, by congruence
/// diagonalisation (Sylvester's law of inertia).
inline Signature signature(GramMatrix m)
{
    detail::check_symmetric(m);
    Signature sig;
    std::size_t n = m.size();
    while (n > 0) {
        std::size_t pivot = n;
        for (std::size_t i = 0; i < n; ++i)
            if (m[i][i] != 0) {
                pivot = i;
                break;
            }
        if (pivot == n) {
            // Zero diagonal: e_i -> e_i + e_j turns an off-diagonal entry into a diagonal one.
            std::optional<std::pair<std::size_t, std::size_t>> off;
            for (std::size_t i = 0; i < n && !off; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (m[i][j] != 0) {
                        off = {i, j};
                        break;
                    }
            if (!off) {
                sig.zero += static_cast<int>(n);
                break;
            }
            auto [i, j] = *off;
            for (std::size_t k = 0; k < n; ++k)
                m[i][k] += m[j][k];
            for (std::size_t k = 0; k < n; ++k)
                m[k][i] += m[k][j];
            pivot = i;
        }
        const Rational d = m[pivot][pivot];
        (d > 0 ? sig.positive : sig.negative) += 1;
        GramMatrix next;
        next.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pivot)
                continue;
            std::vector<Rational> row;
            row.reserve(n - 1);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == pivot)
                    continue;
                row.push_back(m[i][j] - m[i][pivot] * m[pivot][j] / d);
            }
            next.push_back(std::move(row));
        }
        m = std::move(next);
        --n;
    }
    return sig;
}

/// True iff the symmetric matrix has exactly one positive eigenvalue.
inline bool hodge_index_check(const GramMatrix& gram) { return signature(gram).positive == 1; }

/// Immutable, cheaply copyable handle to a validated Picard-lattice model of a surface.
class SurfaceModel {
public:
    static SurfaceModel create(SurfaceData data)
    {
        const std::size_t rank = data.gram.size();
        if (rank == 0)
            fail(ErrorKind::InvalidInput, "surface model must have rank >= 1");
        detail::check_symmetric(data.gram);
        for (const auto& row : data.gram)
            for (const auto& g : row)
                if (!is_integer(g))
                    fail(ErrorKind::InvalidInput, "gram matrix entries must be integers");
        if (data.canonical.size() != rank)
            fail(ErrorKind::InvalidInput, "canonical class has wrong length");
        if (data.ample_gens.empty())
            fail(ErrorKind::InvalidInput, "at least one ample generator is required");
        for (const auto& a : data.ample_gens)
            if (a.size() != rank)
                fail(ErrorKind::InvalidInput, "ample generator has wrong length");
        if (data.char_p != 0 && !(data.char_p >= 3 && detail::is_prime(data.char_p)))
            fail(ErrorKind::InvalidInput, "char_p must be 0 or a prime >= 3");
        if (!hodge_index_check(data.gram))
            fail(ErrorKind::InvalidInput, "gram matrix violates the Hodge index theorem (need one positive eigenvalue)");

        if (data.basis_names.empty()) {
            if (rank == 1)
                data.basis_names = {"A"};
            else
                for (std::size_t i = 0; i < rank; ++i)
                    data.basis_names.push_back("e" + std::to_string(i + 1));
        }
        if (data.basis_names.size() != rank)
            fail(ErrorKind::InvalidInput, "basis name count differs from rank");
        for (std::size_t i = 0; i < rank; ++i) {
            const auto& s = data.basis_names[i];
            if (!detail::identifier(s) || detail::reserved_name(s))
                fail(ErrorKind::InvalidInput, "invalid basis name '" + s + "'");
            if (std::find(data.basis_names.begin(), data.basis_names.begin() + i, s) != data.basis_names.begin() + i)
                fail(ErrorKind::InvalidInput, "duplicate basis name '" + s + "'");
        }

        SurfaceModel model(std::make_shared<const SurfaceData>(std::move(data)));
        const auto& gens = model.ample_gens();
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i; j < gens.size(); ++j)
                if (model.pair(gens[i], gens[j]) <= 0)
                    fail(ErrorKind::InvalidInput, "declared ample generators must pair positively");
        if (model.data_->ks2_param && *model.data_->ks2_param != model.ks2())
            fail(ErrorKind::InvalidInput, "params.KS2 disagrees with K.K computed from the lattice");
        return model;
    }

    const std::string& name() const { return data_->name; }
    std::size_t rank() const { return data_->gram.size(); }
    const GramMatrix& gram() const { return data_->gram; }
    const DivisorClass& canonical() const { return data_->canonical; }
    const std::vector<DivisorClass>& ample_gens() const { return data_->ample_gens; }
    int char_p() const { return data_->char_p; }
    const std::vector<std::string>& basis_names() const { return data_->basis_names; }
    const std::optional<Rational>& ks2_param() const { return data_->ks2_param; }
    const SurfaceData& data() const { return *data_; }

    /// x^T * gram * y.
    Rational pair(const DivisorClass& x, const DivisorClass& y) const
    {
        check(x);
        check(y);
        Rational sum = 0;
        const auto& g = gram();
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0)
                continue;
            Rational row = 0;
            for (std::size_t j = 0; j < rank(); ++j)
                row += g[i][j] * y[j];
            sum += x[i] * row;
        }
        return sum;
    }

    Rational ks2() const { return pair(canonical(), canonical()); }

    void check(const DivisorClass& x) const
    {
        if (x.size() != rank())
            fail(ErrorKind::InvalidInput, "class of length " + std::to_string(x.size()) + " on a model of rank "
                                              + std::to_string(rank()));
    }

    DivisorClass zero() const { return DivisorClass::zero(rank()); }

    /// Same lattice data (identity of handles implies it).
    bool same_lattice(const SurfaceModel& other) const
    {
        return data_ == other.data_ || (gram() == other.gram() && canonical() == other.canonical());
    }

private:
    explicit SurfaceModel(std::shared_ptr<const SurfaceData> d) : data_(std::move(d)) {}

    std::shared_ptr<const SurfaceData> data_;
};

inline Rational intersect(const SurfaceModel& model, const DivisorClass& x, const DivisorClass& y)
{
    return model.pair(x, y);
}

/// x.a > 0 for every declared ample generator a, and x.x > 0.
inline bool is_positive_on_ample(const SurfaceModel& model, const DivisorClass& x)
{
    model.check(x);
    for (const auto& a : model.ample_gens())
        if (model.pair(x, a) <= 0)
            return false;
    return model.pair(x, x) > 0;
}

/// Certified vanishing of H^2(S, O(x)): by Serre duality H^2(x) is dual to H^0(K_S - x),
/// which vanishes when K_S - x is negative on some ample class. False means inconclusive.
inline bool h0_vanishes(const SurfaceModel& model, const DivisorClass& x)
{
    const DivisorClass dual = model.canonical() - x;
    for (const auto& a : model.ample_gens())
        if (model.pair(dual, a) < 0)
            return true;
    return false;
}

inline bool hodge_index_check(const SurfaceModel& model) { return hodge_index_check(model.gram()); }

namespace presets {

/// P^2 with hyperplane class h: gram [1], K = -3h.
inline SurfaceModel p2()
{
    SurfaceData d;
    d.name = "p2";
    d.gram = {{1}};
    d.canonical = DivisorClass{-3};
    d.ample_gens = {DivisorClass{1}};
    d.basis_names = {"h"};
    return SurfaceModel::create(std::move(d));
}

/// Rank-one surface with ample canonical class and K_S^2 = ks2. The generator A is chosen
/// primitive: K = s*A with s^2 the largest square dividing ks2, so A^2 = ks2 / s^2.
inline SurfaceModel ample_k(long long ks2, int char_p = 0, std::string name = "ample-K")
{
    if (ks2 < 1)
        fail(ErrorKind::InvalidInput, "K_S^2 must be a positive integer, got " + std::to_string(ks2));
    long long s = 1;
    for (long long t = 1; t * t <= ks2; ++t)
        if (ks2 % (t * t) == 0)
            s = t;
    SurfaceData d;
    d.name = std::move(name);
    d.gram = {{Rational(ks2 / (s * s))}};
    d.canonical = DivisorClass{Rational(s)};
    d.ample_gens = {DivisorClass{1}};
    d.char_p = char_p;
    d.ks2_param = Rational(ks2);
    return SurfaceModel::create(std::move(d));
}

/// Numerical stand-in for the Raynaud surface: only K_S^2 (required) and the characteristic enter.
inline SurfaceModel raynaud(long long ks2, int char_p)
{
    if (char_p < 3 || !detail::is_prime(char_p))
        fail(ErrorKind::InvalidInput, "the raynaud preset needs a prime characteristic >= 3");
    return ample_k(ks2, char_p, "raynaud");
}

} // namespace presets

} // namespace fanoforge
