#pragma once

// Exact univariate polynomials over GMP integers/rationals, Sturm-sequence
// root counting and isolation, and the exact pointwise comparison of two
// polynomials on an interval of the non-negative reals.
//
// Nothing in this header uses floating point.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "domopt/error.hpp"

namespace domopt {

template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    static Polynomial monomial(const T& coeff, int degree)
    {
        std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
        c.back() = coeff;
        return Polynomial(std::move(c));
    }
    static Polynomial constant(const T& value) { return Polynomial(std::vector<T>{value}); }
    /// The polynomial x.
    static Polynomial x() { return monomial(T(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }

    /// Coefficient of x^i; zero beyond the degree.
    T operator[](int i) const { return (i >= 0 && i <= degree()) ? c_[static_cast<std::size_t>(i)] : T(0); }
    std::span<const T> coeffs() const noexcept { return c_; }
    const T& lead() const { return c_.back(); }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p)
    {
        if (s == 0) return {};
        Polynomial r = p;
        for (auto& c : r.c_) c *= s;
        return r;
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Polynomial derivative() const
    {
        if (degree() < 1) return {};
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return Polynomial(std::move(d));
    }

    /// Exact Horner evaluation at a rational point.
    mpq_class eval(const mpq_class& x) const
    {
        mpq_class acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
        return acc;
    }

    /// Multiplicity of 0 as a root (number of leading zero coefficients).
    int low_order() const noexcept
    {
        int k = 0;
        while (k <= degree() && c_[static_cast<std::size_t>(k)] == 0) ++k;
        return k;
    }

    /// Divides by x^k; the low coefficients must be zero.
    Polynomial shifted_down(int k) const
    {
        if (k <= 0) return *this;
        if (k > degree()) return {};
        return Polynomial(std::vector<T>(c_.begin() + k, c_.end()));
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPoly = Polynomial<mpz_class>;
using RatPoly = Polynomial<mpq_class>;

inline IntPoly pow(const IntPoly& base, unsigned e)
{
    IntPoly result = IntPoly::constant(1), b = base;
    while (e != 0) {
        if (e & 1U) result = result * b;
        e >>= 1U;
        if (e != 0) b = b * b;
    }
    return result;
}

/// (1 + x)^n with binomial coefficients.
inline IntPoly one_plus_x_pow(int n)
{
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) mpz_bin_uiui(c[i].get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(i));
    return IntPoly(std::move(c));
}

inline mpz_class binomial(long n, long k)
{
    mpz_class r = 0;
    if (n < 0 || k < 0 || k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline RatPoly to_rational(const IntPoly& p)
{
    std::vector<mpq_class> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.emplace_back(a);
    return RatPoly(std::move(c));
}

/// Scales a nonzero rational polynomial by a positive rational so that the
/// coefficients become coprime integers. Signs are preserved.
inline IntPoly primitive_part(const RatPoly& p)
{
    if (p.is_zero()) return {};
    mpz_class den = 1, num = 0;
    for (const auto& c : p.coeffs()) {
        if (c == 0) continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    std::vector<mpz_class> out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        mpz_class v = c.get_num() * (den / c.get_den());
        out.push_back(v);
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    for (auto& v : out) v /= num;
    return IntPoly(std::move(out));
}

inline IntPoly primitive_part(const IntPoly& p) { return primitive_part(to_rational(p)); }

/// Quotient and remainder over Q.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b)
{
    if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
    std::vector<mpq_class> rem(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    const int dq = a.degree() - db;
    if (dq < 0) return {RatPoly{}, a};
    std::vector<mpq_class> quo(static_cast<std::size_t>(dq) + 1, mpq_class(0));
    for (int k = dq; k >= 0; --k) {
        const mpq_class f = rem[static_cast<std::size_t>(k + db)] / b.lead();
        quo[static_cast<std::size_t>(k)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b[j];
    }
    return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

/// Monic gcd over Q (zero if both are zero).
inline RatPoly gcd(RatPoly a, RatPoly b)
{
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (1 / a.lead()) * a;
}

/// P / gcd(P, P'), primitive, positive leading coefficient.
inline IntPoly squarefree_part(const IntPoly& p)
{
    if (p.is_zero()) throw InvalidArgument("squarefree part of the zero polynomial");
    const RatPoly rp = to_rational(p);
    const RatPoly g = gcd(rp, rp.derivative());
    IntPoly s = primitive_part(divmod(rp, g).first);
    if (s.lead() < 0) s = -s;
    return s;
}

/// Exact division by (x - r) for a rational root r.
inline IntPoly deflate(const IntPoly& p, const mpq_class& r)
{
    RatPoly linear{mpq_class(-r), mpq_class(1)};
    auto [q, rem] = divmod(to_rational(p), linear);
    if (!rem.is_zero()) throw InvalidArgument("deflate: value is not a root");
    IntPoly out = primitive_part(q);
    if (!out.is_zero() && out.lead() < 0) out = -out;
    return out;
}

/// Sign of p(x) computed in integers: p(a/b) b^deg.
inline int sign_at(const IntPoly& p, const mpq_class& x)
{
    if (p.is_zero()) return 0;
    const mpz_class& a = x.get_num();
    const mpz_class& b = x.get_den();
    mpz_class acc = p.lead(), bpow = 1;
    for (int i = p.degree() - 1; i >= 0; --i) {
        bpow *= b;
        acc = acc * a + p[i] * bpow;
    }
    return sgn(acc);
}

inline mpq_class eval_rational(const IntPoly& p, const mpq_class& x) { return p.eval(x); }

// ---------------------------------------------------------------------------
// Lexicographic orders. Scanning from the constant term upward decides which
// polynomial is larger for all sufficiently small x > 0; scanning from the
// top down decides it for all sufficiently large x. The first coefficient
// where the two differ wins; later coefficients are irrelevant.

inline std::strong_ordering lex_small_x_compare(const IntPoly& p, const IntPoly& q)
{
    const int top = std::max(p.degree(), q.degree());
    for (int i = 0; i <= top; ++i) {
        const int c = cmp(p[i], q[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

inline std::strong_ordering lex_large_x_compare(const IntPoly& p, const IntPoly& q)
{
    const int top = std::max(p.degree(), q.degree());
    for (int i = top; i >= 0; --i) {
        const int c = cmp(p[i], q[i]);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Sturm machinery.

/// Open interval (lo, hi); an empty `hi` means +infinity.
struct Interval {
    mpq_class lo = 0;
    std::optional<mpq_class> hi;

    static Interval positive_reals() { return {mpq_class(0), std::nullopt}; }
    static Interval unit() { return {mpq_class(0), mpq_class(1)}; }
    bool contains(const mpq_class& x) const { return x > lo && (!hi || x < *hi); }
};

class SturmSequence {
public:
    /// `p` should be squarefree; counts are then of distinct roots.
    explicit SturmSequence(const IntPoly& p)
    {
        if (p.is_zero()) throw InvalidArgument("Sturm sequence of the zero polynomial");
        seq_.push_back(p);
        IntPoly d = p.derivative();
        if (d.is_zero()) return;
        seq_.push_back(primitive_part(d));
        while (true) {
            const auto& a = seq_[seq_.size() - 2];
            const auto& b = seq_.back();
            RatPoly r = divmod(to_rational(a), to_rational(b)).second;
            if (r.is_zero()) break;
            seq_.push_back(primitive_part(-r));
        }
    }

    int variations_at(const mpq_class& x) const
    {
        int count = 0, last = 0;
        for (const auto& s : seq_) {
            const int sg = sign_at(s, x);
            if (sg == 0) continue;
            if (last != 0 && sg != last) ++count;
            last = sg;
        }
        return count;
    }

    int variations_at_infinity() const
    {
        int count = 0, last = 0;
        for (const auto& s : seq_) {
            const int sg = sgn(s.lead());
            if (last != 0 && sg != last) ++count;
            last = sg;
        }
        return count;
    }

    /// Distinct roots in (a, b] (b may be +infinity); exact when a is not a root.
    int count(const mpq_class& a, const std::optional<mpq_class>& b) const
    {
        return variations_at(a) - (b ? variations_at(*b) : variations_at_infinity());
    }

    const std::vector<IntPoly>& polys() const noexcept { return seq_; }

private:
    std::vector<IntPoly> seq_;
};

/// Upper bound on the absolute value of every root (Cauchy).
inline mpq_class root_bound(const IntPoly& p)
{
    mpq_class best = 0;
    for (int i = 0; i < p.degree(); ++i) {
        mpq_class r(abs(p[i]), abs(p.lead()));
        r.canonicalize();
        if (r > best) best = r;
    }
    return best + 1;
}

namespace detail {

/// Squarefree part with any roots at the interval's finite endpoints divided
/// out, so that Sturm counts over the open interval are exact.
inline IntPoly squarefree_inside(const IntPoly& p, const Interval& iv)
{
    IntPoly s = squarefree_part(p);
    if (s.degree() > 0 && sign_at(s, iv.lo) == 0) s = deflate(s, iv.lo);
    if (iv.hi && s.degree() > 0 && sign_at(s, *iv.hi) == 0) s = deflate(s, *iv.hi);
    return s;
}

/// A point strictly between a and b that is not a root of s.
inline mpq_class split_point(const IntPoly& s, const mpq_class& a, const mpq_class& b)
{
    mpq_class mid = (a + b) / 2;
    for (long k = 3; sign_at(s, mid) == 0; ++k) {
        mpq_class t(1, k);
        t.canonicalize();
        mid = a + (b - a) * t;
    }
    return mid;
}

} // namespace detail

/// Number of distinct real roots of p strictly inside the interval.
inline int sturm_root_count(const IntPoly& p, const Interval& iv)
{
    if (p.is_zero()) throw InvalidArgument("root count of the zero polynomial");
    const IntPoly s = detail::squarefree_inside(p, iv);
    if (s.degree() < 1) return 0;
    return SturmSequence(s).count(iv.lo, iv.hi);
}

/// Interval holding exactly one root of a squarefree polynomial.
struct IsolatingInterval {
    mpq_class lo, hi;
};

/// Disjoint isolating intervals, in increasing order, for the distinct roots
/// of p strictly inside iv. Interval endpoints are never roots of p unless
/// they coincide with an endpoint of iv.
inline std::vector<IsolatingInterval> isolate_roots(const IntPoly& p, const Interval& iv)
{
    if (p.is_zero()) throw InvalidArgument("root isolation of the zero polynomial");
    const IntPoly s = detail::squarefree_inside(p, iv);
    std::vector<IsolatingInterval> out;
    if (s.degree() < 1) return out;
    const SturmSequence sturm(s);
    mpq_class hi = iv.hi ? *iv.hi : root_bound(s);
    if (!iv.hi && hi <= iv.lo) return out;

    struct Pending {
        mpq_class a, b;
        int roots;
    };
    std::vector<Pending> stack;
    const int total = sturm.count(iv.lo, hi);
    if (total > 0) stack.push_back({iv.lo, hi, total});
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        if (cur.roots == 1) {
            out.push_back({cur.a, cur.b});
            continue;
        }
        const mpq_class mid = detail::split_point(s, cur.a, cur.b);
        const int left = sturm.count(cur.a, mid);
        // Push right first so the left half is processed first.
        if (cur.roots - left > 0) stack.push_back({mid, cur.b, cur.roots - left});
        if (left > 0) stack.push_back({cur.a, mid, left});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    return out;
}

/// If the single root of squarefree `s` inside (lo, hi) is rational, returns
/// it. A rational root has a denominator dividing the leading coefficient,
/// so refining the interval below width 1/|lead| leaves at most two
/// candidates to test.
inline std::optional<mpq_class> exact_rational_root(const IntPoly& s, IsolatingInterval box)
{
    const SturmSequence sturm(s);
    const mpz_class lc = abs(s.lead());
    const mpq_class width_goal(1, 1);
    while ((box.hi - box.lo) * lc >= width_goal) {
        const mpq_class mid = (box.lo + box.hi) / 2;
        if (sign_at(s, mid) == 0) return mid;
        if (sturm.count(box.lo, mid) == 1)
            box.hi = mid;
        else
            box.lo = mid;
    }
    mpz_class k = 0;
    const mpq_class scaled = box.lo * lc;
    mpz_fdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    for (int step = 0; step < 3; ++step, ++k) {
        mpq_class cand(k, lc);
        cand.canonicalize();
        if (cand > box.lo && cand < box.hi && sign_at(s, cand) == 0) return cand;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pointwise comparison.

enum class Relation { equal, first_dominates, second_dominates, crossing };

inline const char* to_string(Relation r)
{
    switch (r) {
    case Relation::equal: return "equal";
    case Relation::first_dominates: return "first-dominates";
    case Relation::second_dominates: return "second-dominates";
    case Relation::crossing: return "crossing";
    }
    return "?";
}

struct RootWitness {
    mpq_class lo, hi;                 ///< isolating interval, exactly one root inside
    std::optional<mpq_class> exact;   ///< the root itself when it is rational
};

struct SamplePoint {
    mpq_class x;
    int sign = 0;  ///< sign of P - Q at x
};

/// Outcome of comparing P and Q on an open interval.
///
/// `strict` is set when the dominating side is strictly larger at every point
/// of the interval. A difference that is >= 0 but vanishes at isolated
/// interior points is still domination; those points are listed in
/// `touches`. For a crossing, `crossings` isolates every sign change of P - Q
/// and `samples` holds one point per root-free region with the sign there.
struct ComparisonVerdict {
    Relation relation = Relation::equal;
    bool strict = false;
    std::vector<RootWitness> crossings;
    std::vector<RootWitness> touches;
    std::vector<SamplePoint> samples;

    bool first_at_least() const { return relation == Relation::equal || relation == Relation::first_dominates; }
    bool second_at_least() const { return relation == Relation::equal || relation == Relation::second_dominates; }

    /// The verdict for (Q, P).
    ComparisonVerdict mirrored() const
    {
        ComparisonVerdict m = *this;
        if (relation == Relation::first_dominates) m.relation = Relation::second_dominates;
        if (relation == Relation::second_dominates) m.relation = Relation::first_dominates;
        for (auto& s : m.samples) s.sign = -s.sign;
        return m;
    }
};

/// Exact comparison of P and Q on the open interval `domain` (lo >= 0).
inline ComparisonVerdict compare_on(const IntPoly& p, const IntPoly& q, const Interval& domain)
{
    if (domain.lo < 0) throw InvalidArgument("comparison domain must lie in [0, inf)");
    ComparisonVerdict v;
    const IntPoly r = p - q;
    if (r.is_zero()) {
        v.relation = Relation::equal;
        return v;
    }

    const mpq_class probe = domain.hi ? mpq_class((domain.lo + *domain.hi) / 2) : mpq_class(domain.lo + 1);
    const bool all_nonneg = std::all_of(r.coeffs().begin(), r.coeffs().end(), [](const auto& c) { return c >= 0; });
    const bool all_nonpos = std::all_of(r.coeffs().begin(), r.coeffs().end(), [](const auto& c) { return c <= 0; });
    if (all_nonneg || all_nonpos) {
        // A nonzero polynomial with one-signed coefficients has no root in (0, inf).
        v.relation = all_nonneg ? Relation::first_dominates : Relation::second_dominates;
        v.strict = true;
        v.samples.push_back({probe, all_nonneg ? 1 : -1});
        return v;
    }

    const IntPoly s = detail::squarefree_inside(r, domain);
    const auto boxes = isolate_roots(r, domain);

    auto region_sample_before = [&](const IsolatingInterval& first) {
        // Shrink toward domain.lo until no root lies in (lo, t].
        mpq_class t = first.hi;
        const SturmSequence sturm(s);
        while (true) {
            t = (domain.lo + t) / 2;
            if (sign_at(s, t) != 0 && sturm.count(domain.lo, t) == 0) return t;
        }
    };
    auto region_sample_after = [&](const IsolatingInterval& last) {
        if (!domain.hi) return last.hi;
        mpq_class t = last.lo;
        const SturmSequence sturm(s);
        while (true) {
            t = (t + *domain.hi) / 2;
            if (sign_at(s, t) != 0 && sturm.count(t, *domain.hi) == 0) return t;
        }
    };

    std::vector<mpq_class> points;
    if (boxes.empty()) {
        points.push_back(probe);
    } else {
        points.push_back(boxes.front().lo > domain.lo ? boxes.front().lo : region_sample_before(boxes.front()));
        for (std::size_t i = 0; i + 1 < boxes.size(); ++i) points.push_back(boxes[i].hi);
        const auto& last = boxes.back();
        points.push_back((!domain.hi || last.hi < *domain.hi) ? last.hi : region_sample_after(last));
    }
    for (const auto& x : points) v.samples.push_back({x, sign_at(r, x)});

    for (std::size_t i = 0; i < boxes.size(); ++i) {
        RootWitness w{boxes[i].lo, boxes[i].hi, exact_rational_root(s, boxes[i])};
        if (v.samples[i].sign != v.samples[i + 1].sign)
            v.crossings.push_back(std::move(w));
        else
            v.touches.push_back(std::move(w));
    }

    if (!v.crossings.empty()) {
        v.relation = Relation::crossing;
        v.strict = false;
    } else {
        v.relation = v.samples.front().sign > 0 ? Relation::first_dominates : Relation::second_dominates;
        v.strict = v.touches.empty();
    }
    return v;
}

inline ComparisonVerdict compare_on_nonneg(const IntPoly& p, const IntPoly& q)
{
    return compare_on(p, q, Interval::positive_reals());
}

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

} // namespace domopt
