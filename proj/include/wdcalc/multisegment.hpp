#ifndef WDCALC_MULTISEGMENT_HPP
#define WDCALC_MULTISEGMENT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "decompositions.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"
#include "roots.hpp"
#include "scalar.hpp"
#include "weil_deligne.hpp"

namespace wdcalc
{

/// Position `pos` on cuspidal line `line`: the |.|^pos twist of the line's base cuspidal.
struct CuspidalLabel {
    std::string line;
    std::int64_t pos = 0;

    friend auto operator<=>(const CuspidalLabel&, const CuspidalLabel&) = default;
};

/// Positions start, ..., start + len - 1 on a line. A positive period marks a
/// cyclic line Z/period (reduced eigenvalue lines); there the start is kept in
/// [0, period) and len <= period.
struct Segment {
    std::string line;
    std::int64_t start = 0;
    std::int64_t len = 1;
    std::int64_t period = 0;

    static Segment interval(std::string line, std::int64_t first, std::int64_t last)
    {
        return Segment{std::move(line), first, last - first + 1, 0};
    }

    std::int64_t end() const { return start + len - 1; }
    bool cyclic() const { return period > 0; }

    std::string to_string() const
    {
        std::string s = line + "[" + std::to_string(start) + ".." + std::to_string(end()) + "]";
        return period > 0 ? s + "/" + std::to_string(period) : s;
    }

    friend bool operator==(const Segment&, const Segment&) = default;
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Segment& s) { return os << s.to_string(); }

namespace detail
{

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// line asc, start desc, len desc
inline bool canonical_less(const Segment& a, const Segment& b)
{
    if (a.line != b.line) {
        return a.line < b.line;
    }
    if (a.start != b.start) {
        return a.start > b.start;
    }
    if (a.len != b.len) {
        return a.len > b.len;
    }
    return a.period < b.period;
}

} // namespace detail

/// A multiset of segments, stored in canonical order.
class Multisegment
{
public:
    Multisegment() = default;

    explicit Multisegment(std::vector<Segment> segments) : segs_(std::move(segments)) { normalize(); }

    Multisegment(std::initializer_list<Segment> segments) : segs_(segments) { normalize(); }

    const std::vector<Segment>& segments() const { return segs_; }
    std::size_t size() const { return segs_.size(); }
    bool empty() const { return segs_.empty(); }

    std::int64_t total_length() const
    {
        std::int64_t total = 0;
        for (const auto& s : segs_) {
            total += s.len;
        }
        return total;
    }

    std::size_t count(const Segment& s) const
    {
        return static_cast<std::size_t>(std::count(segs_.begin(), segs_.end(), s));
    }

    /// Distinct line identifiers with their periods.
    std::map<std::string, std::int64_t> lines() const
    {
        std::map<std::string, std::int64_t> out;
        for (const auto& s : segs_) {
            out.emplace(s.line, s.period);
        }
        return out;
    }

    std::string to_string() const
    {
        std::string out = "{";
        for (std::size_t i = 0; i < segs_.size(); ++i) {
            out += (i == 0 ? "" : ", ") + segs_[i].to_string();
        }
        return out + "}";
    }

    friend bool operator==(const Multisegment&, const Multisegment&) = default;
    friend auto operator<=>(const Multisegment& a, const Multisegment& b) { return a.segs_ <=> b.segs_; }

private:
    void normalize()
    {
        std::map<std::string, std::int64_t> periods;
        for (auto& s : segs_) {
            if (s.len < 1) {
                throw invalid_input("segment " + s.to_string() + " has length < 1");
            }
            if (s.period < 0) {
                throw invalid_input("segment " + s.to_string() + " has a negative period");
            }
            if (s.period > 0) {
                if (s.len > s.period) {
                    throw invalid_input("segment " + s.to_string() + " is longer than its cyclic line");
                }
                s.start = detail::floor_mod(s.start, s.period);
            }
            auto [it, inserted] = periods.emplace(s.line, s.period);
            if (!inserted && it->second != s.period) {
                throw invalid_input("line " + s.line + " used with inconsistent periods");
            }
        }
        std::sort(segs_.begin(), segs_.end(), detail::canonical_less);
    }

    std::vector<Segment> segs_;
};

inline std::ostream& operator<<(std::ostream& os, const Multisegment& m) { return os << m.to_string(); }

/// A multisegment with a formal twist (|.| o det)^{half_twist / 2}.
struct TwistedMultisegment {
    Multisegment ms;
    std::int64_t half_twist = 0;

    friend bool operator==(const TwistedMultisegment&, const TwistedMultisegment&) = default;
};

// ---------------------------------------------------------------------------
// Linkage and ordering

/// Same integer line, neither contains the other, and the union is an interval.
/// Linkage is not defined on cyclic lines.
inline bool linked(const Segment& a, const Segment& b)
{
    if (a.line != b.line || a.period != b.period) {
        return false;
    }
    if (a.cyclic()) {
        throw invalid_input("linkage is undefined on cyclic line " + a.line);
    }
    const bool a_in_b = b.start <= a.start && a.end() <= b.end();
    const bool b_in_a = a.start <= b.start && b.end() <= a.end();
    if (a_in_b || b_in_a) {
        return false;
    }
    return a.start <= b.end() + 1 && b.start <= a.end() + 1;
}

/// a precedes b: linked, and b starts strictly later.
inline bool precedes(const Segment& a, const Segment& b) { return linked(a, b) && a.start < b.start; }

/// An ordering in which no segment precedes a later one: start descending,
/// then length descending, then line id.
inline std::vector<Segment> order_multisegment(const Multisegment& s)
{
    std::vector<Segment> out = s.segments();
    std::stable_sort(out.begin(), out.end(), [](const Segment& a, const Segment& b) {
        if (a.start != b.start) {
            return a.start > b.start;
        }
        if (a.len != b.len) {
            return a.len > b.len;
        }
        return a.line < b.line;
    });
    return out;
}

/// Replaces a linked pair by its union and (nonempty) intersection.
inline Multisegment elementary_operation(const Multisegment& s, const Segment& a, const Segment& b)
{
    if (!linked(a, b)) {
        throw invalid_input("segments " + a.to_string() + " and " + b.to_string() + " are not linked");
    }
    std::vector<Segment> rest = s.segments();
    for (const Segment* target : {&a, &b}) {
        auto it = std::find(rest.begin(), rest.end(), *target);
        if (it == rest.end()) {
            throw invalid_input("segment " + target->to_string() + " is not in " + s.to_string());
        }
        rest.erase(it);
    }
    const std::int64_t lo = std::min(a.start, b.start);
    const std::int64_t hi = std::max(a.end(), b.end());
    rest.push_back(Segment::interval(a.line, lo, hi));
    const std::int64_t ilo = std::max(a.start, b.start);
    const std::int64_t ihi = std::min(a.end(), b.end());
    if (ilo <= ihi) {
        rest.push_back(Segment::interval(a.line, ilo, ihi));
    }
    return Multisegment(std::move(rest));
}

/// Every multisegment reachable by one elementary operation, deduplicated.
inline std::vector<Multisegment> elementary_successors(const Multisegment& s)
{
    std::set<Multisegment> out;
    const auto& segs = s.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (i > 0 && segs[i] == segs[i - 1]) {
            continue;
        }
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[j] == segs[j - 1] && j - 1 != i) {
                continue;
            }
            if (linked(segs[i], segs[j])) {
                out.insert(elementary_operation(s, segs[i], segs[j]));
            }
        }
    }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Window counts and the order

namespace detail
{

inline bool covers_window(const Segment& s, std::int64_t a, std::int64_t i)
{
    if (s.cyclic()) {
        const std::int64_t offset = floor_mod(a - s.start, s.period);
        return offset + i <= s.len - 1;
    }
    return s.start <= a && s.end() >= a + i;
}

} // namespace detail

/// Number of segments on `line` covering positions a, ..., a + i. For i = 0
/// this is the graded dimension at a; in general it is the rank of the i-fold
/// composite of the graded nilpotent from grade a to grade a + i.
inline std::size_t window_count(const Multisegment& s, const std::string& line, std::int64_t a, std::int64_t i)
{
    if (i < 0) {
        throw invalid_input("window length must be non-negative");
    }
    std::size_t n = 0;
    for (const auto& seg : s.segments()) {
        if (seg.line == line && detail::covers_window(seg, a, i)) {
            ++n;
        }
    }
    return n;
}

/// Sp <= S in the Zelevinski order, decided by rank windows: equal graded
/// dimensions, and every window of S is covered by at most as many segments
/// as the same window of Sp.
inline bool leq(const Multisegment& sp, const Multisegment& s)
{
    auto lines = s.lines();
    for (const auto& [line, period] : sp.lines()) {
        auto [it, inserted] = lines.emplace(line, period);
        if (!inserted && it->second != period) {
            throw invalid_input("line " + line + " has different periods in the two multisegments");
        }
    }
    for (const auto& [line, period] : lines) {
        std::vector<Segment> mine;
        std::vector<Segment> theirs;
        for (const auto& seg : sp.segments()) {
            if (seg.line == line) {
                mine.push_back(seg);
            }
        }
        for (const auto& seg : s.segments()) {
            if (seg.line == line) {
                theirs.push_back(seg);
            }
        }
        auto count = [](const std::vector<Segment>& segs, std::int64_t a, std::int64_t i) {
            std::size_t n = 0;
            for (const auto& seg : segs) {
                n += detail::covers_window(seg, a, i) ? 1 : 0;
            }
            return n;
        };
        std::int64_t lo = 0;
        std::int64_t hi = period - 1;
        if (period == 0) {
            lo = std::numeric_limits<std::int64_t>::max();
            hi = std::numeric_limits<std::int64_t>::min();
            for (const auto* group : {&mine, &theirs}) {
                for (const auto& seg : *group) {
                    lo = std::min(lo, seg.start);
                    hi = std::max(hi, seg.end());
                }
            }
        }
        for (std::int64_t a = lo; a <= hi; ++a) {
            if (count(mine, a, 0) != count(theirs, a, 0)) {
                return false;
            }
        }
        const std::int64_t max_len = period == 0 ? hi - lo : period - 1;
        for (std::int64_t a = lo; a <= hi; ++a) {
            for (std::int64_t i = 1; i <= max_len; ++i) {
                if (count(theirs, a, i) > count(mine, a, i)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Default bound on total segment length for the breadth-first searches.
inline constexpr std::int64_t default_search_bound = 10;

/// All S' reachable from S by elementary operations, including S itself.
inline std::set<Multisegment> down_set(const Multisegment& s, std::int64_t bound = default_search_bound)
{
    if (s.total_length() > bound) {
        throw invalid_input("total length " + std::to_string(s.total_length()) + " exceeds search bound "
                            + std::to_string(bound));
    }
    std::set<Multisegment> seen{s};
    std::deque<Multisegment> queue{s};
    while (!queue.empty()) {
        const Multisegment cur = std::move(queue.front());
        queue.pop_front();
        for (auto& next : elementary_successors(cur)) {
            if (seen.insert(next).second) {
                queue.push_back(std::move(next));
            }
        }
    }
    return seen;
}

/// Sp <= S decided by breadth-first search over elementary operations.
inline bool leq_bruteforce(const Multisegment& sp, const Multisegment& s, std::int64_t bound = default_search_bound)
{
    if (s.total_length() > bound) {
        throw invalid_input("total length " + std::to_string(s.total_length()) + " exceeds search bound "
                            + std::to_string(bound));
    }
    if (sp == s) {
        return true;
    }
    std::set<Multisegment> seen{s};
    std::deque<Multisegment> queue{s};
    while (!queue.empty()) {
        const Multisegment cur = std::move(queue.front());
        queue.pop_front();
        for (auto& next : elementary_successors(cur)) {
            if (next == sp) {
                return true;
            }
            if (seen.insert(next).second) {
                queue.push_back(std::move(next));
            }
        }
    }
    return false;
}

/// True iff nothing lies strictly between S and the result of the operation on (a, b).
inline bool is_primitive(const Multisegment& s, const Segment& a, const Segment& b,
                         std::int64_t bound = default_search_bound)
{
    const Multisegment result = elementary_operation(s, a, b);
    for (const auto& middle : down_set(s, bound)) {
        if (middle != s && middle != result && leq(result, middle)) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Supports

/// Multiset union of all covered positions, sorted.
inline std::vector<CuspidalLabel> supercuspidal_support(const Multisegment& s)
{
    std::vector<CuspidalLabel> out;
    for (const auto& seg : s.segments()) {
        for (std::int64_t k = 0; k < seg.len; ++k) {
            const std::int64_t pos = seg.cyclic() ? detail::floor_mod(seg.start + k, seg.period) : seg.start + k;
            out.push_back({seg.line, pos});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The unique pairwise-unlinked multisegment with the given support: layer k
/// of each line's multiplicity profile contributes its maximal runs.
inline Multisegment generic_multisegment(const std::vector<CuspidalLabel>& support)
{
    std::map<std::string, std::map<std::int64_t, std::size_t>> profile;
    for (const auto& label : support) {
        ++profile[label.line][label.pos];
    }
    std::vector<Segment> segs;
    for (const auto& [line, mult] : profile) {
        std::size_t top = 0;
        for (const auto& [pos, m] : mult) {
            top = std::max(top, m);
        }
        for (std::size_t layer = 1; layer <= top; ++layer) {
            std::optional<std::int64_t> run_start;
            std::int64_t prev = 0;
            for (const auto& [pos, m] : mult) {
                const bool in_layer = m >= layer;
                if (run_start && (!in_layer || pos != prev + 1)) {
                    segs.push_back(Segment::interval(line, *run_start, prev));
                    run_start.reset();
                }
                if (in_layer && !run_start) {
                    run_start = pos;
                }
                prev = pos;
            }
            if (run_start) {
                segs.push_back(Segment::interval(line, *run_start, prev));
            }
        }
    }
    return Multisegment(std::move(segs));
}

// ---------------------------------------------------------------------------
// Graded nilpotent pairs

/// (V_S, N_S): per line, graded dimensions and the degree-one maps between
/// consecutive grades, as explicit rational matrices.
struct GradedNilpotentPair {
    struct Line {
        std::int64_t period = 0;
        std::map<std::int64_t, std::size_t> dims;
        std::map<std::int64_t, Matrix> maps; // grade a -> matrix dims(a+1) x dims(a)
    };

    std::map<std::string, Line> lines;

    std::size_t dim(const std::string& line, std::int64_t a) const
    {
        const auto it = lines.find(line);
        if (it == lines.end()) {
            return 0;
        }
        const auto d = it->second.dims.find(normalize(it->second, a));
        return d == it->second.dims.end() ? 0 : d->second;
    }

    /// maps(a+i-1) ... maps(a).
    Matrix composite(const std::string& line, std::int64_t a, std::int64_t i) const
    {
        const Field q = Field::rational();
        Matrix acc = Matrix::identity(q, dim(line, a));
        const auto it = lines.find(line);
        if (it == lines.end()) {
            return Matrix(q, 0, 0);
        }
        for (std::int64_t k = 0; k < i; ++k) {
            const auto m = it->second.maps.find(normalize(it->second, a + k));
            if (m == it->second.maps.end()) {
                return Matrix(q, dim(line, a + i), dim(line, a));
            }
            acc = m->second * acc;
        }
        return acc;
    }

private:
    static std::int64_t normalize(const Line& l, std::int64_t a)
    {
        return l.period > 0 ? detail::floor_mod(a, l.period) : a;
    }
};

inline GradedNilpotentPair graded_pair(const Multisegment& s)
{
    GradedNilpotentPair out;
    const Field q = Field::rational();
    for (const auto& [line, period] : s.lines()) {
        auto& part = out.lines[line];
        part.period = period;
        std::vector<Segment> segs;
        for (const auto& seg : s.segments()) {
            if (seg.line == line) {
                segs.push_back(seg);
            }
        }
        auto norm = [period = period](std::int64_t a) { return period > 0 ? detail::floor_mod(a, period) : a; };
        // basis of grade a: indices of the segments covering a, in canonical order
        std::map<std::int64_t, std::vector<std::size_t>> basis;
        for (std::size_t k = 0; k < segs.size(); ++k) {
            for (std::int64_t off = 0; off < segs[k].len; ++off) {
                basis[norm(segs[k].start + off)].push_back(k);
            }
        }
        for (const auto& [a, members] : basis) {
            part.dims[a] = members.size();
        }
        for (const auto& [a, members] : basis) {
            const std::int64_t next = norm(a + 1);
            const auto target_it = basis.find(next);
            const std::size_t rows = target_it == basis.end() ? 0 : target_it->second.size();
            Matrix m(q, rows, members.size());
            for (std::size_t col = 0; col < members.size(); ++col) {
                const Segment& seg = segs[members[col]];
                const std::int64_t offset = seg.cyclic() ? detail::floor_mod(a - seg.start, seg.period) : a - seg.start;
                if (offset + 1 >= seg.len) {
                    continue; // segment ends at grade a
                }
                const auto& targets = target_it->second;
                const auto row = std::find(targets.begin(), targets.end(), members[col]) - targets.begin();
                m(static_cast<std::size_t>(row), col) = Scalar::one(q);
            }
            part.maps.emplace(a, std::move(m));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Eigenvalue lines and the bridge to Weil-Deligne representations

/// Where a Frobenius eigenvalue sits: eigenvalue = anchor * q^{-pos}.
struct EigenvalueLine {
    std::string line;
    std::int64_t pos = 0;
    std::int64_t period = 0;
    Scalar anchor;
};

/// Longest cycle for which reduced lines are anchored by enumeration.
inline constexpr std::uint64_t max_cycle_length = 1ULL << 22U;

/// Over Q (q = r^m): pos = -floor(v_r(lambda) / m) and the anchor has
/// r-adic valuation in [0, m); lines are named "Q:<anchor>".
/// Over F_p: lines are cosets of <q> of length o = ord(q), anchored at their
/// least residue, named "F<p>:<anchor>", with positions mod o.
inline EigenvalueLine locate_eigenvalue(const Scalar& lambda, std::int64_t q)
{
    if (lambda.is_zero()) {
        throw invalid_input("zero is not a Frobenius eigenvalue");
    }
    if (lambda.is_rational()) {
        const auto pp = nt::prime_power(static_cast<std::uint64_t>(q));
        if (!pp) {
            throw invalid_input("q = " + std::to_string(q) + " is not a prime power");
        }
        const auto [r, m] = *pp;
        const mpz_class r_z(static_cast<unsigned long>(r));
        auto valuation = [&](mpz_class x) {
            std::int64_t v = 0;
            while (mpz_divisible_p(x.get_mpz_t(), r_z.get_mpz_t()) != 0) {
                x /= r_z;
                ++v;
            }
            return v;
        };
        const auto& value = lambda.as_rational();
        const std::int64_t v = valuation(value.get_num()) - valuation(value.get_den());
        const auto m64 = static_cast<std::int64_t>(m);
        const std::int64_t floor_div = (v >= 0) ? v / m64 : -((-v + m64 - 1) / m64);
        const std::int64_t pos = -floor_div;
        const Scalar q_s = Scalar::from_int(Field::rational(), q);
        const Scalar anchor = lambda * (pos >= 0 ? pow(q_s, static_cast<std::uint64_t>(pos))
                                                 : pow(q_s, static_cast<std::uint64_t>(-pos)).inverse());
        return {"Q:" + anchor.to_string(), pos, 0, anchor};
    }
    const Field f = lambda.field();
    const auto p = f.characteristic();
    const std::uint64_t q_bar = static_cast<std::uint64_t>(q) % p;
    if (q_bar == 0) {
        throw invalid_input("q is not a unit modulo " + std::to_string(p));
    }
    const std::uint64_t order = nt::multiplicative_order(q_bar, p);
    if (order > max_cycle_length) {
        throw invalid_input("cycle length " + std::to_string(order) + " of q modulo " + std::to_string(p)
                            + " is too long to anchor");
    }
    std::uint64_t cur = lambda.as_residue();
    std::uint64_t best = cur;
    std::uint64_t best_j = 0;
    for (std::uint64_t j = 1; j < order; ++j) {
        cur = nt::mulmod(cur, q_bar, p);
        if (cur < best) {
            best = cur;
            best_j = j;
        }
    }
    return {"F" + std::to_string(p) + ":" + std::to_string(best), static_cast<std::int64_t>(best_j),
            static_cast<std::int64_t>(order), Scalar::residue(best, f)};
}

/// The anchor of a "Q:<rational>" line, if the id has that form.
inline std::optional<Scalar> rational_line_anchor(const std::string& line)
{
    if (line.rfind("Q:", 0) != 0) {
        return std::nullopt;
    }
    try {
        return Scalar::parse(Field::rational(), line.substr(2));
    } catch (const invalid_input&) {
        return std::nullopt;
    }
}

/// Multisegment of a split Weil-Deligne representation, after
/// Frobenius-semisimplification, with half_twist = -(n - 1).
inline TwistedMultisegment wd_to_multisegment(const WeilDeligneRep& w)
{
    const WeilDeligneRep fss = frobenius_semisimplify(w);
    const Matrix& s = fss.frobenius();
    const Matrix& n = fss.monodromy();
    const Field f = fss.field();
    const std::size_t dim = fss.dim();
    const auto roots = split_roots(charpoly(s));
    if (!roots) {
        throw non_split_spectrum("characteristic polynomial of Frobenius does not split over " + f.to_string());
    }

    struct LineData {
        std::int64_t period = 0;
        std::map<std::int64_t, Matrix> eigenbasis;
    };
    std::map<std::string, LineData> lines;
    for (const auto& root : *roots) {
        const auto where = locate_eigenvalue(root.value, fss.q());
        Matrix basis = kernel_basis(s - root.value * Matrix::identity(f, dim));
        if (basis.cols() != root.multiplicity) {
            throw internal_error("semisimple part has a defective eigenspace");
        }
        auto& data = lines[where.line];
        data.period = where.period;
        data.eigenbasis.emplace(where.pos, std::move(basis));
    }

    std::vector<Matrix> n_powers{Matrix::identity(f, dim)};
    auto n_power = [&](std::int64_t i) -> const Matrix& {
        while (static_cast<std::int64_t>(n_powers.size()) <= i) {
            n_powers.push_back(n_powers.back() * n);
        }
        return n_powers[static_cast<std::size_t>(i)];
    };

    std::vector<Segment> segs;
    for (const auto& [line, data] : lines) {
        const std::int64_t period = data.period;
        auto norm = [period = period](std::int64_t a) { return period > 0 ? detail::floor_mod(a, period) : a; };
        // r(a, i) = rank of N^i from grade a into grade a + i
        std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> cache;
        auto r = [&](std::int64_t a, std::int64_t i) -> std::int64_t {
            const auto it = data.eigenbasis.find(norm(a));
            if (it == data.eigenbasis.end()) {
                return 0;
            }
            const auto key = std::make_pair(norm(a), i);
            if (const auto c = cache.find(key); c != cache.end()) {
                return c->second;
            }
            const auto value = static_cast<std::int64_t>(rank(n_power(i) * it->second));
            cache.emplace(key, value);
            return value;
        };
        std::int64_t lo = 0;
        std::int64_t hi = period - 1;
        if (period == 0) {
            lo = data.eigenbasis.begin()->first;
            hi = data.eigenbasis.rbegin()->first;
        } else {
            for (std::int64_t a = 0; a < period; ++a) {
                if (r(a, period) != 0) {
                    throw invalid_input("monodromy chain on line " + line + " is longer than its cycle of length "
                                        + std::to_string(period));
                }
            }
        }
        const std::int64_t max_len = period == 0 ? hi - lo + 1 : period;
        for (std::int64_t a = lo; a <= hi; ++a) {
            for (std::int64_t len = 1; len <= max_len && (period > 0 || a + len - 1 <= hi); ++len) {
                const std::int64_t i = len - 1;
                const std::int64_t count = r(a, i) - r(a - 1, i + 1) - r(a, i + 1) + r(a - 1, i + 2);
                if (count < 0) {
                    throw internal_error("negative segment multiplicity while decomposing monodromy");
                }
                for (std::int64_t c = 0; c < count; ++c) {
                    segs.push_back(Segment{line, a, len, period});
                }
            }
        }
    }
    Multisegment ms(std::move(segs));
    if (ms.total_length() != static_cast<std::int64_t>(dim)) {
        throw internal_error("recovered segments do not exhaust the representation");
    }
    return {std::move(ms), -static_cast<std::int64_t>(dim - 1)};
}

/// Direct sum of Sp(anchor * q^{-start}, len) over the segments; every
/// segment must sit on a canonical "Q:<anchor>" line.
inline WeilDeligneRep split_rep_from_multisegment(const Multisegment& s, std::int64_t q)
{
    if (s.empty()) {
        throw invalid_input("cannot realize the empty multisegment");
    }
    std::optional<WeilDeligneRep> acc;
    const Scalar q_inv = Scalar::from_int(Field::rational(), q).inverse();
    for (const auto& seg : s.segments()) {
        const auto anchor = rational_line_anchor(seg.line);
        if (!anchor || seg.cyclic()) {
            throw invalid_input("line " + seg.line + " is not a rational eigenvalue line");
        }
        const auto where = locate_eigenvalue(*anchor, q);
        if (where.pos != 0 || where.line != seg.line) {
            throw invalid_input("line " + seg.line + " is not anchored canonically for q = " + std::to_string(q));
        }
        const Scalar lambda = *anchor
                              * (seg.start >= 0 ? pow(q_inv, static_cast<std::uint64_t>(seg.start))
                                                : pow(q_inv.inverse(), static_cast<std::uint64_t>(-seg.start)));
        auto sp = special_rep(lambda, static_cast<std::size_t>(seg.len), q);
        acc = acc ? direct_sum(*acc, sp) : sp;
    }
    return *acc;
}

/// Shifts every segment by k; the half twist is unchanged.
inline TwistedMultisegment twist(const TwistedMultisegment& tm, std::int64_t k)
{
    std::vector<Segment> segs = tm.ms.segments();
    for (auto& s : segs) {
        s.start += k;
    }
    return {Multisegment(std::move(segs)), tm.half_twist};
}

} // namespace wdcalc

#endif // WDCALC_MULTISEGMENT_HPP
