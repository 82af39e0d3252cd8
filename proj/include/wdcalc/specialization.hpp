#ifndef WDCALC_SPECIALIZATION_HPP
#define WDCALC_SPECIALIZATION_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "decompositions.hpp"
#include "error.hpp"
#include "multisegment.hpp"
#include "scalar.hpp"
#include "weil_deligne.hpp"

namespace wdcalc
{

struct SpecializationReport {
    TwistedMultisegment s;       // generic fiber
    TwistedMultisegment s_bar;   // segmentwise reduction of s
    TwistedMultisegment s_prime; // special fiber
    bool dominance_ok = false;
    bool is_isomorphism = false;
    RankProfile generic_profile;
    RankProfile reduced_profile;
};

/// Carries every segment on a rational line "Q:c" to the reduced line of c
/// mod p. Lines whose anchors become q-power translates mod p merge, and
/// positions are re-anchored on the merged cycle.
inline TwistedMultisegment reduce_segments(const TwistedMultisegment& tm, std::uint64_t p, std::int64_t q)
{
    Field::prime(p); // rejects non-prime p
    if (static_cast<std::uint64_t>(q) % p == 0) {
        throw invalid_input("q = " + std::to_string(q) + " is not prime to p = " + std::to_string(p));
    }
    std::vector<Segment> out;
    for (const auto& seg : tm.ms.segments()) {
        const auto anchor = rational_line_anchor(seg.line);
        if (!anchor || seg.cyclic()) {
            throw invalid_input("line " + seg.line + " is not a rational eigenvalue line");
        }
        const Scalar reduced = [&] {
            try {
                return reduce_mod_p(*anchor, p);
            } catch (const not_p_integral&) {
                throw not_p_integral("line anchor " + anchor->to_string() + " is not " + std::to_string(p)
                                     + "-integral");
            }
        }();
        if (reduced.is_zero()) {
            throw invalid_input("line anchor " + anchor->to_string() + " is not a " + std::to_string(p)
                                + "-adic unit");
        }
        const auto where = locate_eigenvalue(reduced, q);
        if (seg.len > where.period) {
            throw invalid_input("segment " + seg.to_string() + " reduces to a segment longer than its cycle of length "
                                + std::to_string(where.period));
        }
        out.push_back(Segment{where.line, seg.start + where.pos, seg.len, where.period});
    }
    return {Multisegment(std::move(out)), tm.half_twist};
}

/// Generic fiber, naive reduction and special fiber of a p-integral
/// representation over Q, with the dominance check S_bar <= S_prime enforced.
inline SpecializationReport specialize(const WeilDeligneRep& w, std::uint64_t p)
{
    if (!w.field().is_rational()) {
        throw invalid_input("specialization expects a representation over Q");
    }
    const WeilDeligneRep reduced = reduce_wd(w, p);
    SpecializationReport r;
    r.s = wd_to_multisegment(w);
    r.s_prime = wd_to_multisegment(reduced);
    r.s_bar = reduce_segments(r.s, p, w.q());
    r.dominance_ok = leq(r.s_bar.ms, r.s_prime.ms);
    if (!r.dominance_ok) {
        throw internal_error("dominance check failed: " + r.s_bar.ms.to_string() + " is not below "
                             + r.s_prime.ms.to_string());
    }
    r.generic_profile = rank_profile(w);
    r.reduced_profile = rank_profile(reduced);
    r.is_isomorphism = r.generic_profile == r.reduced_profile;
    if ((r.s_bar.ms == r.s_prime.ms) != r.is_isomorphism) {
        throw internal_error("rank profiles and reduced multisegments disagree on isomorphism");
    }
    return r;
}

/// The multisegment of the normalized parabolic induction attached to w. Its
/// canonical storage order already has no segment preceding a later one; use
/// order_multisegment for the start-descending ordering.
inline TwistedMultisegment breuil_schneider(const WeilDeligneRep& w) { return wd_to_multisegment(w); }

} // namespace wdcalc

#endif // WDCALC_SPECIALIZATION_HPP
