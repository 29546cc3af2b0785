#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "numrange/fields.hpp"

namespace numrange {

enum class Answer { Yes, No, Unknown };

std::string answer_str(Answer a);

/// Tri-state decision for Delta / Delta_n membership.  A Yes may carry a
/// verifying witness (absent when the decision procedure certified
/// solvability but the height-bounded search found none).  No is only ever
/// produced by a complete decision path (finite-field surjectivity, a local
/// obstruction, or a sign obstruction) and names the obstruction; Unknown
/// records the exhausted search bound.
struct DeltaVerdict {
    Answer answer = Answer::Unknown;
    std::optional<Ext> witness;                 // sigma(w) w = k
    std::optional<std::vector<Ext>> witnesses;  // Delta_n decomposition
    std::optional<long> bound;
    std::optional<std::string> obstruction;

    bool yes() const { return answer == Answer::Yes; }
    bool no() const { return answer == Answer::No; }
    bool unknown() const { return answer == Answer::Unknown; }
};

inline constexpr long kDefaultWitnessHeightBound = 200;
inline constexpr long kDefaultDecompositionHeightBound = 12;

/// Is k in Delta = { sigma(a) a : a in L }?  Complete for finite fields
/// (norm map is surjective) and for K = Q (Hilbert symbols over every
/// relevant place decide the conic x^2 - d y^2 = k).
DeltaVerdict in_delta(const ExtFieldPtr& F, const Ground& k,
                      long witness_bound = kDefaultWitnessHeightBound);

/// Is k a sum of n elements of Delta?  Finite fields: always Yes.  K = Q:
/// closed forms where available (k in Delta; sign obstruction for d < 0;
/// four-square decompositions for n >= 4 and for Q(i)); otherwise a bounded
/// decomposition search that returns Unknown on exhaustion.
DeltaVerdict in_delta_n(const ExtFieldPtr& F, const Ground& k, int n,
                        long witness_bound = kDefaultWitnessHeightBound,
                        long decomposition_bound = kDefaultDecompositionHeightBound);

/// Lemma: 1/c lies in Delta_n whenever c != 0 does.  Reconstructs the
/// decomposition of 1/k by the a_i -> a_i/k rescaling and verifies it
/// exactly.  Throws UnsupportedError when no decomposition is available.
bool inv_in_delta_n_check(const ExtFieldPtr& F, const Ground& k, int n,
                          long witness_bound = kDefaultWitnessHeightBound,
                          long decomposition_bound = kDefaultDecompositionHeightBound);

/// 0 in hat-Delta_2 iff -1 in hat-Delta (hat-Delta is a multiplicative
/// group).  Yes carries the isotropic pair (1, w) with norm(w) = -1.
DeltaVerdict zero_in_hat_delta2(const ExtFieldPtr& F,
                                long witness_bound = kDefaultWitnessHeightBound);

struct SegmentSample {
    Ground t;       // t in hat-Delta intersect (1 - hat-Delta)
    Ext x_witness;  // norm = t
    Ext y_witness;  // norm = 1 - t
};

/// Deterministic stream of elements of hat-Delta intersect (1-hat-Delta) with
/// verified witnesses.  Finite fields: exactly the full set K \ {0,1}.  Q:
/// the subfamily t = x^2/(x^2 - d y^2) over (x, y) in ascending height order,
/// deduplicated; it need not exhaust the set.
class DeltaSegmentStream {
public:
    explicit DeltaSegmentStream(ExtFieldPtr F);
    std::optional<SegmentSample> next();

private:
    ExtFieldPtr F_;
    // finite-field scan
    std::uint64_t enc_ = 0;
    // rational pair enumeration
    std::vector<mpq_class> pool_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
    std::size_t pair_idx_ = 0;
    long height_ = 0;
    std::set<mpq_class> seen_;
    void refill();
};

std::vector<SegmentSample> sample_delta_segment(const ExtFieldPtr& F, std::size_t count);

struct NormSquareComplement {
    Ground m;              // m = norm(z)
    Ext z;                 // z notin K union K*beta
    Ground one_minus_m_sqrt;  // positive square root of 1 - m
};

/// Searches for m = norm(z) with 1 - m a nonzero square in K and z having
/// both coordinates nonzero (K = Q only).  Throws UnsupportedError when the
/// height bound is exhausted (search failure, not a nonexistence proof).
NormSquareComplement find_norm_with_square_complement(
    const ExtFieldPtr& F, long height_bound = kDefaultWitnessHeightBound);

}  // namespace numrange
