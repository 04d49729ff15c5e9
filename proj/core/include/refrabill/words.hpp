#ifndef REFRABILL_WORDS_HPP
#define REFRABILL_WORDS_HPP

#include <string>
#include <vector>

#include "refrabill/boundary.hpp"

namespace refrabill {

/// One letter of the alphabet: a compact parameter interval around a strict
/// central configuration.
struct Interval {
    double alpha = 0.0;
    double beta = 0.0;
    double xi_bar = 0.0;
    CentralConfiguration::Kind kind = CentralConfiguration::Kind::Degenerate;

    double center() const { return 0.5 * (alpha + beta); }
    double width() const { return beta - alpha; }
    bool contains(double xi, double slack = 0.0) const {
        return xi >= alpha - slack && xi <= beta + slack;
    }
};

/// Alphabet plus the non-antipodality relation that defines the grammar.
/// na[i] lists every j (including i itself when the interval is not
/// self-antipodal) whose interval is non-antipodal to interval i.
struct IntervalSystem {
    std::vector<Interval> intervals;
    std::vector<std::vector<int>> na;
    double half_width = 0.0; ///< half-width after shrinking

    int size() const { return int(intervals.size()); }
    bool na_contains(int i, int j) const;
};

/// Builds the interval system around the strict central configurations,
/// halving the half-width (at most 10 times) until the intervals are pairwise
/// disjoint, star-convex on a dilation, self-non-antipodal, and every letter
/// has a distinct non-antipodal partner.
IntervalSystem build_interval_system(const BoundaryCurve& curve,
                                     const std::vector<CentralConfiguration>& ccs,
                                     double half_width);

struct Word {
    enum class Kind { Finite, Periodic };
    std::vector<int> symbols; ///< 0-based alphabet indices
    Kind kind = Kind::Periodic;

    int length() const { return int(symbols.size()); }
};

/// Grammar check: consecutive symbols non-antipodal, wrapped for periodic words.
bool is_admissible(const Word& word, const IntervalSystem& system);

/// All admissible periodic words with 1 <= length <= max_len. With
/// dedupe_rotations, one representative per rotation class is kept.
std::vector<Word> enumerate_periodic_words(const IntervalSystem& system, int max_len,
                                           bool dedupe_rotations = false);

/// Truncated bi-infinite word window; offset k = 0 sits at `center`.
/// Periodic windows are defined for every offset by periodic extension.
struct WordWindow {
    std::vector<int> symbols;
    int center = 0;
    bool periodic = false;

    bool defined(int k) const {
        return periodic || (center + k >= 0 && center + k < int(symbols.size()));
    }
    int at(int k) const {
        const int n = int(symbols.size());
        int idx = center + k;
        if (periodic) idx = ((idx % n) + n) % n;
        return symbols[idx];
    }
    int lo() const { return -center; }
    int hi() const { return int(symbols.size()) - 1 - center; }
};

/// Word metric sum_k rho(l_k, m_k) / 4^|k|, truncated to the offsets both
/// windows define; indices seen by neither side contribute to the upper
/// bound only. Fully periodic pairs evaluate to machine precision.
struct WordDistance {
    double lower = 0.0;
    double upper = 0.0;
};
WordDistance word_distance(const WordWindow& w1, const WordWindow& w2);

/// Reflection symmetry of a word. For periodic words every cyclic axis is
/// reported: a Gap axis between positions p and p+1, or an Element axis
/// fixing position p.
struct SymmetryAxis {
    enum class Type { Gap, Element };
    Type type = Type::Gap;
    int position = 0;
};
struct SymmetryInfo {
    bool symmetric = false;
    std::vector<SymmetryAxis> axes;
    std::string description;
};
SymmetryInfo is_symmetric(const Word& word);

} // namespace refrabill

#endif
