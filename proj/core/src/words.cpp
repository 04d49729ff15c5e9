#include "refrabill/words.hpp"

#include <algorithm>
#include <cmath>

#include "refrabill/errors.hpp"

namespace refrabill {

namespace {

// Overlap of circular arcs [a1,b1], [a2,b2] on a circle of circumference L.
bool circular_overlap_L(double a1, double b1, double a2, double b2, double L) {
    const double shift = L * std::floor((a1 - a2) / L);
    a2 += shift;
    b2 += shift;
    for (int k = -1; k <= 1; ++k) {
        const double lo = a2 + k * L, hi = b2 + k * L;
        if (lo <= b1 && hi >= a1) return true;
    }
    return false;
}

} // namespace

bool IntervalSystem::na_contains(int i, int j) const {
    return std::find(na[i].begin(), na[i].end(), j) != na[i].end();
}

IntervalSystem build_interval_system(const BoundaryCurve& curve,
                                     const std::vector<CentralConfiguration>& ccs,
                                     double half_width) {
    std::vector<CentralConfiguration> strict;
    for (const auto& cc : ccs)
        if (cc.kind != CentralConfiguration::Kind::Degenerate && cc.lsc_ok)
            strict.push_back(cc);

    const int m = int(strict.size());
    if (m < 2)
        throw InadmissibleDomain("need at least 2 strict central configurations, found " +
                                 std::to_string(m));
    if (m == 2 && are_antipodal(curve, strict[0].xi_bar, strict[1].xi_bar))
        throw InadmissibleDomain("exactly two central configurations and they are antipodal");

    const double L = curve.total_length();
    double w = half_width;
    std::string last_reason;
    for (int attempt = 0; attempt < 10; ++attempt, w *= 0.5) {
        IntervalSystem sys;
        sys.half_width = w;
        for (const auto& cc : strict)
            sys.intervals.push_back({cc.xi_bar - w, cc.xi_bar + w, cc.xi_bar, cc.kind});

        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            for (int j = i + 1; j < m && ok; ++j)
                if (circular_overlap_L(sys.intervals[i].alpha, sys.intervals[i].beta,
                                       sys.intervals[j].alpha, sys.intervals[j].beta, L)) {
                    ok = false;
                    last_reason = "intervals overlap";
                }
        if (!ok) continue;

        // local star-convexity on a slightly dilated interval
        for (int i = 0; i < m && ok; ++i) {
            for (int k = 0; k <= 8; ++k) {
                const double xi = strict[i].xi_bar + 1.25 * w * (k / 4.0 - 1.0);
                if (!is_lsc(curve, xi)) {
                    ok = false;
                    last_reason = "interval dilation not star-convex";
                    break;
                }
            }
        }
        if (!ok) continue;

        for (int i = 0; i < m; ++i) {
            sys.na.emplace_back();
            for (int j = 0; j < m; ++j)
                if (intervals_not_antipodal(curve, sys.intervals[i].alpha,
                                            sys.intervals[i].beta, sys.intervals[j].alpha,
                                            sys.intervals[j].beta))
                    sys.na.back().push_back(j);
        }
        for (int i = 0; i < m && ok; ++i) {
            if (!sys.na_contains(i, i)) {
                ok = false;
                last_reason = "interval " + std::to_string(i + 1) + " is self-antipodal";
            }
            bool partner = false;
            for (int j : sys.na[i])
                if (j != i) partner = true;
            if (!partner) {
                ok = false;
                last_reason = "interval " + std::to_string(i + 1) +
                              " has no distinct non-antipodal partner";
            }
            if (int(sys.na[i].size()) < 2) {
                ok = false;
                last_reason = "interval " + std::to_string(i + 1) +
                              " has fewer than 2 non-antipodal neighbours";
            }
        }
        if (ok) return sys;
    }
    throw InadmissibleDomain("no admissible interval system after 10 halvings (" +
                             last_reason + ")");
}

bool is_admissible(const Word& word, const IntervalSystem& system) {
    const int n = word.length();
    if (n == 0) return false;
    for (int s : word.symbols)
        if (s < 0 || s >= system.size()) return false;
    const int limit = (word.kind == Word::Kind::Periodic) ? n : n - 1;
    for (int i = 0; i < limit; ++i)
        if (!system.na_contains(word.symbols[i], word.symbols[(i + 1) % n])) return false;
    return true;
}

namespace {

Word rotate_word(const Word& w, int r) {
    Word out = w;
    const int n = w.length();
    for (int i = 0; i < n; ++i) out.symbols[i] = w.symbols[(i + r) % n];
    return out;
}

Word canonical_rotation(const Word& w) {
    Word best = w;
    for (int r = 1; r < w.length(); ++r) {
        Word cand = rotate_word(w, r);
        if (cand.symbols < best.symbols) best = cand;
    }
    return best;
}

} // namespace

std::vector<Word> enumerate_periodic_words(const IntervalSystem& system, int max_len,
                                           bool dedupe_rotations) {
    std::vector<Word> out;
    std::vector<std::vector<int>> seen; // canonical symbol sequences
    std::vector<int> stack;
    auto dfs = [&](auto&& self, int len) -> void {
        if (int(stack.size()) == len) {
            Word w{stack, Word::Kind::Periodic};
            if (!system.na_contains(stack[len - 1], stack[0])) return;
            if (dedupe_rotations) {
                const Word canon = canonical_rotation(w);
                if (std::find(seen.begin(), seen.end(), canon.symbols) != seen.end()) return;
                seen.push_back(canon.symbols);
                out.push_back(canon);
            } else {
                out.push_back(w);
            }
            return;
        }
        for (int s = 0; s < system.size(); ++s) {
            if (!stack.empty() && !system.na_contains(stack.back(), s)) continue;
            stack.push_back(s);
            self(self, len);
            stack.pop_back();
        }
    };
    for (int len = 1; len <= max_len; ++len) {
        seen.clear();
        dfs(dfs, len);
    }
    return out;
}

WordDistance word_distance(const WordWindow& w1, const WordWindow& w2) {
    WordDistance d;
    const int kmax = 60; // 4^-60 is far below double resolution
    for (int k = -kmax; k <= kmax; ++k) {
        const double weight = std::pow(4.0, -std::abs(k));
        if (w1.defined(k) && w2.defined(k)) {
            if (w1.at(k) != w2.at(k)) {
                d.lower += weight;
                d.upper += weight;
            }
        } else {
            d.upper += weight; // unseen index: worst case mismatch
        }
    }
    return d;
}

SymmetryInfo is_symmetric(const Word& word) {
    SymmetryInfo info;
    const int n = word.length();
    if (n == 0) return info;

    if (word.kind == Word::Kind::Finite) {
        std::vector<int> rev(word.symbols.rbegin(), word.symbols.rend());
        if (rev == word.symbols) {
            info.symmetric = true;
            if (n % 2 == 1)
                info.axes.push_back({SymmetryAxis::Type::Element, n / 2});
            else
                info.axes.push_back({SymmetryAxis::Type::Gap, n / 2 - 1});
        }
    } else {
        auto sym_at = [&](int p) { return word.symbols[((p % n) + n) % n]; };
        for (int p = 0; p < n; ++p) {
            bool gap = true, elem = true;
            for (int t = 0; t <= n / 2 + 1; ++t) {
                if (sym_at(p + 1 + t) != sym_at(p - t)) gap = false;
                if (sym_at(p + t) != sym_at(p - t)) elem = false;
            }
            if (gap) info.axes.push_back({SymmetryAxis::Type::Gap, p});
            if (elem) info.axes.push_back({SymmetryAxis::Type::Element, p});
        }
        info.symmetric = !info.axes.empty();
    }

    if (info.symmetric) {
        const auto& ax = info.axes.front();
        info.description = (ax.type == SymmetryAxis::Type::Gap)
                               ? "axis between positions " + std::to_string(ax.position) +
                                     " and " + std::to_string((ax.position + 1) % std::max(n, 1))
                               : "axis through position " + std::to_string(ax.position);
    }
    return info;
}

} // namespace refrabill
