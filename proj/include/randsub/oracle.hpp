#pragma once

// Membership oracle for set-valued substitution images.
//
// For a fixed query word u, answers whether a span u[i..j) is a full
// element, a suffix of an element, a prefix of an element, or a subword of
// an element of theta^n(c), without materializing theta^n.  The recursion
// splits theta^n as theta applied to level-(n-1) blocks along each rule
// word; all four relations are memoized per (i, j, n, c).
//
// "Suffix"/"prefix" here always mean non-empty and possibly improper, so a
// full element is also a suffix and a prefix of itself.

#include <cstdint>
#include <vector>

#include "randsub/core.hpp"

namespace randsub {

class ImageOracle {
public:
    ImageOracle(const RandomSubstitution& sub, Word u, int max_level)
        : sub_(&sub), u_(std::move(u)), levels_(max_level + 1) {
        len_ = static_cast<int>(u_.size());
        std::size_t cells = static_cast<std::size_t>(len_ + 1) * (len_ + 1) *
                            levels_ * sub.dim() * 4;
        memo_.assign(cells, kUnknown);
    }

    const Word& word() const { return u_; }
    int max_level() const { return levels_ - 1; }

    // u[i..j) is an element of theta^n(c).
    bool full(int i, int j, int n, int c) { return query(kFull, i, j, n, c); }
    // u[i..j) is a non-empty suffix of some element of theta^n(c).
    bool suffix(int i, int j, int n, int c) { return query(kSuffix, i, j, n, c); }
    // u[i..j) is a non-empty prefix of some element of theta^n(c).
    bool prefix(int i, int j, int n, int c) { return query(kPrefix, i, j, n, c); }
    // u[i..j) is a non-empty subword of some element of theta^n(c).
    bool subword(int i, int j, int n, int c) { return query(kSub, i, j, n, c); }

private:
    enum Kind : int { kFull = 0, kSuffix = 1, kPrefix = 2, kSub = 3 };
    static constexpr std::int8_t kUnknown = -1;

    std::size_t key(Kind k, int i, int j, int n, int c) const {
        return (((static_cast<std::size_t>(i) * (len_ + 1) + j) * levels_ + n) *
                    sub_->dim() + c) * 4 + k;
    }

    bool query(Kind k, int i, int j, int n, int c) {
        if (j <= i) return false;
        std::int8_t& slot = memo_[key(k, i, j, n, c)];
        if (slot != kUnknown) return slot != 0;
        bool r = compute(k, i, j, n, c);
        slot = r ? 1 : 0;
        return r;
    }

    bool compute(Kind k, int i, int j, int n, int c) {
        if (n == 0) return j - i == 1 && u_[i] == static_cast<char>(c);
        WordView span = WordView(u_).substr(i, j - i);
        if (n == 1) {
            // Rule words are explicit; compare directly.
            for (const Word& r : sub_->rule(c)) {
                switch (k) {
                    case kFull:
                        if (r == span) return true;
                        break;
                    case kSuffix:
                        if (r.size() >= span.size() &&
                            WordView(r).substr(r.size() - span.size()) == span)
                            return true;
                        break;
                    case kPrefix:
                        if (r.size() >= span.size() &&
                            WordView(r).substr(0, span.size()) == span)
                            return true;
                        break;
                    case kSub:
                        if (r.find(span) != Word::npos) return true;
                        break;
                }
            }
            return false;
        }
        switch (k) {
            case kFull: return compute_full(i, j, n, c);
            case kSuffix: return compute_suffix(i, j, n, c);
            case kPrefix: return compute_prefix(i, j, n, c);
            case kSub: return compute_subword(i, j, n, c);
        }
        return false;
    }

    // Split u[i..j) into |r| consecutive level-(n-1) blocks.
    bool compute_full(int i, int j, int n, int c) {
        for (const Word& r : sub_->rule(c)) {
            std::vector<char> reach(j - i + 1, 0);
            reach[0] = 1;
            for (char rc : r) {
                std::vector<char> next(j - i + 1, 0);
                for (int m = 0; m <= j - i; ++m) {
                    if (!reach[m]) continue;
                    for (int m2 = m + 1; m2 <= j - i; ++m2)
                        if (query(kFull, i + m, i + m2, n - 1,
                                  static_cast<unsigned char>(rc)))
                            next[m2] = 1;
                }
                reach = std::move(next);
            }
            if (reach[j - i]) return true;
        }
        return false;
    }

    // A suffix starts inside block t, then blocks t+1.. are matched fully.
    bool compute_suffix(int i, int j, int n, int c) {
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            // after[t][m] : u[i+m..j) splits into full blocks r[t..k).
            std::vector<char> after(j - i + 1, 0);
            after[j - i] = 1;
            for (int t = k - 1; t >= 0; --t) {
                int block = static_cast<unsigned char>(r[t]);
                for (int m = 1; m <= j - i; ++m)
                    if (after[m] &&
                        query(kSuffix, i, i + m, n - 1, block))
                        return true;
                std::vector<char> prev(j - i + 1, 0);
                for (int m = 0; m < j - i; ++m) {
                    for (int m2 = m + 1; m2 <= j - i; ++m2)
                        if (after[m2] &&
                            query(kFull, i + m, i + m2, n - 1, block)) {
                            prev[m] = 1;
                            break;
                        }
                }
                after = std::move(prev);
            }
        }
        return false;
    }

    bool compute_prefix(int i, int j, int n, int c) {
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            // before[m] : u[i..i+m) splits into full blocks r[0..t).
            std::vector<char> before(j - i + 1, 0);
            before[0] = 1;
            for (int t = 0; t < k; ++t) {
                int block = static_cast<unsigned char>(r[t]);
                for (int m = 0; m < j - i; ++m)
                    if (before[m] &&
                        query(kPrefix, i + m, j, n - 1, block))
                        return true;
                std::vector<char> next(j - i + 1, 0);
                for (int m = 0; m <= j - i; ++m) {
                    if (!before[m]) continue;
                    for (int m2 = m + 1; m2 <= j - i; ++m2)
                        if (query(kFull, i + m, i + m2, n - 1, block))
                            next[m2] = 1;
                }
                before = std::move(next);
            }
        }
        return false;
    }

    // Inside one block, or a suffix piece + full blocks + a prefix piece.
    bool compute_subword(int i, int j, int n, int c) {
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            for (int t = 0; t < k; ++t)
                if (query(kSub, i, j, n - 1, static_cast<unsigned char>(r[t])))
                    return true;
            for (int t = 0; t + 1 < k; ++t) {
                int start = static_cast<unsigned char>(r[t]);
                std::vector<char> reach(j - i + 1, 0);
                for (int m = 1; m < j - i; ++m)
                    if (query(kSuffix, i, i + m, n - 1, start)) reach[m] = 1;
                bool any = false;
                for (int m = 1; m < j - i; ++m) any = any || reach[m];
                if (!any) continue;
                for (int t2 = t + 1; t2 < k; ++t2) {
                    int block = static_cast<unsigned char>(r[t2]);
                    for (int m = 1; m < j - i; ++m)
                        if (reach[m] &&
                            query(kPrefix, i + m, j, n - 1, block))
                            return true;
                    std::vector<char> next(j - i + 1, 0);
                    any = false;
                    for (int m = 1; m < j - i; ++m) {
                        if (!reach[m]) continue;
                        for (int m2 = m + 1; m2 <= j - i; ++m2)
                            if (query(kFull, i + m, i + m2, n - 1, block)) {
                                next[m2] = 1;
                                any = true;
                            }
                    }
                    reach = std::move(next);
                    if (!any) break;
                }
            }
        }
        return false;
    }

    const RandomSubstitution* sub_;
    Word u_;
    int levels_;
    int len_ = 0;
    std::vector<std::int8_t> memo_;
};

// Deterministic filler: the realization of theta^n(c) that always takes the
// first rule word.
inline Word first_choice_realization(const RandomSubstitution& s, unsigned n, int c) {
    Word w(1, static_cast<char>(c));
    for (unsigned k = 0; k < n; ++k) {
        Word next;
        for (char x : w) next += s.rule(static_cast<unsigned char>(x)).front();
        w = std::move(next);
    }
    return w;
}

// Witness construction: an element of theta^n(c) that contains / ends with /
// starts with the given span.  Only call when the oracle relation holds.
class WitnessBuilder {
public:
    WitnessBuilder(const RandomSubstitution& sub, ImageOracle& oracle)
        : sub_(&sub), oracle_(&oracle) {}

    // Element of theta^n(c) ending with u[i..j).
    Word ending_with(int i, int j, int n, int c) {
        const Word& u = word();
        if (n == 0 || oracle_->full(i, j, n, c))
            return Word(u.substr(i, j - i));
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            for (int t = 0; t < k; ++t) {
                int start = static_cast<unsigned char>(r[t]);
                for (int m = i + 1; m <= j; ++m) {
                    if (!oracle_->suffix(i, m, n - 1, start)) continue;
                    std::vector<int> cuts;
                    if (!split_run(m, j, n - 1, r, t + 1, k - 1, cuts))
                        continue;
                    Word out;
                    for (int t0 = 0; t0 < t; ++t0)
                        out += first_choice_realization(
                            *sub_, n - 1, static_cast<unsigned char>(r[t0]));
                    out += ending_with(i, m, n - 1, start);
                    out += u.substr(m, j - m);  // full blocks are exact spans
                    return out;
                }
            }
        }
        throw Error("witness: suffix relation does not hold");
    }

    // Element of theta^n(c) starting with u[i..j).
    Word starting_with(int i, int j, int n, int c) {
        const Word& u = word();
        if (n == 0 || oracle_->full(i, j, n, c))
            return Word(u.substr(i, j - i));
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            for (int t = 0; t < k; ++t) {
                int block = static_cast<unsigned char>(r[t]);
                for (int m = i; m < j; ++m) {
                    if (!oracle_->prefix(m, j, n - 1, block)) continue;
                    std::vector<int> cuts;
                    if (!split_run(i, m, n - 1, r, 0, t - 1, cuts)) continue;
                    Word out(u.substr(i, m - i));
                    out += starting_with(m, j, n - 1, block);
                    for (int t2 = t + 1; t2 < k; ++t2)
                        out += first_choice_realization(
                            *sub_, n - 1, static_cast<unsigned char>(r[t2]));
                    return out;
                }
            }
        }
        throw Error("witness: prefix relation does not hold");
    }

    // Element of theta^n(c) containing u[i..j); *offset is its position.
    Word containing(int i, int j, int n, int c, std::size_t* offset) {
        const Word& u = word();
        if (oracle_->full(i, j, n, c)) {
            *offset = 0;
            return Word(u.substr(i, j - i));
        }
        if (n == 0) throw Error("witness: subword relation does not hold");
        for (const Word& r : sub_->rule(c)) {
            int k = static_cast<int>(r.size());
            // entirely inside one block
            for (int t = 0; t < k; ++t) {
                int block = static_cast<unsigned char>(r[t]);
                if (!oracle_->subword(i, j, n - 1, block)) continue;
                std::size_t inner = 0;
                Word mid = containing(i, j, n - 1, block, &inner);
                Word out;
                for (int t2 = 0; t2 < k; ++t2) {
                    if (t2 == t) {
                        *offset = out.size() + inner;
                        out += mid;
                    } else {
                        out += first_choice_realization(
                            *sub_, n - 1, static_cast<unsigned char>(r[t2]));
                    }
                }
                return out;
            }
            // spanning: suffix piece at t, full blocks, prefix piece at t2
            for (int t = 0; t + 1 < k; ++t) {
                int start = static_cast<unsigned char>(r[t]);
                for (int s = i + 1; s < j; ++s) {
                    if (!oracle_->suffix(i, s, n - 1, start)) continue;
                    for (int t2 = t + 1; t2 < k; ++t2)
                        for (int m = s; m < j; ++m) {
                            int end = static_cast<unsigned char>(r[t2]);
                            if (!oracle_->prefix(m, j, n - 1, end)) continue;
                            std::vector<int> cuts;
                            if (!split_run(s, m, n - 1, r, t + 1, t2 - 1, cuts))
                                continue;
                            Word out;
                            for (int t0 = 0; t0 < t; ++t0)
                                out += first_choice_realization(
                                    *sub_, n - 1,
                                    static_cast<unsigned char>(r[t0]));
                            Word left = ending_with(i, s, n - 1, start);
                            *offset = out.size() + left.size() - (s - i);
                            out += left;
                            out += u.substr(s, m - s);
                            out += starting_with(m, j, n - 1, end);
                            for (int t3 = t2 + 1; t3 < k; ++t3)
                                out += first_choice_realization(
                                    *sub_, n - 1,
                                    static_cast<unsigned char>(r[t3]));
                            return out;
                        }
                }
            }
        }
        throw Error("witness: subword relation does not hold");
    }

private:
    const Word& word() const { return oracle_->word(); }

    // u[from..to) splits into full level blocks r[t_lo..t_hi].
    bool split_run(int from, int to, int level, const Word& r, int t_lo,
                   int t_hi, std::vector<int>& cuts) {
        if (t_lo > t_hi) return from == to;
        int block = static_cast<unsigned char>(r[t_lo]);
        for (int mid = from + 1; mid <= to; ++mid)
            if (oracle_->full(from, mid, level, block)) {
                cuts.push_back(mid);
                if (split_run(mid, to, level, r, t_lo + 1, t_hi, cuts))
                    return true;
                cuts.pop_back();
            }
        return false;
    }

    const RandomSubstitution* sub_;
    ImageOracle* oracle_;
};

}  // namespace randsub
