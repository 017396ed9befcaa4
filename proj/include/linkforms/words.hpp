#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "linkforms/laurent.hpp"
#include "linkforms/ring.hpp"

namespace lf {

/// A reduced word in a free group. Letter k > 0 is generator k-1,
/// letter -k is its inverse; concatenation reduces freely.
class word {
public:
    word() = default;

    static word gen(int index, int exponent = 1)
    {
        word w;
        if (exponent == 0) return w;
        int letter = (exponent > 0) ? index + 1 : -(index + 1);
        int count = exponent > 0 ? exponent : -exponent;
        for (int i = 0; i < count; ++i) w.letters_.push_back(letter);
        return w;
    }

    static word from_letters(const std::vector<int>& letters)
    {
        word w;
        for (int l : letters) w.push(l);
        return w;
    }

    const std::vector<int>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    void push(int letter)
    {
        if (letter == 0) throw error("word letters must be nonzero");
        if (!letters_.empty() && letters_.back() == -letter)
            letters_.pop_back();
        else
            letters_.push_back(letter);
    }

    friend word operator*(const word& a, const word& b)
    {
        word out = a;
        for (int l : b.letters_) out.push(l);
        return out;
    }

    word inverse() const
    {
        word out;
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            out.letters_.push_back(-*it);
        return out;
    }

    /// Image under abelianization onto <t>: the exponent sum.
    std::int64_t exponent_sum() const
    {
        std::int64_t s = 0;
        for (int l : letters_) s += (l > 0) ? 1 : -1;
        return s;
    }

    /// Largest generator index mentioned, or -1 for the empty word.
    int max_generator() const
    {
        int m = -1;
        for (int l : letters_) m = std::max(m, (l > 0 ? l : -l) - 1);
        return m;
    }

    friend bool operator==(const word& a, const word& b)
    {
        return a.letters_ == b.letters_;
    }
    friend bool operator<(const word& a, const word& b)
    {
        return a.letters_ < b.letters_;
    }

    std::string str() const
    {
        if (letters_.empty()) return "1";
        std::string out;
        for (int l : letters_) {
            int g = (l > 0 ? l : -l) - 1;
            out += "g" + std::to_string(g);
            if (l < 0) out += "^-1";
            out += " ";
        }
        out.pop_back();
        return out;
    }

private:
    std::vector<int> letters_;
};

/// A formal Z-linear combination of reduced words (an integral group ring
/// element of the free group).
class group_ring_elt {
public:
    group_ring_elt() = default;

    static group_ring_elt of(const word& w, bigint c = 1)
    {
        group_ring_elt out;
        out.add(w, c);
        return out;
    }

    const std::map<word, bigint>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const word& w, const bigint& c)
    {
        if (c == 0) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_[w] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend group_ring_elt operator+(const group_ring_elt& a, const group_ring_elt& b)
    {
        group_ring_elt out = a;
        for (const auto& [w, c] : b.terms_) out.add(w, c);
        return out;
    }

    friend group_ring_elt operator-(const group_ring_elt& a, const group_ring_elt& b)
    {
        group_ring_elt out = a;
        for (const auto& [w, c] : b.terms_) out.add(w, -c);
        return out;
    }

    /// left multiplication by a word
    friend group_ring_elt operator*(const word& w, const group_ring_elt& x)
    {
        group_ring_elt out;
        for (const auto& [v, c] : x.terms_) out.add(w * v, c);
        return out;
    }

    friend group_ring_elt operator*(const group_ring_elt& a, const group_ring_elt& b)
    {
        group_ring_elt out;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) out.add(wa * wb, ca * cb);
        return out;
    }

    friend bool operator==(const group_ring_elt& a, const group_ring_elt& b)
    {
        return a.terms_ == b.terms_;
    }

private:
    std::map<word, bigint> terms_;
};

/// Fox's free derivative d(w)/d(g): d(uv) = du + u dv, d(g)/d(g) = 1,
/// d(g^-1)/d(g) = -g^-1, d(h^±1)/d(g) = 0 for h != g.
inline group_ring_elt fox_derivative(const word& w, int gen_index)
{
    group_ring_elt out;
    word prefix;
    for (int l : w.letters()) {
        int idx = (l > 0 ? l : -l) - 1;
        if (idx == gen_index) {
            if (l > 0) {
                out.add(prefix, 1);
            } else {
                word q = prefix;
                q.push(l);  // prefix * g^-1
                out.add(q, -1);
            }
        }
        prefix.push(l);
    }
    return out;
}

/// Abelianize onto R[t,t^-1]: each word maps to t^(exponent sum).
template <class R>
laurent_poly<R> abelianize(const group_ring_elt& x, const R& ring)
{
    laurent_poly<R> out(ring);
    for (const auto& [w, c] : x.terms()) {
        bigint r = c;
        if constexpr (std::is_same_v<R, ring_z>) {
            out.add_term(w.exponent_sum(), r);
        } else {
            out.add_term(w.exponent_sum(), coeff_cast(ring_z{}, ring, r));
        }
    }
    return out;
}

}  // namespace lf
