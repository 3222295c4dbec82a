#pragma once

#include "fixtrace/numeric.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

// One letter of a free-group word: generator index plus exponent sign.
struct Letter {
  int gen = 0;
  int sign = +1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

// A word in a free group. The empty word is the identity. Multiplication
// and inversion keep the word freely reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word identity() { return Word(); }

  static Word generator(int index, int exponent = 1) {
    Word w;
    int s = exponent >= 0 ? +1 : -1;
    for (int i = 0; i < (exponent >= 0 ? exponent : -exponent); ++i)
      w.letters_.push_back({index, s});
    return w;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  // Unique freely reduced form: no adjacent cancelling pair survives.
  Word reduced() const {
    std::vector<Letter> out;
    for (const Letter& l : letters_) {
      if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
        out.pop_back();
      else
        out.push_back(l);
    }
    return Word(std::move(out));
  }

  Word inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      out.push_back({it->gen, -it->sign});
    return Word(std::move(out));
  }

  friend Word operator*(const Word& a, const Word& b) {
    std::vector<Letter> out = a.letters_;
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out)).reduced();
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters_ == b.letters_;
  }

  // Shortlex: by length, then generator index, then sign (positive first).
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters_.size() != b.letters_.size())
      return a.letters_.size() < b.letters_.size();
    for (std::size_t i = 0; i < a.letters_.size(); ++i) {
      const Letter& x = a.letters_[i];
      const Letter& y = b.letters_[i];
      if (x.gen != y.gen) return x.gen < y.gen;
      if (x.sign != y.sign) return x.sign > y.sign;
    }
    return false;
  }

  // Largest generator index used, or -1 for the identity.
  int max_generator() const {
    int m = -1;
    for (const Letter& l : letters_) m = std::max(m, l.gen);
    return m;
  }

  // Exponent-sum vector over `gens` generators (abelianization image).
  std::vector<Int> exponent_vector(int gens) const {
    std::vector<Int> e(gens, 0);
    for (const Letter& l : letters_) {
      if (l.gen >= gens) throw std::out_of_range("generator index out of range");
      e[l.gen] += l.sign;
    }
    return e;
  }

  // Substitutes images[i] for generator i. Used to apply an endomorphism.
  Word substitute(const std::vector<Word>& images) const {
    Word out;
    for (const Letter& l : letters_) {
      if (l.gen >= static_cast<int>(images.size()))
        throw std::out_of_range("generator image missing");
      out = out * (l.sign > 0 ? images[l.gen] : images[l.gen].inverse());
    }
    return out;
  }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < letters_.size()) {
      std::size_t j = i;
      while (j < letters_.size() && letters_[j].gen == letters_[i].gen &&
             letters_[j].sign == letters_[i].sign)
        ++j;
      long long exp = static_cast<long long>(j - i) * letters_[i].sign;
      if (!s.empty()) s += "*";
      s += "g" + std::to_string(letters_[i].gen);
      if (exp != 1) s += "^" + std::to_string(exp);
      i = j;
    }
    return s;
  }

 private:
  std::vector<Letter> letters_;
};

// Spec operation name; `w` need not be reduced.
inline Word free_reduce(const Word& w) { return w.reduced(); }

}  // namespace fixtrace
