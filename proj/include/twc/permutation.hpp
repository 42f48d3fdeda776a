#pragma once

#include <string>
#include <vector>

namespace twc {

enum class StepKind { top, bottom };

inline const char* step_kind_name(StepKind k) {
  return k == StepKind::top ? "top" : "bottom";
}

/// A permutation pair pi = (pi_t, pi_b) over an alphabet of single-character
/// labels. Letters are indexed 0..d-1 in top order of the permutation the
/// alphabet was created from; the index is stable under Rauzy moves, so all
/// matrices over C^A share it.
class Permutation {
 public:
  Permutation(std::vector<char> labels, std::vector<int> top,
              std::vector<int> bottom);

  /// Parse "TOP/BOTTOM", e.g. "ABC/CBA". Both rows must be permutations of
  /// the same set of single-character labels, d >= 2.
  static Permutation parse(const std::string& text);

  int size() const { return d_; }
  char label(int letter) const { return labels_[letter]; }
  int letter_of(char label) const;

  /// Letter at 1-based position i of the top (resp. bottom) row.
  int top_letter(int pos1) const { return top_[pos1 - 1]; }
  int bottom_letter(int pos1) const { return bottom_[pos1 - 1]; }

  /// 1-based position of a letter, i.e. pi_t(letter) / pi_b(letter).
  int pi_t(int letter) const { return pos_t_[letter] + 1; }
  int pi_b(int letter) const { return pos_b_[letter] + 1; }

  /// Last letters of the two rows (the pair competing in Rauzy induction).
  int alpha_t() const { return top_[d_ - 1]; }
  int alpha_b() const { return bottom_[d_ - 1]; }

  bool irreducible() const;

  /// Successor permutations under the two Rauzy moves.
  Permutation top_move() const;     // alpha_t wins, bottom row changes
  Permutation bottom_move() const;  // alpha_b wins, top row changes
  Permutation move(StepKind k) const {
    return k == StepKind::top ? top_move() : bottom_move();
  }

  std::string text() const;  // "TOP/BOTTOM"

  bool operator==(const Permutation& o) const {
    return top_ == o.top_ && bottom_ == o.bottom_ && labels_ == o.labels_;
  }
  bool operator!=(const Permutation& o) const { return !(*this == o); }

 private:
  int d_;
  std::vector<char> labels_;  // letter id -> display label
  std::vector<int> top_, bottom_;    // 0-based position -> letter id
  std::vector<int> pos_t_, pos_b_;   // letter id -> 0-based position
  void rebuild_positions();
};

}  // namespace twc
