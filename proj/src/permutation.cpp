#include "twc/permutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace twc {

Permutation::Permutation(std::vector<char> labels, std::vector<int> top,
                         std::vector<int> bottom)
    : d_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      top_(std::move(top)),
      bottom_(std::move(bottom)) {
  if (d_ < 2) throw std::invalid_argument("permutation needs d >= 2");
  if (static_cast<int>(top_.size()) != d_ ||
      static_cast<int>(bottom_.size()) != d_)
    throw std::invalid_argument("row length mismatch");
  std::vector<bool> seen_t(d_, false), seen_b(d_, false);
  for (int i = 0; i < d_; ++i) {
    if (top_[i] < 0 || top_[i] >= d_ || seen_t[top_[i]])
      throw std::invalid_argument("top row is not a bijection");
    if (bottom_[i] < 0 || bottom_[i] >= d_ || seen_b[bottom_[i]])
      throw std::invalid_argument("bottom row is not a bijection");
    seen_t[top_[i]] = seen_b[bottom_[i]] = true;
  }
  rebuild_positions();
}

void Permutation::rebuild_positions() {
  pos_t_.assign(d_, -1);
  pos_b_.assign(d_, -1);
  for (int i = 0; i < d_; ++i) {
    pos_t_[top_[i]] = i;
    pos_b_[bottom_[i]] = i;
  }
}

Permutation Permutation::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos)
    throw std::invalid_argument("permutation text must be \"TOP/BOTTOM\"");
  std::string t = text.substr(0, slash), b = text.substr(slash + 1);
  if (t.size() != b.size())
    throw std::invalid_argument("rows have different lengths");
  if (t.size() < 2) throw std::invalid_argument("permutation needs d >= 2");
  std::string ts = t, bs = b;
  std::sort(ts.begin(), ts.end());
  std::sort(bs.begin(), bs.end());
  if (ts != bs) throw std::invalid_argument("rows are not anagrams");
  if (std::adjacent_find(ts.begin(), ts.end()) != ts.end())
    throw std::invalid_argument("repeated label");
  const int d = static_cast<int>(t.size());
  // Letter ids follow the top row: labels[i] = i-th top letter.
  std::vector<char> labels(t.begin(), t.end());
  std::vector<int> top(d), bottom(d);
  for (int i = 0; i < d; ++i) top[i] = i;
  for (int i = 0; i < d; ++i) {
    bottom[i] = static_cast<int>(t.find(b[i]));
  }
  return Permutation(std::move(labels), std::move(top), std::move(bottom));
}

int Permutation::letter_of(char label) const {
  for (int i = 0; i < d_; ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument(std::string("unknown label '") + label + "'");
}

bool Permutation::irreducible() const {
  // No 1 <= k < d with pi_t^{-1}{1..k} = pi_b^{-1}{1..k}.
  std::vector<bool> in_top(d_, false);
  int common = 0;
  for (int k = 1; k < d_; ++k) {
    in_top[top_[k - 1]] = true;
    if (in_top[bottom_[k - 1]]) ++common;
    if (common == k) return false;
  }
  return true;
}

Permutation Permutation::top_move() const {
  // alpha_t wins: bottom row loses alpha_b from its end; alpha_b is
  // reinserted immediately after the position of alpha_t in the bottom.
  const int at = alpha_t(), ab = alpha_b();
  std::vector<int> nb;
  nb.reserve(d_);
  for (int i = 0; i + 1 < d_; ++i) {
    nb.push_back(bottom_[i]);
    if (bottom_[i] == at) nb.push_back(ab);
  }
  return Permutation(labels_, top_, std::move(nb));
}

Permutation Permutation::bottom_move() const {
  const int at = alpha_t(), ab = alpha_b();
  std::vector<int> nt;
  nt.reserve(d_);
  for (int i = 0; i + 1 < d_; ++i) {
    nt.push_back(top_[i]);
    if (top_[i] == ab) nt.push_back(at);
  }
  return Permutation(labels_, std::move(nt), bottom_);
}

std::string Permutation::text() const {
  std::string s;
  s.reserve(2 * d_ + 1);
  for (int i = 0; i < d_; ++i) s += labels_[top_[i]];
  s += '/';
  for (int i = 0; i < d_; ++i) s += labels_[bottom_[i]];
  return s;
}

}  // namespace twc
