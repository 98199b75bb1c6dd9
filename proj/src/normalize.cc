#include "hyperex/normalize.h"

#include <algorithm>
#include <fstream>

#include "hyperex/errors.h"
#include "hyperex/text_util.h"

namespace hyperex {

namespace {

// Direct transcription of the reference implementation's state machine.
// `b_[k0_..k_]` is the word being stemmed; `j_` marks the end of the stem
// found by the last successful Ends() call.
class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word) {
    k_ = static_cast<int>(b_.size()) - 1;
  }

  std::string Run() {
    if (k_ <= k0_ + 1) return b_;
    Step1ab();
    if (k_ > k0_) {
      Step1c();
      Step2();
      Step3();
      Step4();
      Step5();
    }
    return b_.substr(0, static_cast<size_t>(k_ + 1));
  }

 private:
  bool Cons(int i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == k0_ ? true : !Cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[k0_..j_].
  int M() const {
    int n = 0;
    int i = k0_;
    for (;;) {
      if (i > j_) return n;
      if (!Cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (Cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!Cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (int i = k0_; i <= j_; ++i) {
      if (!Cons(i)) return true;
    }
    return false;
  }

  bool DoubleC(int j) const {
    if (j < k0_ + 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return Cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool Cvc(int i) const {
    if (i < k0_ + 2 || !Cons(i) || Cons(i - 1) || !Cons(i - 2)) return false;
    const char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  bool Ends(std::string_view s) {
    const int length = static_cast<int>(s.size());
    if (s[length - 1] != b_[k_]) return false;
    if (length > k_ - k0_ + 1) return false;
    if (std::string_view(b_).substr(k_ - length + 1, length) != s) return false;
    j_ = k_ - length;
    return true;
  }

  void SetTo(std::string_view s) {
    const int length = static_cast<int>(s.size());
    b_.replace(j_ + 1, b_.size() - (j_ + 1), s);
    k_ = j_ + length;
  }

  void R(std::string_view s) {
    if (M() > 0) SetTo(s);
  }

  void Step1ab() {
    if (b_[k_] == 's') {
      if (Ends("sses")) {
        k_ -= 2;
      } else if (Ends("ies")) {
        SetTo("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    if (Ends("eed")) {
      if (M() > 0) --k_;
    } else if ((Ends("ed") || Ends("ing")) && VowelInStem()) {
      k_ = j_;
      if (Ends("at")) {
        SetTo("ate");
      } else if (Ends("bl")) {
        SetTo("ble");
      } else if (Ends("iz")) {
        SetTo("ize");
      } else if (DoubleC(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (M() == 1 && Cvc(k_)) {
        SetTo("e");
      }
    }
  }

  void Step1c() {
    if (Ends("y") && VowelInStem()) b_[k_] = 'i';
  }

  void Step2() {
    switch (b_[k_ - 1]) {
      case 'a':
        if (Ends("ational")) { R("ate"); break; }
        if (Ends("tional")) { R("tion"); break; }
        break;
      case 'c':
        if (Ends("enci")) { R("ence"); break; }
        if (Ends("anci")) { R("ance"); break; }
        break;
      case 'e':
        if (Ends("izer")) { R("ize"); break; }
        break;
      case 'l':
        if (Ends("bli")) { R("ble"); break; }
        if (Ends("alli")) { R("al"); break; }
        if (Ends("entli")) { R("ent"); break; }
        if (Ends("eli")) { R("e"); break; }
        if (Ends("ousli")) { R("ous"); break; }
        break;
      case 'o':
        if (Ends("ization")) { R("ize"); break; }
        if (Ends("ation")) { R("ate"); break; }
        if (Ends("ator")) { R("ate"); break; }
        break;
      case 's':
        if (Ends("alism")) { R("al"); break; }
        if (Ends("iveness")) { R("ive"); break; }
        if (Ends("fulness")) { R("ful"); break; }
        if (Ends("ousness")) { R("ous"); break; }
        break;
      case 't':
        if (Ends("aliti")) { R("al"); break; }
        if (Ends("iviti")) { R("ive"); break; }
        if (Ends("biliti")) { R("ble"); break; }
        break;
      case 'g':
        if (Ends("logi")) { R("log"); break; }
        break;
      default:
        break;
    }
  }

  void Step3() {
    switch (b_[k_]) {
      case 'e':
        if (Ends("icate")) { R("ic"); break; }
        if (Ends("ative")) { R(""); break; }
        if (Ends("alize")) { R("al"); break; }
        break;
      case 'i':
        if (Ends("iciti")) { R("ic"); break; }
        break;
      case 'l':
        if (Ends("ical")) { R("ic"); break; }
        if (Ends("ful")) { R(""); break; }
        break;
      case 's':
        if (Ends("ness")) { R(""); break; }
        break;
      default:
        break;
    }
  }

  void Step4() {
    switch (b_[k_ - 1]) {
      case 'a':
        if (Ends("al")) break;
        return;
      case 'c':
        if (Ends("ance")) break;
        if (Ends("ence")) break;
        return;
      case 'e':
        if (Ends("er")) break;
        return;
      case 'i':
        if (Ends("ic")) break;
        return;
      case 'l':
        if (Ends("able")) break;
        if (Ends("ible")) break;
        return;
      case 'n':
        if (Ends("ant")) break;
        if (Ends("ement")) break;
        if (Ends("ment")) break;
        if (Ends("ent")) break;
        return;
      case 'o':
        if (Ends("ion") && j_ >= k0_ && (b_[j_] == 's' || b_[j_] == 't')) {
          break;
        }
        if (Ends("ou")) break;
        return;
      case 's':
        if (Ends("ism")) break;
        return;
      case 't':
        if (Ends("ate")) break;
        if (Ends("iti")) break;
        return;
      case 'u':
        if (Ends("ous")) break;
        return;
      case 'v':
        if (Ends("ive")) break;
        return;
      case 'z':
        if (Ends("ize")) break;
        return;
      default:
        return;
    }
    if (M() > 1) k_ = j_;
  }

  void Step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      const int a = M();
      if (a > 1 || (a == 1 && !Cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && DoubleC(k_) && M() > 1) --k_;
  }

  std::string b_;
  int k_ = 0;
  int k0_ = 0;
  int j_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  return PorterStemmer(word).Run();
}

StopwordSet::StopwordSet(std::vector<std::string> words) {
  for (std::string& w : words) words_.insert(AsciiLower(w));
}

StopwordSet StopwordSet::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read stopword file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    const size_t hash = view.find('#');
    if (hash != std::string_view::npos) view = view.substr(0, hash);
    view = Trim(view);
    if (!view.empty()) words.emplace_back(view);
  }
  return StopwordSet(std::move(words));
}

std::string StopwordSet::Fingerprint() const {
  std::vector<std::string> sorted(words_.begin(), words_.end());
  std::sort(sorted.begin(), sorted.end());
  uint64_t h = Fnv1a64("");
  for (const std::string& w : sorted) {
    h = Fnv1a64(w, h);
    h = Fnv1a64("\n", h);
  }
  return Hex64(h);
}

bool IsPunctuationToken(std::string_view token) {
  if (token.empty() || token == kPlaceholder) return false;
  return std::all_of(token.begin(), token.end(), IsAsciiPunct);
}

std::vector<std::string> MaskStopwords(std::span<const std::string> tokens,
                                       const StopwordSet& stops) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    out.push_back(stops.Contains(token) ? std::string(kPlaceholder) : token);
  }
  return out;
}

std::vector<std::string> NormalizeTokens(std::span<const std::string> tokens,
                                         const StopwordSet& stops) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (!IsPunctuationToken(token)) kept.push_back(token);
  }
  std::vector<std::string> out = MaskStopwords(kept, stops);
  for (std::string& token : out) {
    if (token != kPlaceholder) token = PorterStem(token);
  }
  return out;
}

std::string NormalizationFingerprint(const StopwordSet& stops) {
  return "porter1980+" + stops.Fingerprint();
}

const std::string& Normalizer::Stem(const std::string& token) {
  auto it = cache_.find(token);
  if (it == cache_.end()) {
    // Bound the memo so a long tail of hapaxes cannot grow it without limit.
    if (cache_.size() > (1u << 20)) cache_.clear();
    it = cache_.emplace(token, PorterStem(token)).first;
  }
  return it->second;
}

std::vector<std::string> Normalizer::Normalize(
    std::span<const std::string> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    if (IsPunctuationToken(token)) continue;
    if (token == kPlaceholder || stops_.Contains(token)) {
      out.emplace_back(kPlaceholder);
    } else {
      out.push_back(Stem(token));
    }
  }
  return out;
}

}  // namespace hyperex
