#include "twzhu/text.hpp"

#include <cctype>
#include <vector>

namespace twzhu {

namespace {

template <class Key, class WordFn>
std::string formatCombination(const Combination<Key>& v, WordFn word) {
  if (v.isZero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : v) {
    Scalar mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    if (mag != Scalar(1)) out += mag.toString() + "*";
    out += word(k);
    first = false;
  }
  return out;
}

}  // namespace

std::string formatElement(const VoaBackend& backend, const Element& v) {
  auto self = backend.makeSelfModule();
  return formatCombination(v, [&](const BasisKey& k) { return self->stateText(ModState{k.parts}); });
}

std::string formatModuleVector(const ModuleBackend& module, const ModuleVector& v) {
  return formatCombination(v, [&](const ModState& s) { return module.stateText(s); });
}

void TextCursor::skipSpace() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool TextCursor::atEnd() {
  skipSpace();
  return pos_ >= text_.size();
}

char TextCursor::peek() {
  skipSpace();
  return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool TextCursor::accept(std::string_view token) {
  skipSpace();
  if (text_.substr(pos_, token.size()) != token) return false;
  pos_ += token.size();
  return true;
}

void TextCursor::expect(std::string_view token) {
  if (!accept(token)) fail("expected '" + std::string(token) + "'");
}

std::string TextCursor::rational() {
  skipSpace();
  std::string out;
  auto digits = [&] {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) out += text_[pos_++];
    if (pos_ == start) fail("expected digits");
  };
  if (pos_ < text_.size() && text_[pos_] == '-') {
    out += '-';
    ++pos_;
  }
  digits();
  if (accept("/")) {
    out += '/';
    digits();
  }
  return out;
}

ModuleVector parseModuleVectorAt(const ModuleBackend& module, TextCursor& cur) {
  const char letter = module.parent().letter();
  const int T = module.order();
  ModuleVector out;
  bool firstTerm = true;
  for (;;) {
    Scalar sign(1);
    if (cur.accept("-")) {
      sign = Scalar(-1);
    } else if (cur.accept("+")) {
      if (firstTerm) cur.fail("unexpected '+'");
    } else if (!firstTerm) {
      break;
    }

    Scalar coeff(1);
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      const std::size_t at = cur.position();
      std::string lit = cur.rational();
      try {
        coeff = Scalar::parse(lit);
      } catch (const std::invalid_argument&) {
        throw ParseError("invalid scalar '" + lit + "'", at);
      }
      if (!cur.accept("*")) {
        if (coeff.isZero() && firstTerm) {
          firstTerm = false;
          continue;
        }
        cur.fail("expected '*' after scalar");
      }
    }

    std::vector<Mode> letters;
    for (;;) {
      const char c = cur.peek();
      if (c == letter) {
        cur.expect(std::string(1, letter));
        cur.expect("[");
        const std::size_t at = cur.position();
        std::string lit = cur.rational();
        try {
          letters.push_back(Mode::parse(lit, T));
        } catch (const std::invalid_argument&) {
          throw ParseError("mode '" + lit + "' is not in (1/" + std::to_string(T) + ")Z", at);
        }
        cur.expect("]");
      } else if (c == 'a' || c == 'L') {
        cur.fail(std::string("letter '") + c + "' does not belong to the " + module.parent().name() + " backend");
      } else {
        break;
      }
    }
    const std::size_t ketAt = cur.position();
    std::string ket;
    if (cur.accept(module.ket())) {
      ket = module.ket();
    } else if (cur.accept("|0>")) {
      ket = "|0>";
    } else if (cur.accept("|tw>")) {
      ket = "|tw>";
    } else {
      cur.fail("expected '" + module.ket() + "'");
    }
    if (ket != module.ket()) throw ParseError("ket " + ket + " does not belong to module " + module.name(), ketAt);

    ModuleVector word{ModState{}};
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      ModuleVector next;
      for (const auto& [s, c] : word) next.addScaled(module.applyLetter(*it, s), c);
      word = std::move(next);
    }
    out.addScaled(word, sign * coeff);
    firstTerm = false;
  }
  return out;
}

ModuleVector parseModuleVector(const ModuleBackend& module, std::string_view text) {
  TextCursor cur(text);
  ModuleVector v = parseModuleVectorAt(module, cur);
  if (!cur.atEnd()) cur.fail("unexpected trailing input");
  return v;
}

Element parseElement(const VoaBackend& backend, std::string_view text) {
  auto self = backend.makeSelfModule();
  return toElement(parseModuleVector(*self, text));
}

}  // namespace twzhu
