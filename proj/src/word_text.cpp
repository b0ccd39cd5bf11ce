#include "assgp/word_text.hpp"

#include <cctype>
#include <charconv>

namespace assgp {

namespace {

struct Token {
  std::string_view name;
  std::int64_t power;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view tok = text.substr(start, i - start);
    std::int64_t power = 1;
    auto caret = tok.find('^');
    if (caret != std::string_view::npos) {
      auto ps = tok.substr(caret + 1);
      auto r = std::from_chars(ps.data(), ps.data() + ps.size(), power);
      if (r.ec != std::errc() || r.ptr != ps.data() + ps.size()) {
        throw ParseError("bad power suffix in token '" + std::string(tok) + "'",
                         start + caret + 1);
      }
      tok = tok.substr(0, caret);
    }
    if (tok.empty()) throw ParseError("empty generator token", start);
    out.push_back({tok, power, start});
  }
  return out;
}

template <typename Resolve>
Word assemble(std::string_view text, Resolve&& resolve) {
  std::vector<Letter> raw;
  for (const Token& t : tokenize(text)) {
    if (t.name == "e") {
      if (t.power != 1) throw ParseError("identity takes no power", t.pos);
      continue;
    }
    GenId id = resolve(t);
    Letter base = letterOf(id, t.power >= 0 ? 1 : -1);
    std::int64_t reps = t.power >= 0 ? t.power : -t.power;
    for (std::int64_t k = 0; k < reps; ++k) raw.push_back(base);
  }
  return Word::reduceFrom(std::move(raw));
}

}  // namespace

Word parseWord(const AlphabetRegistry& reg, std::string_view text) {
  return assemble(text, [&](const Token& t) {
    auto id = reg.find(t.name);
    if (!id) {
      throw ParseError("unknown generator '" + std::string(t.name) + "'", t.pos);
    }
    return *id;
  });
}

Word parseWordRegistering(AlphabetRegistry& reg, std::string_view text,
                          std::uint32_t stage) {
  return assemble(text, [&](const Token& t) {
    return reg.ensureNamed(std::string(t.name), stage);
  });
}

}  // namespace assgp
