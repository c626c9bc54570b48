/*
 * Copyright (c) 2026, The behtypes Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include "beht/regex.hpp"

#include <cctype>

#include "beht/error.hpp"

namespace beht {

Regex Regex::epsilon() { return Regex{}; }

Regex Regex::of(Label label) {
  Regex r;
  r.kind = Kind::Atom;
  r.atom = std::move(label);
  return r;
}

Regex Regex::concat(std::vector<Regex> parts) {
  Regex r;
  r.kind = Kind::Concat;
  r.children = std::move(parts);
  return r;
}

Regex Regex::alt(std::vector<Regex> parts) {
  Regex r;
  r.kind = Kind::Alt;
  r.children = std::move(parts);
  return r;
}

Regex Regex::star(Regex child) {
  Regex r;
  r.kind = Kind::Star;
  r.children.push_back(std::move(child));
  return r;
}

namespace {

void validate_at(const Regex& r, const std::string& at) {
  const std::string path = at.empty() ? "/" : at;
  switch (r.kind) {
    case Regex::Kind::Atom:
      if (!is_valid_name(r.atom.name))
        fail(ErrorKind::Structural, "regex node " + path + ": invalid atom name '" +
                                        r.atom.name + "'");
      if (!r.children.empty())
        fail(ErrorKind::Structural, "regex node " + path + ": atom with children");
      return;
    case Regex::Kind::Epsilon:
      if (!r.children.empty())
        fail(ErrorKind::Structural, "regex node " + path + ": epsilon with children");
      return;
    case Regex::Kind::Star:
      if (r.children.size() != 1)
        fail(ErrorKind::Structural, "regex node " + path + ": star needs exactly one child, has " +
                                        std::to_string(r.children.size()));
      break;
    case Regex::Kind::Concat:
    case Regex::Kind::Alt:
      if (r.children.size() < 2)
        fail(ErrorKind::Structural,
             "regex node " + path + ": " + (r.kind == Regex::Kind::Concat ? "concat" : "alt") +
                 " needs at least two children, has " + std::to_string(r.children.size()));
      break;
  }
  for (std::size_t i = 0; i < r.children.size(); ++i)
    validate_at(r.children[i], at + "/" + std::to_string(i));
}

void collect(const Regex& r, LabelSet& out) {
  if (r.kind == Regex::Kind::Atom) out.insert(r.atom);
  for (const auto& c : r.children) collect(c, out);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Regex parse() {
    Regex r = alt();
    skip_ws();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::Parse, "regex offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Regex alt() {
    std::vector<Regex> parts{concat()};
    while (eat('+')) parts.push_back(concat());
    return parts.size() == 1 ? std::move(parts.front()) : Regex::alt(std::move(parts));
  }

  Regex concat() {
    std::vector<Regex> parts{postfix()};
    while (eat('.')) parts.push_back(postfix());
    return parts.size() == 1 ? std::move(parts.front()) : Regex::concat(std::move(parts));
  }

  Regex postfix() {
    Regex r = primary();
    while (eat('*')) r = Regex::star(std::move(r));
    return r;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) break;
      if (std::string_view(".+*()<>:").find(c) != std::string_view::npos) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Regex primary() {
    if (eat('(')) {
      if (eat(')')) return Regex::epsilon();
      Regex inner = alt();
      if (!eat(')')) error("expected ')'");
      return inner;
    }
    std::string word = ident();
    if (word.empty()) error("expected a label");
    Direction dir = Direction::Neutral;
    if (eat(':')) {
      if (word == "INC") {
        dir = Direction::Inc;
      } else if (word == "OUT") {
        dir = Direction::Out;
      } else {
        error("unknown direction '" + word + "'");
      }
      word = ident();
      if (word.empty()) error("expected a label name");
    }
    std::optional<std::string> param;
    if (eat('<')) {
      param = ident();
      if (param->empty()) error("expected a parameter name");
      if (!eat('>')) error("expected '>'");
    }
    return Regex::of(make_label(dir, std::move(word), std::move(param)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void print(const Regex& r, std::string& out) {
  auto child = [&](const Regex& c, bool wrap) {
    if (wrap) out += '(';
    print(c, out);
    if (wrap) out += ')';
  };
  switch (r.kind) {
    case Regex::Kind::Epsilon: out += "()"; return;
    case Regex::Kind::Atom: out += r.atom.str(); return;
    case Regex::Kind::Star:
      child(r.children[0], r.children[0].kind == Regex::Kind::Concat ||
                               r.children[0].kind == Regex::Kind::Alt);
      out += '*';
      return;
    case Regex::Kind::Concat:
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += '.';
        const auto k = r.children[i].kind;
        child(r.children[i], k == Regex::Kind::Concat || k == Regex::Kind::Alt);
      }
      return;
    case Regex::Kind::Alt:
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += " + ";
        child(r.children[i], r.children[i].kind == Regex::Kind::Alt);
      }
      return;
  }
}

}  // namespace

void Regex::validate() const { validate_at(*this, ""); }

LabelSet Regex::atoms() const {
  LabelSet out;
  collect(*this, out);
  return out;
}

Regex parse_regex(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Regex& r) {
  std::string out;
  print(r, out);
  return out;
}

}  // namespace beht
