#include <cctype>
#include <cstring>

#include "nfm/error.hpp"
#include "nfm/syntax.hpp"

namespace nfm {

std::string to_string(Position pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

namespace {

char opener(Delim d) {
  switch (d) {
    case Delim::Paren: return '(';
    case Delim::Bracket: return '[';
    case Delim::Brace: return '{';
    case Delim::Angle: return '<';
  }
  return '?';
}

char closer(Delim d) {
  switch (d) {
    case Delim::Paren: return ')';
    case Delim::Bracket: return ']';
    case Delim::Brace: return '}';
    case Delim::Angle: return '>';
  }
  return '?';
}

bool is_atom_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || std::strchr("-?!*+/=%.$:&|^~@#", c) != nullptr;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SourceForm> read_all() {
    std::vector<SourceForm> forms;
    for (;;) {
      skip_space();
      if (eof()) break;
      char c = peek();
      if (c == ')' || c == ']' || c == '}') {
        throw Error(ErrorKind::UnbalancedDelimiter,
                    std::string("unexpected `") + c + "` at " + to_string(pos_));
      }
      if (c == ',') {
        throw Error(ErrorKind::StrayToken, "`,` outside any group at " + to_string(pos_));
      }
      SourceForm form = read_form(nullptr);
      if (form.is_atom("...")) {
        throw Error(ErrorKind::StrayToken, "`...` outside any group at " + to_string(form.pos));
      }
      forms.push_back(std::move(form));
    }
    return forms;
  }

 private:
  bool eof() const { return index_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return index_ + ahead < text_.size() ? text_[index_ + ahead] : '\0';
  }
  char next() {
    char c = text_[index_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void skip_space() {
    while (!eof()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        next();
      } else if (c == ';') {
        while (!eof() && peek() != '\n') next();
      } else {
        break;
      }
    }
  }

  // `enclosing` is the innermost open group, or null at top level.
  SourceForm read_form(const Delim* enclosing) {
    Position start = pos_;
    char c = peek();
    switch (c) {
      case '(': return read_group(Delim::Paren);
      case '[': return read_group(Delim::Bracket);
      case '{': return read_group(Delim::Brace);
      default: break;
    }
    if (c == '<' && std::isalpha(static_cast<unsigned char>(peek(1)))) {
      return read_group(Delim::Angle);
    }
    if (c == ',') {
      next();
      skip_space();
      if (eof()) throw IncompleteInput("input ends after `,` at " + to_string(start));
      char d = peek();
      if (d == ')' || d == ']' || d == '}' || (d == '>' && enclosing && *enclosing == Delim::Angle)) {
        throw Error(ErrorKind::StrayToken, "`,` without an expression at " + to_string(start));
      }
      SourceForm form;
      form.kind = SourceForm::Kind::Comma;
      form.pos = start;
      form.children.push_back(read_form(enclosing));
      return form;
    }
    return read_atom();
  }

  SourceForm read_group(Delim delim) {
    SourceForm form;
    form.kind = SourceForm::Kind::Group;
    form.delim = delim;
    form.pos = pos_;
    next();
    for (;;) {
      skip_space();
      if (eof()) {
        throw IncompleteInput(std::string("unclosed `") + opener(delim) + "` opened at " +
                              to_string(form.pos));
      }
      char c = peek();
      if (c == closer(delim)) {
        next();
        return form;
      }
      if (c == ')' || c == ']' || c == '}') {
        throw Error(ErrorKind::UnbalancedDelimiter, std::string("`") + c + "` at " + to_string(pos_) +
                                                        " does not close `" + opener(delim) +
                                                        "` opened at " + to_string(form.pos));
      }
      form.children.push_back(read_form(&delim));
    }
  }

  std::string read_segment() {
    std::string text;
    while (!eof() && is_atom_char(peek())) text += next();
    return text;
  }

  SourceForm read_atom() {
    SourceForm form;
    form.pos = pos_;
    char c = peek();
    if (c == '<' || c == '>') {
      form.text += next();
      if (peek() == '=') form.text += next();
      return form;
    }
    if (c == '_') {
      next();
      if (!eof() && (is_atom_char(peek()) || peek() == '_')) {
        throw Error(ErrorKind::SyntaxError, "identifier may not start with `_` at " + to_string(form.pos));
      }
      form.text = "_";
      return form;
    }
    form.text = read_segment();
    if (form.text.empty()) {
      throw Error(ErrorKind::SyntaxError,
                  std::string("unexpected character `") + c + "` at " + to_string(form.pos));
    }
    if (peek() != '_') return form;

    form.kind = SourceForm::Kind::Indexed;
    while (peek() == '_') {
      Position at = pos_;
      next();
      if (peek() == '(') {
        form.children.push_back(read_group(Delim::Paren));
        continue;
      }
      SourceForm index;
      index.pos = pos_;
      index.text = read_segment();
      if (index.text.empty()) {
        throw Error(ErrorKind::SyntaxError, "missing index after `_` at " + to_string(at));
      }
      form.children.push_back(std::move(index));
    }
    return form;
  }

  std::string_view text_;
  std::size_t index_ = 0;
  Position pos_;
};

}  // namespace

std::vector<SourceForm> read_forms(std::string_view text) { return Reader(text).read_all(); }

bool input_complete(std::string_view text) {
  try {
    read_forms(text);
  } catch (const IncompleteInput&) {
    return false;
  } catch (const Error&) {
  }
  return true;
}

std::string render_form(const SourceForm& form) {
  switch (form.kind) {
    case SourceForm::Kind::Atom:
      return form.text;
    case SourceForm::Kind::Comma:
      return "," + render_form(form.children.front());
    case SourceForm::Kind::Indexed: {
      std::string out = form.text;
      for (const auto& index : form.children) out += "_" + render_form(index);
      return out;
    }
    case SourceForm::Kind::Group: {
      std::string out(1, opener(form.delim));
      for (std::size_t i = 0; i < form.children.size(); ++i) {
        if (i) out += ' ';
        out += render_form(form.children[i]);
      }
      out += closer(form.delim);
      return out;
    }
  }
  return {};
}

}  // namespace nfm
