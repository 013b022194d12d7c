#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nfm/engine.hpp"
#include "nfm/matcher.hpp"
#include "nfm/session.hpp"

namespace testing {

std::string run(nfm::Interpreter& interp, const std::string& program) {
  std::string last;
  nfm::RunResult r = nfm::run_program(interp, program, [&](std::string_view line) { last = line; }, false);
  if (r.status != nfm::Status::Ok) return r.error;
  return last;
}

std::string run(const std::string& program) {
  nfm::Interpreter interp;
  return run(interp, program);
}

std::vector<std::string> transcript(const std::string& program) {
  nfm::Interpreter interp;
  std::vector<std::string> lines;
  nfm::run_program(interp, program, [&](std::string_view line) { lines.emplace_back(line); }, true);
  return lines;
}

std::string braces(const std::vector<int>& xs) {
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out + "}";
}

std::vector<std::vector<int>> sequences(const std::vector<int>& alphabet, std::size_t max_len) {
  std::vector<std::vector<int>> out{{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i) {
      for (int a : alphabet) {
        auto next = out[i];
        next.push_back(a);
        out.push_back(std::move(next));
      }
    }
    level_start = level_end;
  }
  return out;
}

// Oracle ------------------------------------------------------------------------

namespace {

OPatternPtr make(OPattern::Kind kind, std::string name = {}, OPatternPtr l = nullptr, OPatternPtr r = nullptr) {
  return std::make_shared<const OPattern>(OPattern{kind, std::move(name), std::move(l), std::move(r)});
}

// A target is either one element or a collection.
struct OTarget {
  bool element;
  int value;
  std::vector<int> items;
};

struct Atom {
  OPatternPtr pattern;
  OTarget target;
};

std::vector<int> normalize(View view, std::vector<int> xs) {
  if (view != View::List) std::sort(xs.begin(), xs.end());
  if (view == View::Set) xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

OTarget element(int v) { return {true, v, {}}; }
OTarget collection(std::vector<int> xs) { return {false, 0, std::move(xs)}; }

void solve(View view, std::vector<Atom> atoms, OBindings bindings, std::vector<OBindings>& out) {
  if (atoms.empty()) {
    out.push_back(std::move(bindings));
    return;
  }
  Atom atom = atoms.front();
  atoms.erase(atoms.begin());
  auto with = [&](std::vector<Atom> front) {
    front.insert(front.end(), atoms.begin(), atoms.end());
    solve(view, std::move(front), bindings, out);
  };
  const OPattern& p = *atom.pattern;
  const std::vector<int>& xs = atom.target.items;
  switch (p.kind) {
    case OPattern::Kind::Wild:
      with({});
      return;
    case OPattern::Kind::Var: {
      if (atom.target.element) {
        bindings[p.name] = atom.target.value;
      } else {
        bindings[p.name] = normalize(view, xs);
      }
      with({});
      return;
    }
    case OPattern::Kind::ValVar: {
      auto it = bindings.find(p.name);
      if (it == bindings.end() || !atom.target.element) throw std::logic_error("oracle: bad value pattern");
      if (std::get<int>(it->second) == atom.target.value) with({});
      return;
    }
    case OPattern::Kind::Nil:
      if (xs.empty()) with({});
      return;
    case OPattern::Kind::Cons: {
      // The list view has one choice of head; the other views may pick any
      // position. Only the multiset view removes the chosen element.
      std::size_t choices = view == View::List ? std::min<std::size_t>(xs.size(), 1) : xs.size();
      for (std::size_t i = 0; i < choices; ++i) {
        std::vector<int> rest = xs;
        if (view != View::Set) rest.erase(rest.begin() + static_cast<long>(i));
        with({{p.left, element(xs[i])}, {p.right, collection(rest)}});
      }
      return;
    }
    case OPattern::Kind::Join: {
      if (view == View::List) {
        for (std::size_t k = 0; k <= xs.size(); ++k) {
          with({{p.left, collection({xs.begin(), xs.begin() + static_cast<long>(k)})},
                {p.right, collection({xs.begin() + static_cast<long>(k), xs.end()})}});
        }
        return;
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << xs.size()); ++mask) {
        std::vector<int> picked, others;
        for (std::size_t i = 0; i < xs.size(); ++i) ((mask >> i) & 1 ? picked : others).push_back(xs[i]);
        with({{p.left, collection(picked)}, {p.right, collection(view == View::Set ? xs : others)}});
      }
      return;
    }
  }
}

}  // namespace

OPatternPtr wild() { return make(OPattern::Kind::Wild); }
OPatternPtr var(std::string name) { return make(OPattern::Kind::Var, std::move(name)); }
OPatternPtr val(std::string name) { return make(OPattern::Kind::ValVar, std::move(name)); }
OPatternPtr nil() { return make(OPattern::Kind::Nil); }
OPatternPtr cons(OPatternPtr head, OPatternPtr tail) {
  return make(OPattern::Kind::Cons, {}, std::move(head), std::move(tail));
}
OPatternPtr join(OPatternPtr front, OPatternPtr back) {
  return make(OPattern::Kind::Join, {}, std::move(front), std::move(back));
}

std::vector<OBindings> oracle_enumerate(View view, const OPatternPtr& pattern, const std::vector<int>& target,
                                        std::size_t cap) {
  if (target.size() > cap) throw OracleTooLarge("target of " + std::to_string(target.size()) + " elements");
  std::vector<OBindings> out;
  solve(view, {{pattern, collection(target)}}, {}, out);
  return out;
}

std::vector<OBindings> engine_enumerate(View view, const std::string& pattern, const std::vector<int>& target) {
  nfm::Interpreter interp(nfm::Options{100, false});
  nfm::PatternPtr p = nfm::parse_pattern(nfm::read_forms(pattern).at(0));
  std::vector<nfm::ThunkPtr> elems;
  for (int x : target) elems.push_back(nfm::ready(nfm::make_int(x)));
  nfm::ThunkPtr t = nfm::ready(nfm::make_collection(elems));
  nfm::MatcherPtr element = nfm::integer_matcher();
  nfm::MatcherPtr m = view == View::List       ? nfm::list_of(element)
                      : view == View::Multiset ? nfm::multiset_of(element)
                                               : nfm::set_of(element);
  nfm::ResultStream results(interp, interp.global(), p, t, m);
  std::vector<OBindings> out;
  while (auto b = results.next()) {
    OBindings row;
    for (auto& [key, thunk] : nfm::to_vector(*b)) {
      const nfm::ValuePtr& v = thunk->force();
      if (const auto* i = v->as<nfm::IntVal>()) {
        row[key] = static_cast<int>(i->value);
        continue;
      }
      std::vector<int> xs;
      for (nfm::ValuePtr cell = v; !cell->as<nfm::CollVal>()->empty();) {
        const auto* c = cell->as<nfm::CollVal>();
        xs.push_back(static_cast<int>(c->head->force()->as<nfm::IntVal>()->value));
        cell = c->tail->force();
      }
      row[key] = normalize(view, xs);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string show(const std::vector<OBindings>& results) {
  std::ostringstream s;
  for (const auto& row : results) {
    s << '(';
    for (const auto& [k, v] : row) {
      s << k << '=';
      if (const int* i = std::get_if<int>(&v)) {
        s << *i;
      } else {
        s << braces(std::get<std::vector<int>>(v));
      }
      s << ' ';
    }
    s << ')';
  }
  return s.str();
}

// Poker -------------------------------------------------------------------------

std::string classify_hand(const std::vector<Card>& hand) {
  std::map<int, int> by_number;
  std::map<int, int> by_suit;
  for (const Card& c : hand) {
    ++by_number[c.number];
    ++by_suit[c.suit];
  }
  std::vector<int> counts;
  for (auto& [n, k] : by_number) counts.push_back(k);
  std::sort(counts.rbegin(), counts.rend());
  bool flush = by_suit.size() == 1;
  bool straight = by_number.size() == 5 && by_number.rbegin()->first - by_number.begin()->first == 4;
  if (straight && flush) return "<Straight-Flush>";
  if (counts[0] == 4) return "<Four-of-Kind>";
  if (counts[0] == 3 && counts[1] == 2) return "<Full-House>";
  if (flush) return "<Flush>";
  if (straight) return "<Straight>";
  if (counts[0] == 3) return "<Three-of-Kind>";
  if (counts[0] == 2 && counts[1] == 2) return "<Two-Pair>";
  if (counts[0] == 2) return "<One-Pair>";
  return "<Nothing>";
}

std::string card_expr(const Card& card) {
  static const char* suits[] = {"Spade", "Heart", "Club", "Diamond"};
  return "<Card <" + std::string(suits[card.suit]) + "> " + std::to_string(card.number) + ">";
}

std::string hand_expr(const std::vector<Card>& hand) {
  std::string out = "{";
  for (std::size_t i = 0; i < hand.size(); ++i) out += (i ? " " : "") + card_expr(hand[i]);
  return out + "}";
}

std::string poker_program() {
  std::ifstream in(std::string(NFM_CORPUS_DIR) + "/poker.nfm");
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("(poker-hands {", 0) == 0) continue;
    out += line + '\n';
  }
  return out;
}

}  // namespace testing
