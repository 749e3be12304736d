#pragma once

// Line-oriented text format for constructions.
//
//   # explicit placements
//   convention corner
//   n1 2
//   level1 1
//   stage 2 : (0,0) (2,2)
//
//   # or a gallery generator
//   generator none
//   depth 4
//
//   generator all
//   depth 5
//   eps 1/2 1/4 1/8 1/16 1/32
//   alpha sqrt:2
//
// Blank lines and text after '#' are ignored. Stage indices start at 2 and
// must be consecutive.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "rankone/gallery.hpp"

namespace rankone {

/// Excluded direction tanθ = ±√r.
struct SqrtAlpha {
  Rational r;
  bool negative = false;
  Direction direction() const { return Direction::tan_sqrt(r, negative); }
  friend bool operator==(const SqrtAlpha&, const SqrtAlpha&) = default;
};

struct AllGenerator {
  std::size_t depth = 1;
  Integer n1 = 2;
  std::vector<Rational> eps;
  std::vector<SqrtAlpha> alphas;

  AllSpecParams params() const {
    AllSpecParams p;
    p.depth = depth;
    p.n1 = n1;
    p.eps_sequence = eps;
    for (const auto& a : alphas) p.alphas.push_back(a.direction());
    return p;
  }
  friend bool operator==(const AllGenerator&, const AllGenerator&) = default;
};

struct SpecFile {
  std::variant<ConstructionSpec, NoneSpecParams, AllGenerator> body;

  bool is_explicit() const { return std::holds_alternative<ConstructionSpec>(body); }
  /// Placements for the explicit form; generators are run.
  ConstructionSpec construction() const {
    if (auto* s = std::get_if<ConstructionSpec>(&body)) return *s;
    if (auto* n = std::get_if<NoneSpecParams>(&body)) return build_none(*n).spec;
    return build_all(std::get<AllGenerator>(body).params()).spec;
  }
  friend bool operator==(const SpecFile&, const SpecFile&) = default;
};

namespace detail {

inline std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  fail(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

inline LatticeVector parse_point(std::string_view s, std::size_t line) {
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') parse_fail(line, "expected (x,y), got '" + std::string(s) + "'");
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string_view::npos) parse_fail(line, "expected (x,y)");
  try {
    return {parse_integer(s.substr(0, comma)), parse_integer(s.substr(comma + 1))};
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
}

}  // namespace detail

inline SpecFile parse_spec(std::istream& in) {
  using detail::parse_fail;
  enum class Kind { unset, explicit_, none, all } kind = Kind::unset;
  ConstructionSpec spec;
  NoneSpecParams none;
  AllGenerator all;
  bool have_conv = false, have_n1 = false, have_level = false, have_depth = false;
  std::string raw;
  auto set_kind = [&](Kind k, std::size_t line) {
    if (kind != Kind::unset && kind != k) parse_fail(line, "explicit keys and generator keys cannot be mixed");
    kind = k;
  };
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    // Points may be written "( 1, 2 )"; tighten them before splitting.
    std::string tight;
    int depth = 0;
    for (char ch : raw) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth > 0 && (ch == ' ' || ch == '\t')) continue;
      if (ch == ':' && raw.find("stage") != std::string::npos) {
        tight += " : ";
        continue;
      }
      tight += ch;
    }
    const auto w = detail::words(tight);
    if (w.empty()) continue;
    const std::string& key = w[0];
    auto one = [&]() -> const std::string& {
      if (w.size() != 2) parse_fail(line, "'" + key + "' takes exactly one value");
      return w[1];
    };
    auto number = [&](const std::string& s) {
      try {
        return parse_integer(s);
      } catch (const Error& e) {
        parse_fail(line, e.what());
      }
    };
    auto rational = [&](const std::string& s) {
      try {
        return parse_rational(s);
      } catch (const Error& e) {
        parse_fail(line, e.what());
      }
    };
    if (key == "generator") {
      const std::string& g = one();
      if (kind != Kind::unset || have_n1) parse_fail(line, "'generator' must come first");
      if (g == "none") kind = Kind::none;
      else if (g == "all") kind = Kind::all;
      else parse_fail(line, "unknown generator '" + g + "'");
    } else if (key == "convention") {
      set_kind(Kind::explicit_, line);
      const std::string& c = one();
      if (c == "corner") spec.convention = Convention::Corner;
      else if (c == "centered") spec.convention = Convention::Centered;
      else parse_fail(line, "convention must be corner or centered");
      have_conv = true;
    } else if (key == "n1") {
      Integer n = number(one());
      if (n < 1) parse_fail(line, "n1 must be positive");
      if (kind == Kind::all) all.n1 = n;
      else if (kind == Kind::none) parse_fail(line, "the none generator fixes n1");
      else {
        set_kind(Kind::explicit_, line);
        spec.n1 = n;
      }
      have_n1 = true;
    } else if (key == "level1") {
      set_kind(Kind::explicit_, line);
      spec.level1_len = rational(one());
      if (spec.level1_len <= 0) parse_fail(line, "level1 must be positive");
      have_level = true;
    } else if (key == "stage") {
      set_kind(Kind::explicit_, line);
      if (w.size() < 4 || w[2] != ":") parse_fail(line, "expected 'stage k : (x,y) ...'");
      const Integer k = number(w[1]);
      if (k != Integer(spec.stages.size() + 2))
        parse_fail(line, "expected stage " + std::to_string(spec.stages.size() + 2) + ", got " + w[1]);
      StageParams st;
      for (std::size_t t = 3; t < w.size(); ++t) st.placements.push_back(detail::parse_point(w[t], line));
      spec.stages.push_back(std::move(st));
    } else if (key == "depth" || key == "cap" || key == "eps" || key == "alpha") {
      if (kind != Kind::none && kind != Kind::all) parse_fail(line, "'" + key + "' needs a generator");
      if (key == "depth") {
        Integer d = number(one());
        if (d < 1 || d > 64) parse_fail(line, "depth must lie in 1..64");
        (kind == Kind::none ? none.depth : all.depth) = d.convert_to<std::size_t>();
        have_depth = true;
      } else if (key == "cap") {
        if (kind != Kind::none) parse_fail(line, "'cap' belongs to the none generator");
        none.candidate_cap = number(one());
      } else if (key == "eps") {
        if (kind != Kind::all) parse_fail(line, "'eps' belongs to the all generator");
        if (w.size() < 2) parse_fail(line, "'eps' needs values");
        for (std::size_t t = 1; t < w.size(); ++t) {
          Rational e = rational(w[t]);
          if (e <= 0) parse_fail(line, "eps values must be positive");
          all.eps.push_back(e);
        }
      } else {
        if (kind != Kind::all) parse_fail(line, "'alpha' belongs to the all generator");
        std::string a = one();
        SqrtAlpha sa;
        if (a.starts_with("-")) {
          sa.negative = true;
          a = a.substr(1);
        }
        if (!a.starts_with("sqrt:")) parse_fail(line, "alpha must be sqrt:r or -sqrt:r");
        sa.r = rational(a.substr(5));
        Rational root;
        if (sa.r <= 0 || exact_sqrt(sa.r, root)) parse_fail(line, "alpha must be irrational");
        all.alphas.push_back(sa);
      }
    } else {
      parse_fail(line, "unknown key '" + key + "'");
    }
  }
  switch (kind) {
    case Kind::unset: fail(Errc::parse_error, "empty spec");
    case Kind::none:
      if (!have_depth) fail(Errc::parse_error, "generator none needs a depth");
      return {none};
    case Kind::all:
      if (!have_depth) fail(Errc::parse_error, "generator all needs a depth");
      if (!all.eps.empty() && all.eps.size() < all.depth)
        fail(Errc::parse_error, "eps lists fewer values than the depth");
      return {all};
    case Kind::explicit_: break;
  }
  if (!have_conv || !have_n1) fail(Errc::parse_error, "explicit spec needs convention and n1");
  (void)have_level;
  Construction{spec};  // placement checks
  return {spec};
}

inline SpecFile parse_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_spec(in);
}

inline SpecFile load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open " + path);
  return parse_spec(in);
}

inline std::string print_spec(const SpecFile& f) {
  std::ostringstream os;
  if (auto* s = std::get_if<ConstructionSpec>(&f.body)) {
    os << "convention " << convention_name(s->convention) << "\n";
    os << "n1 " << s->n1 << "\n";
    os << "level1 " << to_string(s->level1_len) << "\n";
    for (std::size_t i = 0; i < s->stages.size(); ++i) {
      os << "stage " << i + 2 << " :";
      for (const auto& p : s->stages[i].placements) os << " " << p.str();
      os << "\n";
    }
  } else if (auto* n = std::get_if<NoneSpecParams>(&f.body)) {
    os << "generator none\ndepth " << n->depth << "\n";
    if (n->candidate_cap != NoneSpecParams{}.candidate_cap) os << "cap " << n->candidate_cap << "\n";
  } else {
    const auto& a = std::get<AllGenerator>(f.body);
    os << "generator all\ndepth " << a.depth << "\n";
    if (a.n1 != 2) os << "n1 " << a.n1 << "\n";
    if (!a.eps.empty()) {
      os << "eps";
      for (const auto& e : a.eps) os << " " << to_string(e);
      os << "\n";
    }
    for (const auto& al : a.alphas) os << "alpha " << (al.negative ? "-" : "") << "sqrt:" << to_string(al.r) << "\n";
  }
  return os.str();
}

}  // namespace rankone
