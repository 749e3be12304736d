#pragma once

// JSON, CSV and SVG documents for constructions, certificates and reports.
// Every rational is written as a "p/q" string and integers as decimal
// strings. SVG coordinates are rounded and only meant for viewing.

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "rankone/gallery.hpp"
#include "rankone/none_conditions.hpp"
#include "rankone/report.hpp"
#include "rankone/spec_file.hpp"
#include "rankone/suspension.hpp"
#include "rankone/sweepout.hpp"

namespace rankone {

using json = nlohmann::json;

enum class Format { json, csv, svg };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "svg") return Format::svg;
  fail(Errc::unsupported_format, "unsupported format '" + s + "'");
}

// ---------------------------------------------------------------------------
// scalars

inline json to_json(const Rational& q) { return to_fraction(q); }
inline json to_json(const Integer& n) { return n.str(); }
inline json to_json(const LatticeVector& v) { return json::array({v.x.str(), v.y.str()}); }
inline json to_json(const PlanePoint& p) { return json::array({to_fraction(p.x), to_fraction(p.y)}); }
inline json to_json(const Bracket& b) { return json::array({to_fraction(b.lo), to_fraction(b.hi)}); }
inline json to_json(const RationalInterval& iv) { return json::array({to_fraction(iv.lo), to_fraction(iv.hi)}); }
inline json to_json(const IntervalSet& s) {
  json a = json::array();
  for (const auto& iv : s.intervals()) a.push_back(to_json(iv));
  return a;
}
inline json to_json(const Rect& r) { return json::array({to_fraction(r.x0), to_fraction(r.x1), to_fraction(r.y0), to_fraction(r.y1)}); }

inline json to_json(const Direction& d) {
  if (d.is_rational()) return {{"kind", "rational"}, {"vector", to_json(d.vector())}};
  const auto& e = d.enclosed();
  return {{"kind", "surd"},
          {"tan", json::array({to_fraction(e.tan.a()), to_fraction(e.tan.b()), to_fraction(e.tan.d())})},
          {"obtuse", e.obtuse}};
}

namespace detail {

[[noreturn]] inline void bad_doc(const std::string& what) { fail(Errc::parse_error, "malformed document: " + what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad_doc(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::string str_of(const json& j, const char* what) {
  if (!j.is_string()) bad_doc(std::string(what) + " must be a string");
  return j.get<std::string>();
}

inline std::size_t size_of(const json& j, const char* what) {
  if (!j.is_number_unsigned()) bad_doc(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline const json& array_of(const json& j, const char* what) {
  if (!j.is_array()) bad_doc(std::string(what) + " must be an array");
  return j;
}

}  // namespace detail

inline Rational rational_from_json(const json& j) { return parse_rational(detail::str_of(j, "rational")); }
inline Integer integer_from_json(const json& j) { return parse_integer(detail::str_of(j, "integer")); }

inline LatticeVector vector_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) detail::bad_doc("vector must be [x, y]");
  return {integer_from_json(j[0]), integer_from_json(j[1])};
}

inline IntervalSet set_from_json(const json& j) {
  std::vector<RationalInterval> ivs;
  for (const auto& iv : detail::array_of(j, "set")) {
    if (!iv.is_array() || iv.size() != 2) detail::bad_doc("interval must be [lo, hi]");
    RationalInterval r{rational_from_json(iv[0]), rational_from_json(iv[1])};
    if (r.empty()) detail::bad_doc("empty interval " + r.str());
    ivs.push_back(r);
  }
  return IntervalSet::from_unsorted(std::move(ivs));
}

inline Direction direction_from_json(const json& j) {
  const std::string kind = detail::str_of(detail::field(j, "kind"), "kind");
  if (kind == "rational") return Direction::of(vector_from_json(detail::field(j, "vector")));
  if (kind != "surd") detail::bad_doc("unknown direction kind '" + kind + "'");
  const json& t = detail::field(j, "tan");
  if (!t.is_array() || t.size() != 3) detail::bad_doc("tan must be [a, b, d]");
  const json& ob = detail::field(j, "obtuse");
  if (!ob.is_boolean()) detail::bad_doc("obtuse must be a boolean");
  return Direction::from_tan(QuadraticSurd(rational_from_json(t[0]), rational_from_json(t[1]), rational_from_json(t[2])),
                             ob.get<bool>());
}

// ---------------------------------------------------------------------------
// specs and constructions

inline json to_json(const ConstructionSpec& s) {
  json stages = json::array();
  for (const auto& st : s.stages) {
    json pl = json::array();
    for (const auto& p : st.placements) pl.push_back(to_json(p));
    stages.push_back(pl);
  }
  return {{"convention", std::string(convention_name(s.convention))},
          {"n1", s.n1.str()},
          {"level1", to_fraction(s.level1_len)},
          {"placements", stages}};
}

inline ConstructionSpec spec_from_json(const json& j) {
  ConstructionSpec s;
  const std::string conv = detail::str_of(detail::field(j, "convention"), "convention");
  if (conv == "corner") s.convention = Convention::Corner;
  else if (conv == "centered") s.convention = Convention::Centered;
  else detail::bad_doc("unknown convention '" + conv + "'");
  s.n1 = integer_from_json(detail::field(j, "n1"));
  s.level1_len = rational_from_json(detail::field(j, "level1"));
  for (const auto& st : detail::array_of(detail::field(j, "placements"), "placements")) {
    StageParams p;
    for (const auto& v : detail::array_of(st, "stage placements")) p.placements.push_back(vector_from_json(v));
    s.stages.push_back(std::move(p));
  }
  return s;
}

struct BuildExportOptions {
  std::size_t depth = 0;               // stages to export; 0 means all
  std::size_t max_levels = 1u << 16;   // level maps larger than this are omitted
  std::size_t max_vectors = 1u << 16;  // same for strong-recurrence sets
};

/// Schema "rankone.build/1".
inline json export_build(const Construction& c, const BuildExportOptions& opt = {}) {
  const std::size_t depth = opt.depth ? std::min(opt.depth, c.stage_count()) : c.stage_count();
  json stages = json::array();
  for (std::size_t i = 1; i <= depth; ++i) {
    const TowerStage& st = c.stage(i);
    json s{{"index", i},
           {"n", st.shape.n.str()},
           {"side", st.shape.side().str()},
           {"level_length", to_fraction(st.level_len)},
           {"level_count", st.shape.count().str()},
           {"spacers", st.spacer_count.str()},
           {"measure", to_fraction(st.measure())},
           {"sup", to_fraction(st.sup)}};
    json pl = json::array();
    for (const auto& p : st.placements) pl.push_back(to_json(p));
    s["placements"] = pl;
    if (st.shape.count() <= opt.max_levels) {
      json levels = json::array();
      const LatticeVector lo = st.shape.lo(), hi = st.shape.hi();
      for (Integer y = lo.y; y <= hi.y; ++y)
        for (Integer x = lo.x; x <= hi.x; ++x) {
          const LatticeVector p{x, y};
          const auto iv = c.level_interval(i, p);
          levels.push_back({{"position", to_json(p)},
                            {"lo", to_fraction(iv.lo)},
                            {"hi", to_fraction(iv.hi)},
                            {"spacer", c.is_spacer(i, p)}});
        }
      s["levels"] = levels;
    } else {
      s["levels"] = nullptr;
      s["levels_omitted"] = true;
    }
    stages.push_back(s);
  }
  json sr = json::array();
  for (std::size_t i = 1; i < depth; ++i) {
    const auto set = c.strong_recurrence(i, depth - i);
    json e{{"stage", i}, {"depth", depth - i}, {"count", set.vectors.size()}};
    if (set.vectors.size() <= opt.max_vectors) {
      json vs = json::array();
      for (const auto& v : set.vectors) vs.push_back(to_json(v));
      e["vectors"] = vs;
    } else {
      e["vectors"] = nullptr;
      e["vectors_omitted"] = true;
    }
    sr.push_back(e);
  }
  return {{"schema", "rankone.build/1"}, {"spec", to_json(c.spec())}, {"stages", stages}, {"strong_recurrence", sr}};
}

// ---------------------------------------------------------------------------
// certificates

inline json to_json(const SweepOutCertificate& cert, const ConstructionSpec& spec) {
  json pieces = json::array();
  for (const auto& p : cert.pieces)
    pieces.push_back({{"set", to_json(p.set)}, {"v", to_json(p.v)}, {"stage", p.stage}, {"image", to_json(p.image)}});
  return {{"schema", "rankone.sweepout/1"},
          {"spec", to_json(spec)},
          {"target", to_json(cert.target)},
          {"theta", to_json(cert.theta)},
          {"alpha", to_fraction(cert.alpha)},
          {"epsilon", to_fraction(cert.epsilon)},
          {"complete", cert.complete},
          {"covered", to_fraction(cert.covered())},
          {"pieces", pieces}};
}

inline SweepOutCertificate sweepout_from_json(const json& j) {
  using detail::field;
  SweepOutCertificate c;
  c.target = set_from_json(field(j, "target"));
  c.theta = direction_from_json(field(j, "theta"));
  c.alpha = rational_from_json(field(j, "alpha"));
  c.epsilon = rational_from_json(field(j, "epsilon"));
  const json& comp = field(j, "complete");
  if (!comp.is_boolean()) detail::bad_doc("complete must be a boolean");
  c.complete = comp.get<bool>();
  for (const auto& p : detail::array_of(field(j, "pieces"), "pieces"))
    c.pieces.push_back({set_from_json(field(p, "set")), vector_from_json(field(p, "v")), detail::size_of(field(p, "stage"), "stage"),
                        set_from_json(field(p, "image"))});
  return c;
}

inline json to_json(const NoneStageRecord& r) {
  return {{"stage", r.stage},       {"chosen", to_json(r.chosen)}, {"m_star", to_fraction(r.m_star)},
          {"v_star", to_json(r.v_star)}, {"n", r.n.str()},           {"grows", r.grows},
          {"halves_slope", r.halves_slope}, {"below", r.below},     {"clear", r.clear},
          {"violation", r.violation}};
}

inline json to_json(const NoneBuild& b) {
  json stages = json::array();
  for (const auto& r : b.certificate.stages) stages.push_back(to_json(r));
  return {{"schema", "rankone.none/1"},
          {"params", {{"depth", b.spec.stages.size()}}},
          {"spec", to_json(b.spec)},
          {"passed", b.certificate.passed()},
          {"stages", stages}};
}

inline json to_json(const ExclusionRecord& r) {
  return {{"stage", r.stage}, {"alpha_index", r.alpha_index}, {"w", to_json(r.w)},   {"eps", to_fraction(r.eps)},
          {"lo", to_json(r.lo)}, {"hi", to_json(r.hi)},        {"alpha", to_json(r.alpha)}, {"gap", to_fraction(r.gap)},
          {"bits", r.bits}};
}

inline json to_json(const AllBuild& b, const AllGenerator& g) {
  json eps = json::array(), alphas = json::array(), choices = json::array(), audit = json::array();
  for (const auto& e : g.eps) eps.push_back(to_fraction(e));
  for (const auto& a : g.alphas) alphas.push_back({{"r", to_fraction(a.r)}, {"negative", a.negative}});
  for (const auto& c : b.choices)
    choices.push_back({{"stage", c.stage}, {"u", to_json(c.u)}, {"t", c.t.str()}, {"eps", to_fraction(c.eps)}});
  for (const auto& r : b.audit) audit.push_back(to_json(r));
  return {{"schema", "rankone.all/1"},
          {"params", {{"depth", g.depth}, {"n1", g.n1.str()}, {"eps", eps}, {"alphas", alphas}}},
          {"spec", to_json(b.spec)},
          {"choices", choices},
          {"audit", audit}};
}

inline AllGenerator all_generator_from_json(const json& j) {
  using detail::field;
  AllGenerator g;
  g.depth = detail::size_of(field(j, "depth"), "depth");
  g.n1 = integer_from_json(field(j, "n1"));
  for (const auto& e : detail::array_of(field(j, "eps"), "eps")) g.eps.push_back(rational_from_json(e));
  for (const auto& a : detail::array_of(field(j, "alphas"), "alphas")) {
    const json& neg = field(a, "negative");
    if (!neg.is_boolean()) detail::bad_doc("negative must be a boolean");
    g.alphas.push_back({rational_from_json(field(a, "r")), neg.get<bool>()});
  }
  return g;
}

inline json to_json(const SuspensionWitness& w) {
  return {{"schema", "rankone.suspension/1"},
          {"found", true},
          {"anchor", to_json(w.anchor)},
          {"displacement", to_json(w.displacement)},
          {"on_line_exact", w.on_line_exact},
          {"discrepancy2", to_fraction(w.discrepancy2)},
          {"stage", w.stage},
          {"eps", to_fraction(w.eps)},
          {"shrunk", to_json(w.shrunk)},
          {"core", to_json(w.core)},
          {"overlap", to_fraction(w.overlap)},
          {"bound", to_fraction(w.bound)},
          {"holds", w.overlap >= w.bound}};
}

// ---------------------------------------------------------------------------
// certificate checking for `verify`

struct VerifyResult {
  bool ok = true;
  std::string schema;
  std::string reason;
};

namespace detail {

inline bool same_record(const json& stored, const NoneStageRecord& r) { return stored == to_json(r); }

inline VerifyResult verify_none_doc(const json& j) {
  const ConstructionSpec spec = spec_from_json(field(j, "spec"));
  const Construction c(spec);
  const std::size_t depth = spec.stages.size();
  const NoneCertificate cert = verify_none_conditions(c, depth);
  const json& stages = array_of(field(j, "stages"), "stages");
  if (stages.size() != cert.stages.size())
    return {false, "rankone.none/1", "certificate lists " + std::to_string(stages.size()) + " stages, expected " +
                                         std::to_string(cert.stages.size())};
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (!same_record(stages[k], cert.stages[k]))
      return {false, "rankone.none/1", "stage " + std::to_string(cert.stages[k].stage) + " record differs from recomputation"};
    if (!cert.stages[k].ok())
      return {false, "rankone.none/1", "stage " + std::to_string(cert.stages[k].stage) + ": " + cert.stages[k].violation};
  }
  return {true, "rankone.none/1", ""};
}

inline VerifyResult verify_all_doc(const json& j) {
  const AllGenerator g = all_generator_from_json(field(j, "params"));
  const AllBuild b = build_all(g.params());
  if (!(spec_from_json(field(j, "spec")) == b.spec)) return {false, "rankone.all/1", "placements differ from a rebuild"};
  json choices = json::array();
  for (const auto& c : b.choices)
    choices.push_back({{"stage", c.stage}, {"u", to_json(c.u)}, {"t", c.t.str()}, {"eps", to_fraction(c.eps)}});
  if (field(j, "choices") != choices) return {false, "rankone.all/1", "stage choices differ from a rebuild"};
  const json& audit = array_of(field(j, "audit"), "audit");
  if (audit.size() != b.audit.size()) return {false, "rankone.all/1", "audit length differs"};
  // Independent re-check of each stored separation at its stored precision.
  for (std::size_t k = 0; k < audit.size(); ++k) {
    const json& r = audit[k];
    const std::size_t ai = size_of(field(r, "alpha_index"), "alpha_index");
    if (ai >= g.alphas.size()) return {false, "rankone.all/1", "alpha index out of range"};
    const LatticeVector w = vector_from_json(field(r, "w"));
    const Rational eps = rational_from_json(field(r, "eps"));
    const unsigned bits = static_cast<unsigned>(size_of(field(r, "bits"), "bits"));
    const std::string at = "audit record " + std::to_string(k) + ": ";
    const DirectionWindow win = direction_window(w, eps);
    auto lo = win.arc.lo.bracket(bits), hi = win.arc.hi.bracket(bits), a = g.alphas[ai].direction().coord().bracket(bits);
    if (!lo || !hi || !a) return {false, "rankone.all/1", at + "enclosure undefined"};
    if (field(r, "lo") != to_json(*lo) || field(r, "hi") != to_json(*hi) || field(r, "alpha") != to_json(*a))
      return {false, "rankone.all/1", at + "enclosures differ"};
    const bool plain = lo->hi < hi->lo;
    Rational gap = 0;
    if (plain) {
      if (a->hi < lo->lo) gap = lo->lo - a->hi;
      else if (a->lo > hi->hi) gap = a->lo - hi->hi;
    } else if (hi->hi < a->lo && a->hi < lo->lo) {
      gap = std::min(a->lo - hi->hi, lo->lo - a->hi);
    }
    if (!(gap > 0) || rational_from_json(field(r, "gap")) != gap)
      return {false, "rankone.all/1", at + "no strict separation"};
  }
  return {true, "rankone.all/1", ""};
}

inline VerifyResult verify_sweepout_doc(const json& j) {
  const Construction c(spec_from_json(field(j, "spec")));
  const SweepOutCertificate cert = sweepout_from_json(j);
  if (!cert.complete) return {false, "rankone.sweepout/1", "certificate marked incomplete"};
  for (const auto& p : cert.pieces)
    if (p.stage < 1 || p.stage > c.stage_count()) return {false, "rankone.sweepout/1", "stage out of range"};
  auto chk = verify_sweepout(c, cert, cert.target);
  if (!chk.ok) return {false, "rankone.sweepout/1", chk.reason + (chk.detail.empty() ? "" : ": " + chk.detail)};
  return {true, "rankone.sweepout/1", ""};
}

}  // namespace detail

/// Recomputes every claim of a certificate document. Malformed documents
/// throw parse_error; well-formed but wrong ones return ok = false.
inline VerifyResult verify_document(const json& j) {
  const std::string schema = detail::str_of(detail::field(j, "schema"), "schema");
  if (schema == "rankone.sweepout/1") return detail::verify_sweepout_doc(j);
  if (schema == "rankone.none/1") return detail::verify_none_doc(j);
  if (schema == "rankone.all/1") return detail::verify_all_doc(j);
  fail(Errc::unsupported_format, "no verifier for schema '" + schema + "'");
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const DirectionReport& rep, unsigned bits = 64) {
  json hits = json::array();
  for (const auto& h : rep.hits) {
    json e{{"w", to_json(h.w)}, {"stage", h.stage}, {"covers_all", h.covers_all}};
    if (h.window) {
      e["lo"] = to_json(*h.window->arc.lo.bracket(bits));
      e["hi"] = to_json(*h.window->arc.hi.bracket(bits));
    }
    hits.push_back(e);
  }
  return {{"schema", "rankone.report/1"}, {"epsilon", to_fraction(rep.epsilon)}, {"depth", rep.depth},
          {"evidence", DirectionReport::evidence}, {"bits", bits}, {"hits", hits}};
}

/// One row per window: pseudo-angle enclosures of both ends, the time w and
/// the stage it first appears. Pseudo-angle σ ∈ [0, 2) orders directions.
inline std::string report_csv(const DirectionReport& rep, unsigned bits = 64) {
  std::ostringstream os;
  os << "w_x,w_y,stage,covers_all,lo_lower_num,lo_lower_den,lo_upper_num,lo_upper_den,"
        "hi_lower_num,hi_lower_den,hi_upper_num,hi_upper_den\n";
  auto frac = [&](const Rational& q) { os << "," << num(q) << "," << den(q); };
  for (const auto& h : rep.hits) {
    os << h.w.x << "," << h.w.y << "," << h.stage << "," << (h.covers_all ? 1 : 0);
    if (h.window) {
      const Bracket lo = *h.window->arc.lo.bracket(bits), hi = *h.window->arc.hi.bracket(bits);
      frac(lo.lo);
      frac(lo.hi);
      frac(hi.lo);
      frac(hi.hi);
    } else {
      os << ",0,1,0,1,2,1,2,1";
    }
    os << "\n";
  }
  return os.str();
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Angle in [0, π) of the pseudo-angle value, for display.
inline double pseudo_to_angle(double s) {
  double x = 1 - s, y = s <= 1 ? s : 2 - s;
  return std::atan2(y, x);
}

}  // namespace detail

/// Unit half-circle of directions with every hit window shaded. Directions
/// are lines, so θ and θ + π are drawn at the same point of the upper arc.
inline std::string report_svg(const DirectionReport& rep) {
  using detail::fmt;
  const double r = 200, cx = 220, cy = 230;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"260\" viewBox=\"0 0 440 260\">\n";
  os << "<title>hit windows, eps " << to_string(rep.epsilon) << ", depth " << rep.depth << "</title>\n";
  os << "<path d=\"M " << fmt(cx - r) << " " << fmt(cy) << " A " << fmt(r) << " " << fmt(r) << " 0 0 1 " << fmt(cx + r)
     << " " << fmt(cy) << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto pt = [&](double a) { return fmt(cx + r * std::cos(a)) + " " + fmt(cy - r * std::sin(a)); };
  for (const auto& h : rep.hits) {
    if (h.covers_all) {
      os << "<path d=\"M " << fmt(cx - r) << " " << fmt(cy) << " A " << fmt(r) << " " << fmt(r) << " 0 0 1 "
         << fmt(cx + r) << " " << fmt(cy) << " Z\" fill=\"steelblue\" fill-opacity=\"0.3\"/>\n";
      continue;
    }
    double a0 = detail::pseudo_to_angle(h.window->arc.lo.approx());
    double a1 = detail::pseudo_to_angle(h.window->arc.hi.approx());
    auto sector = [&](double from, double to) {
      os << "<path d=\"M " << fmt(cx) << " " << fmt(cy) << " L " << pt(from) << " A " << fmt(r) << " " << fmt(r)
         << " 0 " << (to - from > M_PI ? 1 : 0) << " 0 " << pt(to) << " Z\" fill=\"steelblue\" fill-opacity=\"0.3\">"
         << "<title>w=" << h.w.str() << " stage " << h.stage << "</title></path>\n";
    };
    if (a1 >= a0) {
      sector(a0, a1);
    } else {  // wraps through the horizontal direction
      sector(a0, M_PI);
      sector(0, a1);
    }
  }
  os << "</svg>\n";
  return os.str();
}

/// Boxes B_n and k·v + B_n of stage i + 1 and the tunnels B_n + ℝw of the
/// upper strong-recurrence times w of τ₁ inside τ_i.
inline std::string placement_svg(const Construction& c, std::size_t i) {
  using detail::fmt;
  if (i + 1 > c.stage_count())
    fail(Errc::precondition, "placement diagram of stage " + std::to_string(i) + " needs stage " + std::to_string(i + 1));
  const Box box = c.stage(i).shape;
  const auto& pl = c.stage(i + 1).placements;
  // View: the bounding box of all placed copies with a margin.
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool first = true;
  for (const auto& p : pl) {
    const Box b = box.translated(p);
    const double bx0 = b.lo().x.convert_to<double>(), by0 = b.lo().y.convert_to<double>();
    const double bx1 = b.hi().x.convert_to<double>() + 1, by1 = b.hi().y.convert_to<double>() + 1;
    x0 = first ? bx0 : std::min(x0, bx0);
    y0 = first ? by0 : std::min(y0, by0);
    x1 = first ? bx1 : std::max(x1, bx1);
    y1 = first ? by1 : std::max(y1, by1);
    first = false;
  }
  const double span = std::max(x1 - x0, y1 - y0), margin = 0.05 * span;
  x0 -= margin;
  y0 -= margin;
  x1 += margin;
  y1 += margin;
  const double size = 600, scale = size / std::max(x1 - x0, y1 - y0);
  auto sx = [&](double x) { return fmt((x - x0) * scale); };
  auto sy = [&](double y) { return fmt((y1 - y) * scale); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << " " << size << "\">\n";
  os << "<title>stage " << i + 1 << " placements of the stage " << i << " shape</title>\n";
  os << "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size
     << "\"/></clipPath></defs>\n<g clip-path=\"url(#view)\">\n";
  std::vector<LatticeVector> times;
  if (i >= 2) times = upper_times(c, i);
  const double bx0 = box.lo().x.convert_to<double>(), by0 = box.lo().y.convert_to<double>();
  const double bx1 = box.hi().x.convert_to<double>() + 1, by1 = box.hi().y.convert_to<double>() + 1;
  const double far = 4 * (x1 - x0 + y1 - y0);
  for (const auto& w : times) {
    const double wx = w.x.convert_to<double>(), wy = w.y.convert_to<double>(), wn = std::hypot(wx, wy);
    const double ux = wx / wn, uy = wy / wn;
    // Extreme corners across the line direction bound the strip.
    double cmin = 0, cmax = 0, pxmin = 0, pymin = 0, pxmax = 0, pymax = 0;
    bool f = true;
    for (double px : {bx0, bx1})
      for (double py : {by0, by1}) {
        const double cr = ux * py - uy * px;
        if (f || cr < cmin) cmin = cr, pxmin = px, pymin = py;
        if (f || cr > cmax) cmax = cr, pxmax = px, pymax = py;
        f = false;
      }
    os << "<polygon points=\"" << sx(pxmin - far * ux) << "," << sy(pymin - far * uy) << " " << sx(pxmin + far * ux)
       << "," << sy(pymin + far * uy) << " " << sx(pxmax + far * ux) << "," << sy(pymax + far * uy) << " "
       << sx(pxmax - far * ux) << "," << sy(pymax - far * uy)
       << "\" fill=\"orange\" fill-opacity=\"0.15\" stroke=\"orange\" stroke-width=\"0.5\"><title>tunnel of " << w.str()
       << "</title></polygon>\n";
  }
  for (const auto& p : pl) {
    const Box b = box.translated(p);
    const double lx = b.lo().x.convert_to<double>(), ly = b.lo().y.convert_to<double>();
    os << "<rect x=\"" << sx(lx) << "\" y=\"" << sy(ly + b.side().convert_to<double>()) << "\" width=\""
       << fmt(b.side().convert_to<double>() * scale) << "\" height=\"" << fmt(b.side().convert_to<double>() * scale)
       << "\" fill=\"steelblue\" fill-opacity=\"0.5\" stroke=\"black\"><title>copy at " << p.str() << "</title></rect>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace rankone
