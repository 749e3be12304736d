// rankone: build, inspect and check rank-one ℤ² actions from spec files.
//
// Exit codes: 0 ok, 2 usage, 3 malformed input, 4 verification failed or
// certificate invalid, 5 computation error. Errors go to stderr as one JSON
// object {"error", "message", "exit"}.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <set>

#include "rankone/export.hpp"

using namespace rankone;

namespace {

enum Exit : int { ok = 0, usage = 2, malformed = 3, invalid = 4, computation = 5 };

struct CliError {
  Exit code;
  std::string kind, message;
};

int exit_for(Errc e) {
  switch (e) {
    case Errc::parse_error:
    case Errc::unsupported_format:
    case Errc::invalid_argument:
    case Errc::not_primitive:
    case Errc::overlapping_boxes:
    case Errc::missing_zero:
    case Errc::outside_shape:
      return malformed;
    case Errc::invariant_violation: return invalid;
    default: return computation;
  }
}

int report_error(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit", code}}.dump() << "\n";
  return code;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError{computation, "io_error", "cannot write " + path};
  out << text;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, path + ": " + e.what());
  }
}

/// "x,y" or "(x,y)" for rational lines, "sqrt:r" or "-sqrt:r" for tanθ = ±√r.
Direction parse_direction(std::string s) {
  if (s.starts_with("sqrt:") || s.starts_with("-sqrt:")) {
    const bool neg = s[0] == '-';
    Rational r = parse_rational(s.substr(neg ? 6 : 5));
    if (r <= 0) fail(Errc::parse_error, "radicand must be positive");
    return Direction::tan_sqrt(r, neg);
  }
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string::npos) fail(Errc::parse_error, "direction must be x,y or sqrt:r, got '" + s + "'");
  return Direction::of({parse_integer(s.substr(0, comma)), parse_integer(s.substr(comma + 1))});
}

Rect parse_rect(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  if (w.size() != 4) fail(Errc::parse_error, "rectangle must be 'x0 x1 y0 y1'");
  return {parse_rational(w[0]), parse_rational(w[1]), parse_rational(w[2]), parse_rational(w[3])};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_file(path, text);
}

std::size_t depth_or_all(const Construction& c, std::size_t depth) {
  if (depth == 0) return c.stage_count();
  if (depth > c.stage_count())
    fail(Errc::precondition, "depth " + std::to_string(depth) + " exceeds the " + std::to_string(c.stage_count()) +
                                 " stages built from the input");
  return depth;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rank-one actions: towers, recurrence reports and certificates"};
  app.require_subcommand(1);

  std::string spec_path, export_path, format = "json", set_text, theta_text, rect_text, out_path, cert_path;
  std::string csv_path, svg_path, spec_out;
  std::string eps_text = "1/10", alpha_text = "0.49";
  std::size_t depth = 0, stage = 0, max_levels = 1u << 16, oracle_i = 1, budget = 64;
  std::vector<std::string> alphas, eps_list;
  std::string cap_text, n1_text = "2";

  auto* build = app.add_subcommand("build", "materialize the stages of a spec");
  build->add_option("--spec", spec_path, "spec file")->required();
  build->add_option("--depth", depth, "number of stages to export (default: all)");
  build->add_option("--export", export_path, "output file (default: stdout)");
  build->add_option("--format", format, "json or svg");
  build->add_option("--stage", stage, "stage drawn by the svg format");
  build->add_option("--max-levels", max_levels, "omit level maps with more positions");

  auto* report = app.add_subcommand("recurrence-report", "direction windows of strong-recurrence times");
  report->add_option("--spec", spec_path, "spec file")->required();
  report->add_option("--eps", eps_text, "tunnel width")->required();
  report->add_option("--depth", depth, "stages scanned")->required();
  report->add_option("--csv", csv_path, "CSV output (default: stdout)");
  report->add_option("--svg", svg_path, "direction wheel");
  report->add_option("--json", out_path, "JSON output");
  report->add_option("--theta", theta_text, "also decide whether this direction is hit");

  auto* sweep = app.add_subcommand("sweepout", "greedy sweep-out certificate");
  sweep->add_option("--spec", spec_path, "spec file")->required();
  sweep->add_option("--set", set_text, "target set, e.g. '[0,1/2) [3,4)'")->required();
  sweep->add_option("--theta", theta_text, "direction: x,y or sqrt:r")->required();
  sweep->add_option("--eps", eps_text, "tunnel width");
  sweep->add_option("--alpha", alpha_text, "coverage fraction in (0, 1/2)");
  sweep->add_option("--depth", depth, "stage used (default: last)");
  sweep->add_option("--max-pieces", budget, "piece budget");
  sweep->add_option("--out", out_path, "certificate file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "recheck a certificate");
  verify->add_option("--cert", cert_path, "certificate JSON")->required();

  auto* oracle = app.add_subcommand("oracle-check", "overlap > 0 versus strong-recurrence table");
  oracle->add_option("--spec", spec_path, "spec file")->required();
  oracle->add_option("--i", oracle_i, "tower index i")->required();
  oracle->add_option("--depth", depth, "strong-recurrence depth")->required();
  oracle->add_option("--csv", csv_path, "full table as CSV");

  auto* susp = app.add_subcommand("suspension-check", "suspension-flow witness for A x R");
  susp->add_option("--spec", spec_path, "spec file")->required();
  susp->add_option("--set", set_text, "base set A")->required();
  susp->add_option("--rect", rect_text, "rectangle 'x0 x1 y0 y1' in the unit square")->required();
  susp->add_option("--theta", theta_text, "direction")->required();
  susp->add_option("--depth", depth, "stage searched (default: last)");

  auto* none = app.add_subcommand("none", "build the non-recurrent example with its certificate");
  none->add_option("--depth", depth, "number of extensions")->required();
  none->add_option("--cap", cap_text, "largest candidate norm");
  none->add_option("--out", out_path, "certificate file (default: stdout)");
  none->add_option("--spec-out", spec_out, "write the placements as a spec file");
  none->add_option("--svg", svg_path, "placement diagram");
  none->add_option("--stage", stage, "stage drawn (default: last certified)");

  auto* all = app.add_subcommand("all", "build the example recurrent in every rational direction");
  all->add_option("--depth", depth, "number of extensions")->required();
  all->add_option("--alpha", alphas, "excluded direction sqrt:r or -sqrt:r (repeatable)");
  all->add_option("--eps", eps_list, "eps per stage (default 2^-i)");
  all->add_option("--n1", n1_text, "initial shape parameter");
  all->add_option("--out", out_path, "certificate file (default: stdout)");
  all->add_option("--spec-out", spec_out, "write the placements as a spec file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(usage, "usage", e.what());
  }

  try {
    if (*build) {
      const SpecFile f = load_spec(spec_path);
      const Construction c(f.construction());
      const Format fmt = parse_format(format);
      if (fmt == Format::json) {
        emit(export_path, export_build(c, {depth_or_all(c, depth), max_levels}).dump(2) + "\n");
      } else if (fmt == Format::svg) {
        const std::size_t s = stage ? stage : c.stage_count() - 1;
        if (s == 0) fail(Errc::precondition, "spec has a single stage; nothing is placed");
        emit(export_path, placement_svg(c, s));
      } else {
        fail(Errc::unsupported_format, "build exports json or svg");
      }
    } else if (*report) {
      const Construction c(load_spec(spec_path).construction());
      const Rational eps = parse_rational(eps_text);
      const DirectionReport rep = direction_report(c, eps, depth);
      if (!out_path.empty()) write_file(out_path, to_json(rep).dump(2) + "\n");
      if (!svg_path.empty()) write_file(svg_path, report_svg(rep));
      emit(csv_path, report_csv(rep));
      if (!theta_text.empty()) {
        const Direction th = parse_direction(theta_text);
        std::cerr << json{{"theta", th.str()}, {"hit", rep.hit_by(th)}, {"evidence", DirectionReport::evidence}}.dump()
                  << "\n";
      }
    } else if (*sweep) {
      const SpecFile f = load_spec(spec_path);
      const Construction c(f.construction());
      const IntervalSet a = parse_interval_set(set_text);
      SweepBudget b;
      b.max_pieces = budget;
      b.depth = depth ? depth_or_all(c, depth) : 0;
      const auto cert = greedy_sweepout(c, a, parse_direction(theta_text), parse_rational(eps_text),
                                        parse_rational(alpha_text), b);
      emit(out_path, to_json(cert, c.spec()).dump(2) + "\n");
      if (!cert.complete) {
        return report_error(computation, "budget_exhausted",
                            "sweep-out reached " + to_string(cert.achieved()) + " of the target, needs more than " +
                                to_string(cert.alpha));
      }
    } else if (*verify) {
      const json doc = read_json(cert_path);
      VerifyResult r;
      try {
        r = verify_document(doc);
      } catch (const Error& e) {
        if (e.code() == Errc::parse_error || e.code() == Errc::unsupported_format) throw;
        r = {false, "", std::string(errc_name(e.code())) + ": " + e.what()};
      }
      std::cout << json{{"valid", r.ok}, {"schema", r.schema}, {"reason", r.reason}}.dump() << "\n";
      if (!r.ok) return report_error(invalid, "certificate_invalid", r.reason);
    } else if (*oracle) {
      const Construction c(load_spec(spec_path).construction());
      const std::size_t top = oracle_i + depth;
      if (oracle_i < 1 || top > c.stage_count())
        fail(Errc::precondition, "need 1 <= i and i + depth <= " + std::to_string(c.stage_count()));
      const auto sr = c.strong_recurrence(oracle_i, depth);
      const Box shape = c.stage(top).shape;
      const long long r = (shape.side() - 1).convert_to<long long>();
      if ((2 * r + 1) * (2 * r + 1) > 4'000'000) fail(Errc::budget_exhausted, "difference range too large for the table");
      const Box lv = c.stage(oracle_i).shape;
      std::vector<IntervalSet> levels;
      for (Integer y = lv.lo().y; y <= lv.hi().y; ++y)
        for (Integer x = lv.lo().x; x <= lv.hi().x; ++x) levels.push_back(IntervalSet{c.level_interval(oracle_i, {x, y})});
      std::ostringstream table;
      table << "u_x,u_y,member,levels_returning,levels,agree\n";
      json rows = json::array();
      std::size_t mismatches = 0, checked = 0;
      for (long long y = -r; y <= r; ++y)
        for (long long x = -r; x <= r; ++x) {
          const LatticeVector u{x, y};
          if (u.is_zero()) continue;
          const bool member = sr.contains(u);
          std::size_t returning = 0;
          for (const auto& a : levels)
            if (overlap(c, u, a, a, top) > 0) ++returning;
          // Exactly the members return, and every level returns under them.
          const bool agree = member ? returning == levels.size() : returning == 0;
          if (!agree) ++mismatches;
          ++checked;
          table << x << "," << y << "," << member << "," << returning << "," << levels.size() << "," << agree << "\n";
          if (member || returning > 0)
            rows.push_back({{"u", to_json(u)}, {"member", member}, {"levels_returning", returning}, {"agree", agree}});
        }
      if (!csv_path.empty()) write_file(csv_path, table.str());
      std::cout << json{{"schema", "rankone.oracle/1"}, {"i", oracle_i}, {"depth", depth}, {"stage", top},
                        {"vectors_checked", checked}, {"levels", levels.size()}, {"mismatches", mismatches},
                        {"returning", rows}}
                       .dump(2)
                << "\n";
      if (mismatches) return report_error(invalid, "oracle_mismatch", std::to_string(mismatches) + " vectors disagree");
    } else if (*susp) {
      const Construction c(load_spec(spec_path).construction());
      const auto w = suspension_witness(c, parse_interval_set(set_text), parse_rect(rect_text),
                                        parse_direction(theta_text), depth_or_all(c, depth));
      if (!w) {
        std::cout << json{{"schema", "rankone.suspension/1"}, {"found", false}, {"evidence", "depth-bounded"}}.dump(2)
                  << "\n";
      } else {
        std::cout << to_json(*w).dump(2) << "\n";
        if (w->overlap < w->bound) return report_error(invalid, "bound_violated", "product overlap below the bound");
      }
    } else if (*none) {
      NoneSpecParams p;
      p.depth = depth;
      if (!cap_text.empty()) p.candidate_cap = parse_integer(cap_text);
      const NoneBuild b = build_none(p);
      emit(out_path, to_json(b).dump(2) + "\n");
      if (!spec_out.empty()) write_file(spec_out, print_spec({b.spec}));
      if (!svg_path.empty()) {
        const Construction c(b.spec);
        write_file(svg_path, placement_svg(c, stage ? stage : std::max<std::size_t>(depth, 2)));
      }
    } else if (*all) {
      AllGenerator g;
      g.depth = depth;
      g.n1 = parse_integer(n1_text);
      for (const auto& e : eps_list) g.eps.push_back(parse_rational(e));
      for (const auto& a : alphas) {
        const bool neg = a.starts_with("-");
        const std::string body = a.substr(neg ? 1 : 0);
        if (!body.starts_with("sqrt:")) fail(Errc::parse_error, "alpha must be sqrt:r or -sqrt:r");
        g.alphas.push_back({parse_rational(body.substr(5)), neg});
      }
      const AllBuild b = build_all(g.params());
      emit(out_path, to_json(b, g).dump(2) + "\n");
      if (!spec_out.empty()) write_file(spec_out, print_spec({b.spec}));
    }
  } catch (const CliError& e) {
    return report_error(e.code, e.kind, e.message);
  } catch (const Error& e) {
    return report_error(exit_for(e.code()), std::string(errc_name(e.code())), e.what());
  } catch (const std::exception& e) {
    return report_error(computation, "internal", e.what());
  }
  return ok;
}
