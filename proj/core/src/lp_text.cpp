#include "praml/lp_text.hpp"

#include <sstream>

#include "praml/diag.hpp"

namespace praml {

namespace {

std::string terms_to_string(const std::vector<std::pair<int, Rat>>& terms) {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += " + ";
    s += to_string(terms[i].second) + " v" + std::to_string(terms[i].first);
  }
  return s;
}

std::vector<std::pair<int, Rat>> parse_terms(const std::string& text,
                                             int line_no) {
  std::vector<std::pair<int, Rat>> terms;
  std::istringstream is(text);
  std::string tok;
  std::optional<Rat> pending;
  while (is >> tok) {
    if (tok == "+") continue;
    if (tok == "0" && !pending && terms.empty() && is.eof()) return terms;
    if (tok.size() > 1 && tok[0] == 'v' && pending) {
      terms.emplace_back(std::stoi(tok.substr(1)), *pending);
      pending.reset();
      continue;
    }
    auto r = parse_rational(tok);
    if (!r || pending)
      throw Error("lp parse error", Span{line_no, 1, 0, 0},
                  "malformed term '" + tok + "'");
    pending = *r;
  }
  if (pending)
    throw Error("lp parse error", Span{line_no, 1, 0, 0}, "dangling coefficient");
  return terms;
}

}  // namespace

std::string lp_serialize(const LinearProgram& lp) {
  std::ostringstream os;
  os << "minimize: " << terms_to_string(lp.objective()) << "\n";
  os << "subject_to:\n";
  for (const auto& row : lp.rows()) {
    os << "[" << (row.tag.empty() ? "-" : row.tag) << "@" << row.span.line
       << ":" << row.span.col << "] ";
    os << terms_to_string(row.terms);
    os << (row.rel == Rel::Eq ? " = " : row.rel == Rel::Ge ? " >= " : " <= ");
    os << to_string(row.rhs) << "\n";
  }
  os << "bounds:\nall >= 0\n";
  os << "vars:\n";
  for (int v = 0; v < lp.num_vars(); ++v)
    os << "v" << v << " " << lp.var_name(v) << "\n";
  os << "end\n";
  return os.str();
}

LinearProgram lp_parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line() || line.rfind("minimize:", 0) != 0)
    throw Error("lp parse error", Span{line_no, 1, 0, 0}, "expected 'minimize:'");
  auto objective = parse_terms(line.substr(9), line_no);

  if (!next_line() || line != "subject_to:")
    throw Error("lp parse error", Span{line_no, 1, 0, 0},
                "expected 'subject_to:'");

  std::vector<Constraint> rows;
  int max_var = -1;
  while (next_line() && line != "bounds:") {
    if (line.empty() || line[0] != '[')
      throw Error("lp parse error", Span{line_no, 1, 0, 0},
                  "expected '[tag@line:col]'");
    auto close = line.find(']');
    if (close == std::string::npos)
      throw Error("lp parse error", Span{line_no, 1, 0, 0}, "missing ']'");
    std::string prov = line.substr(1, close - 1);
    Constraint row;
    auto at = prov.rfind('@');
    if (at == std::string::npos)
      throw Error("lp parse error", Span{line_no, 1, 0, 0}, "missing '@'");
    row.tag = prov.substr(0, at);
    auto colon = prov.find(':', at);
    if (colon != std::string::npos) {
      row.span.line = std::stoi(prov.substr(at + 1, colon - at - 1));
      row.span.col = std::stoi(prov.substr(colon + 1));
    }
    std::string rest = line.substr(close + 1);
    Rel rel;
    std::size_t rel_pos;
    std::size_t rel_len = 2;
    if ((rel_pos = rest.find(">=")) != std::string::npos)
      rel = Rel::Ge;
    else if ((rel_pos = rest.find("<=")) != std::string::npos)
      rel = Rel::Le;
    else if ((rel_pos = rest.find('=')) != std::string::npos) {
      rel = Rel::Eq;
      rel_len = 1;
    } else {
      throw Error("lp parse error", Span{line_no, 1, 0, 0}, "missing relation");
    }
    row.rel = rel;
    row.terms = parse_terms(rest.substr(0, rel_pos), line_no);
    auto rhs = parse_rational(
        [](std::string s) {
          auto b = s.find_first_not_of(" \t");
          auto e = s.find_last_not_of(" \t");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        }(rest.substr(rel_pos + rel_len)));
    if (!rhs)
      throw Error("lp parse error", Span{line_no, 1, 0, 0}, "malformed rhs");
    row.rhs = *rhs;
    for (const auto& [v, k] : row.terms) max_var = std::max(max_var, v);
    rows.push_back(std::move(row));
  }

  // bounds section: implicit nonnegativity only.
  while (next_line() && line != "vars:") {
  }
  std::vector<std::string> names;
  while (next_line() && line != "end") {
    auto sp = line.find(' ');
    if (line.empty() || line[0] != 'v') continue;
    int id = std::stoi(line.substr(1, sp - 1));
    if (static_cast<int>(names.size()) <= id) names.resize(id + 1);
    names[id] = sp == std::string::npos ? "" : line.substr(sp + 1);
  }
  int n = std::max<int>(max_var + 1, static_cast<int>(names.size()));
  for (const auto& t : objective)
    n = std::max(n, t.first + 1);
  names.resize(n);
  LinearProgram lp(n, std::move(names));
  for (auto& r : rows) lp.add_row(std::move(r));
  lp.set_objective(std::move(objective));
  return lp;
}

}  // namespace praml
