#include "praml/pretty.hpp"

#include <sstream>

namespace praml {

namespace {

// 0: statement forms (let/match/if/fun/share/tick/prob/consume/flip)
// 1: comparison, 2: cons, 3: application, 4: atom
int level(const SurfaceExpr& e) {
  switch (e.kind) {
    case SurfKind::Var:
    case SurfKind::Unit:
    case SurfKind::Nil:
    case SurfKind::ListLit:
    case SurfKind::IntLit:
    case SurfKind::BoolLit:
      return 4;
    case SurfKind::App:
      return 3;
    case SurfKind::Cons:
      return 2;
    case SurfKind::Cmp:
      return 1;
    default:
      return 0;
  }
}

void pr(const SurfaceExpr& e, int min_level, std::ostream& os);

void pr_paren(const SurfaceExpr& e, int min_level, std::ostream& os) {
  if (level(e) < min_level) {
    os << "(";
    pr(e, 0, os);
    os << ")";
  } else {
    pr(e, min_level, os);
  }
}

void pr(const SurfaceExpr& e, int min_level, std::ostream& os) {
  if (level(e) < min_level) {
    pr_paren(e, min_level, os);
    return;
  }
  switch (e.kind) {
    case SurfKind::Var:
      os << e.name;
      return;
    case SurfKind::Unit:
      os << "()";
      return;
    case SurfKind::Nil:
      os << "[]";
      return;
    case SurfKind::IntLit:
      os << e.ival;
      return;
    case SurfKind::BoolLit:
      os << (e.bval ? "true" : "false");
      return;
    case SurfKind::ListLit: {
      os << "[";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) os << "; ";
        pr(*e.kids[i], 0, os);
      }
      os << "]";
      return;
    }
    case SurfKind::Cons:
      pr_paren(*e.kids[0], 3, os);
      os << "::";
      pr_paren(*e.kids[1], 2, os);
      return;
    case SurfKind::Cmp: {
      pr_paren(*e.kids[0], 2, os);
      os << (e.op == CmpOp::Lt ? " < " : e.op == CmpOp::Gt ? " > " : " = ");
      pr_paren(*e.kids[1], 2, os);
      return;
    }
    case SurfKind::App:
      pr_paren(*e.kids[0], 3, os);
      os << " ";
      pr_paren(*e.kids[1], 4, os);
      return;
    case SurfKind::Tick:
      os << "tick " << to_string(e.lit);
      return;
    case SurfKind::Prob:
      os << "prob " << to_string(e.lit);
      return;
    case SurfKind::Consume:
      os << "consume " << e.name << " : ";
      if (e.ctype.q.is_var() || e.ctype.q.value() != 0)
        os << "<" << show(*e.ctype.ty) << ", " << show(e.ctype.q) << ">";
      else
        os << show(*e.ctype.ty);
      return;
    case SurfKind::Let: {
      const SurfaceExpr& rhs = *e.kids[0];
      if (rhs.kind == SurfKind::Fun && rhs.name == e.bind1 &&
          !rhs.params.empty()) {
        os << "let rec " << e.bind1;
        for (const auto& p : rhs.params) os << " " << p;
        os << " = ";
        pr(*rhs.kids[0], 0, os);
      } else {
        os << "let " << e.bind1 << " = ";
        pr(rhs, 0, os);
      }
      os << " in ";
      pr(*e.kids[1], 0, os);
      return;
    }
    case SurfKind::Fun: {
      os << "fun " << e.name;
      for (const auto& p : e.params) os << " " << p;
      os << " = ";
      pr(*e.kids[0], 0, os);
      return;
    }
    case SurfKind::Share:
      os << "share " << e.name << " as " << e.bind1 << ", " << e.bind2
         << " in ";
      pr(*e.kids[0], 0, os);
      return;
    case SurfKind::Flip:
      os << "flip " << to_string(e.lit) << " { H -> ";
      pr(*e.kids[0], 0, os);
      os << " | T -> ";
      pr(*e.kids[1], 0, os);
      os << " }";
      return;
    case SurfKind::FlipSym:
      os << "flip " << e.name << " { H -> ";
      pr(*e.kids[0], 0, os);
      os << " | T -> ";
      pr(*e.kids[1], 0, os);
      os << " }";
      return;
    case SurfKind::MatL:
      os << "match ";
      pr_paren(*e.kids[0], 1, os);
      os << " with | [] -> ";
      pr(*e.kids[1], 0, os);
      os << " | " << e.bind1 << "::" << e.bind2 << " -> ";
      pr(*e.kids[2], 0, os);
      return;
    case SurfKind::MatB:
      os << "match ";
      pr_paren(*e.kids[0], 1, os);
      os << " with | true -> ";
      pr(*e.kids[1], 0, os);
      os << " | false -> ";
      pr(*e.kids[2], 0, os);
      return;
    case SurfKind::If:
      os << "if ";
      pr(*e.kids[0], 0, os);
      os << " then ";
      pr(*e.kids[1], 0, os);
      os << " else ";
      pr(*e.kids[2], 0, os);
      return;
  }
}

}  // namespace

std::string pretty(const SurfaceExpr& e) {
  std::ostringstream os;
  pr(e, 0, os);
  return os.str();
}

std::string pretty(const CoreExpr& e) { return pretty(*embed(e)); }

}  // namespace praml
