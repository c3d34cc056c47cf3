#include "praml/parser.hpp"

#include "praml/lexer.hpp"

namespace praml {

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SurfPtr program() {
    auto e = expr();
    expect(Tok::Eof, "end of input");
    return e;
  }

  PotAnn anntype_only() {
    auto t = pot_ann();
    expect(Tok::Eof, "end of type");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  Token take() { return toks_[i_++]; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) throw ParseError(cur().span, "expected " + what);
    return take();
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(cur().span, msg);
  }

  // ---- rationals ----------------------------------------------------

  Rat rational_lit() {
    bool neg = false;
    if (at(Tok::Minus)) {
      take();
      neg = true;
    }
    if (!at(Tok::IntLit) && !at(Tok::RatLit)) fail("expected a number");
    Rat v = take().value;
    return neg ? Rat(-v) : v;
  }

  Rat prob_lit() {
    Span sp = cur().span;
    Rat v = rational_lit();
    if (!in_unit_interval(v))
      throw ParseError(sp, "probability out of range");
    return v;
  }

  // ---- annotated-type literals ---------------------------------------

  Anno anno_lit() {
    Span sp = cur().span;
    Rat v = rational_lit();
    if (sgn(v) < 0) throw ParseError(sp, "negative annotation");
    return Anno(v);
  }

  AnnTypePtr ann_ty() {
    if (at(Tok::KwProb)) {
      take();
      expect(Tok::LBrace, "'{'");
      Anno qh = anno_lit();
      expect(Tok::RBrace, "'}'");
      expect(Tok::LBrace, "'{'");
      Anno qt = anno_lit();
      expect(Tok::RBrace, "'}'");
      return AnnType::prob(qh, qt);
    }
    if (at(Tok::Ident)) {
      std::string w = cur().text;
      if (w == "unit") {
        take();
        return AnnType::unit();
      }
      if (w == "int") {
        take();
        return AnnType::tint();
      }
      if (w == "bool") {
        take();
        return AnnType::tbool();
      }
      if (w == "L") {
        take();
        expect(Tok::Caret, "'^'");
        Anno q = anno_lit();
        expect(Tok::LParen, "'('");
        auto elem = ann_ty();
        expect(Tok::RParen, "')'");
        return AnnType::list(elem, q);
      }
    }
    fail("expected a type");
  }

  PotAnn pot_ann() {
    if (at(Tok::Less)) {
      take();
      auto ty = ann_ty();
      expect(Tok::Comma, "','");
      Anno q = anno_lit();
      expect(Tok::Greater, "'>'");
      return {ty, q};
    }
    return {ann_ty(), Anno(Rat(0))};
  }

  // ---- expressions ----------------------------------------------------

  std::string pattern_name() {
    if (at(Tok::Ident)) return take().text;
    if (at(Tok::LParen) && peek().kind == Tok::RParen) {
      take();
      take();
      return "_";
    }
    fail("expected a binder");
  }

  SurfPtr expr() {
    switch (cur().kind) {
      case Tok::KwLet:
        return let_expr();
      case Tok::KwMatch:
      case Tok::KwCase:
        return match_expr();
      case Tok::KwIf:
        return if_expr();
      case Tok::KwFun:
        return fun_expr();
      case Tok::KwShare:
        return share_expr();
      case Tok::KwTick: {
        Span sp = take().span;
        Span lit_sp = cur().span;
        Rat q = rational_lit();
        if (sgn(q) < 0) throw ParseError(lit_sp, "negative tick rejected");
        auto e = make_surface(SurfKind::Tick, sp);
        e->lit = q;
        return e;
      }
      case Tok::KwProb: {
        Span sp = take().span;
        auto e = make_surface(SurfKind::Prob, sp);
        e->lit = prob_lit();
        return e;
      }
      case Tok::KwConsume: {
        Span sp = take().span;
        auto e = make_surface(SurfKind::Consume, sp);
        e->name = expect(Tok::Ident, "a variable").text;
        expect(Tok::Colon, "':'");
        e->ctype = pot_ann();
        return e;
      }
      case Tok::KwFlip:
        return flip_expr(take().span);
      default:
        return cmp_expr();
    }
  }

  SurfPtr let_expr() {
    Span sp = expect(Tok::KwLet, "'let'").span;
    if (at(Tok::KwRec)) {
      take();
      std::string f = expect(Tok::Ident, "a function name").text;
      auto fn = fun_tail(sp, f);
      expect(Tok::KwIn, "'in'");
      auto body = expr();
      auto let = make_surface(SurfKind::Let, sp);
      let->bind1 = f;
      let->kids.push_back(std::move(fn));
      let->kids.push_back(std::move(body));
      return let;
    }
    std::string name = pattern_name();
    if (!at(Tok::Equal) && name != "_") {
      // `let f x .. = e`: function-definition sugar; the name is bound
      // recursively, like `let rec`.
      auto fn = fun_tail(sp, name);
      expect(Tok::KwIn, "'in'");
      auto body = expr();
      auto let = make_surface(SurfKind::Let, sp);
      let->bind1 = name;
      let->kids.push_back(std::move(fn));
      let->kids.push_back(std::move(body));
      return let;
    }
    expect(Tok::Equal, "'='");
    auto rhs = expr();
    expect(Tok::KwIn, "'in'");
    auto body = expr();
    auto let = make_surface(SurfKind::Let, sp);
    let->bind1 = name;
    let->kids.push_back(std::move(rhs));
    let->kids.push_back(std::move(body));
    return let;
  }

  // Parses `params.. = body` and yields `fun name params = body`.
  SurfPtr fun_tail(Span sp, const std::string& name) {
    std::vector<std::string> params;
    while (!at(Tok::Equal)) params.push_back(pattern_name());
    if (params.empty()) fail("expected at least one parameter");
    expect(Tok::Equal, "'='");
    auto body = expr();
    auto fn = make_surface(SurfKind::Fun, sp);
    fn->name = name;
    fn->params = std::move(params);
    fn->kids.push_back(std::move(body));
    return fn;
  }

  SurfPtr fun_expr() {
    Span sp = expect(Tok::KwFun, "'fun'").span;
    std::string f = expect(Tok::Ident, "a function name").text;
    return fun_tail(sp, f);
  }

  SurfPtr share_expr() {
    Span sp = expect(Tok::KwShare, "'share'").span;
    auto e = make_surface(SurfKind::Share, sp);
    e->name = expect(Tok::Ident, "a variable").text;
    expect(Tok::KwAs, "'as'");
    e->bind1 = expect(Tok::Ident, "a binder").text;
    expect(Tok::Comma, "','");
    e->bind2 = expect(Tok::Ident, "a binder").text;
    expect(Tok::KwIn, "'in'");
    e->kids.push_back(expr());
    return e;
  }

  SurfPtr if_expr() {
    Span sp = expect(Tok::KwIf, "'if'").span;
    auto e = make_surface(SurfKind::If, sp);
    e->kids.push_back(expr());
    expect(Tok::KwThen, "'then'");
    e->kids.push_back(expr());
    expect(Tok::KwElse, "'else'");
    e->kids.push_back(expr());
    return e;
  }

  // `flip 0.5 { H -> e | T -> e }` or, via match_expr,
  // `match flip 0.5 with | H -> e | T -> e`. A variable in place of the
  // literal selects the symbolic form.
  SurfPtr flip_expr(Span sp, bool braced = true) {
    SurfPtr e;
    if (at(Tok::Ident)) {
      e = make_surface(SurfKind::FlipSym, sp);
      e->name = take().text;
    } else {
      e = make_surface(SurfKind::Flip, sp);
      e->lit = prob_lit();
    }
    SurfPtr hb, tb;
    if (braced) {
      expect(Tok::LBrace, "'{'");
      flip_branches(hb, tb);
      expect(Tok::RBrace, "'}'");
    } else {
      expect(Tok::KwWith, "'with'");
      flip_branches(hb, tb);
    }
    e->kids.push_back(std::move(hb));
    e->kids.push_back(std::move(tb));
    return e;
  }

  void flip_branches(SurfPtr& hb, SurfPtr& tb) {
    for (int k = 0; k < 2; ++k) {
      if (at(Tok::Pipe)) take();
      Span bsp = cur().span;
      std::string label = expect(Tok::Ident, "'H' or 'T'").text;
      if (label != "H" && label != "T")
        throw ParseError(bsp, "expected 'H' or 'T'");
      expect(Tok::Arrow, "'->'");
      auto body = expr();
      if (label == "H") {
        if (hb) throw ParseError(bsp, "duplicate 'H' branch");
        hb = std::move(body);
      } else {
        if (tb) throw ParseError(bsp, "duplicate 'T' branch");
        tb = std::move(body);
      }
    }
  }

  SurfPtr match_expr() {
    Span sp = take().span;  // match / case
    if (at(Tok::KwFlip)) {
      take();
      // Either `match flip p with ...` or the braced `flip p { ... }`.
      std::size_t save = i_;
      if (at(Tok::Ident) || at(Tok::IntLit) || at(Tok::RatLit)) {
        std::size_t after = i_ + 1;
        if (toks_[after].kind == Tok::LBrace) return flip_expr(sp, true);
      }
      (void)save;
      return flip_expr(sp, false);
    }
    auto scrut = expr();
    bool braced = false;
    if (at(Tok::LBrace)) {
      take();
      braced = true;
    } else {
      expect(Tok::KwWith, "'with'");
    }
    SurfPtr nil_b, cons_b, true_b, false_b;
    std::string x1, x2;
    bool is_list = false, is_bool = false;
    for (int k = 0; k < 2; ++k) {
      if (at(Tok::Pipe)) take();
      Span bsp = cur().span;
      if (at(Tok::LBracket)) {
        take();
        expect(Tok::RBracket, "']'");
        expect(Tok::Arrow, "'->'");
        if (nil_b) throw ParseError(bsp, "duplicate '[]' branch");
        nil_b = expr();
        is_list = true;
      } else if (at(Tok::KwTrue) || at(Tok::KwFalse)) {
        bool which = at(Tok::KwTrue);
        take();
        expect(Tok::Arrow, "'->'");
        auto body = expr();
        if (which) {
          if (true_b) throw ParseError(bsp, "duplicate 'true' branch");
          true_b = std::move(body);
        } else {
          if (false_b) throw ParseError(bsp, "duplicate 'false' branch");
          false_b = std::move(body);
        }
        is_bool = true;
      } else if (at(Tok::Ident)) {
        x1 = take().text;
        expect(Tok::ColonColon, "'::'");
        x2 = expect(Tok::Ident, "a binder").text;
        expect(Tok::Arrow, "'->'");
        if (cons_b) throw ParseError(bsp, "duplicate cons branch");
        cons_b = expr();
        is_list = true;
      } else {
        fail("expected a match pattern");
      }
    }
    if (braced) expect(Tok::RBrace, "'}'");
    if (is_list && is_bool) fail("mixed list and bool patterns");
    if (is_list) {
      if (!nil_b || !cons_b)
        throw ParseError(sp, "list match needs both '[]' and cons branches");
      auto m = make_surface(SurfKind::MatL, sp);
      m->bind1 = x1;
      m->bind2 = x2;
      m->kids.push_back(std::move(scrut));
      m->kids.push_back(std::move(nil_b));
      m->kids.push_back(std::move(cons_b));
      return m;
    }
    if (!true_b || !false_b)
      throw ParseError(sp, "bool match needs both branches");
    auto m = make_surface(SurfKind::MatB, sp);
    m->kids.push_back(std::move(scrut));
    m->kids.push_back(std::move(true_b));
    m->kids.push_back(std::move(false_b));
    return m;
  }

  SurfPtr cmp_expr() {
    auto lhs = cons_chain();
    if (at(Tok::Less) || at(Tok::Greater) || at(Tok::Equal)) {
      Span sp = cur().span;
      CmpOp op = at(Tok::Less)    ? CmpOp::Lt
                 : at(Tok::Greater) ? CmpOp::Gt
                                    : CmpOp::Eq;
      take();
      auto rhs = cons_chain();
      auto e = make_surface(SurfKind::Cmp, sp);
      e->op = op;
      e->kids.push_back(std::move(lhs));
      e->kids.push_back(std::move(rhs));
      return e;
    }
    return lhs;
  }

  SurfPtr cons_chain() {
    auto head = app_expr();
    if (at(Tok::ColonColon)) {
      Span sp = take().span;
      auto tail = cons_chain();
      auto e = make_surface(SurfKind::Cons, sp);
      e->kids.push_back(std::move(head));
      e->kids.push_back(std::move(tail));
      return e;
    }
    return head;
  }

  bool atom_start() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::IntLit:
      case Tok::RatLit:
      case Tok::LParen:
      case Tok::LBracket:
      case Tok::KwTrue:
      case Tok::KwFalse:
        return true;
      case Tok::Minus:
        return peek().kind == Tok::IntLit || peek().kind == Tok::RatLit;
      default:
        return false;
    }
  }

  SurfPtr app_expr() {
    auto e = atom();
    while (atom_start()) {
      auto arg = atom();
      auto app = make_surface(SurfKind::App, e->span);
      app->kids.push_back(std::move(e));
      app->kids.push_back(std::move(arg));
      e = std::move(app);
    }
    return e;
  }

  SurfPtr atom() {
    Span sp = cur().span;
    switch (cur().kind) {
      case Tok::Ident: {
        auto e = make_surface(SurfKind::Var, sp);
        e->name = take().text;
        return e;
      }
      case Tok::KwTrue:
      case Tok::KwFalse: {
        auto e = make_surface(SurfKind::BoolLit, sp);
        e->bval = at(Tok::KwTrue);
        take();
        return e;
      }
      case Tok::IntLit: {
        auto e = make_surface(SurfKind::IntLit, sp);
        e->ival = static_cast<long>(take().value.get_num().get_si());
        return e;
      }
      case Tok::RatLit: {
        auto e = make_surface(SurfKind::Prob, sp);
        e->lit = take().value;
        if (!in_unit_interval(e->lit))
          throw ParseError(sp, "probability out of range");
        return e;
      }
      case Tok::Minus: {
        take();
        if (at(Tok::IntLit)) {
          auto e = make_surface(SurfKind::IntLit, sp);
          e->ival = -static_cast<long>(take().value.get_num().get_si());
          return e;
        }
        throw ParseError(sp, "probability out of range");
      }
      case Tok::LParen: {
        take();
        if (at(Tok::RParen)) {
          take();
          return make_surface(SurfKind::Unit, sp);
        }
        auto e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBracket: {
        take();
        if (at(Tok::RBracket)) {
          take();
          return make_surface(SurfKind::Nil, sp);
        }
        auto lst = make_surface(SurfKind::ListLit, sp);
        lst->kids.push_back(expr());
        while (at(Tok::Semi)) {
          take();
          lst->kids.push_back(expr());
        }
        expect(Tok::RBracket, "']'");
        return lst;
      }
      default:
        fail("expected an expression");
    }
  }
};

}  // namespace

SurfPtr parse_program(const std::string& text) {
  Parser p(lex(text));
  return p.program();
}

PotAnn parse_anntype(const std::string& text) {
  Parser p(lex(text));
  return p.anntype_only();
}

}  // namespace praml
