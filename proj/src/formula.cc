#include <cltl/errors.hh>
#include <cltl/formula.hh>

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cltl
{
  const char* error_kind_name(error_kind k)
  {
    switch (k)
      {
      case error_kind::syntax: return "SyntaxError";
      case error_kind::mixed_atom: return "MixedAtomError";
      case error_kind::ownership: return "OwnershipError";
      case error_kind::unknown_variable: return "UnknownVariable";
      case error_kind::invalid_spec: return "InvalidSpec";
      case error_kind::term_out_of_range: return "TermOutOfRange";
      case error_kind::incompatible_target: return "IncompatibleTarget";
      case error_kind::not_gap_compatible: return "NotGapCompatible";
      case error_kind::resource_exceeded: return "ResourceExceeded";
      case error_kind::undecidable_class: return "UndecidableClass";
      case error_kind::no_winning_strategy: return "NoWinningStrategy";
      case error_kind::name_collision: return "NameCollision";
      case error_kind::alphabet_mismatch: return "AlphabetMismatch";
      }
    return "Error";
  }

  namespace
  {
    std::string syntax_msg(unsigned line, unsigned col,
                           const std::string& expected,
                           const std::string& found)
    {
      std::ostringstream os;
      os << "syntax error at " << line << ':' << col << ": expected "
         << expected << ", found " << found;
      return os.str();
    }
  }

  syntax_error::syntax_error(unsigned line, unsigned col,
                             const std::string& expected,
                             const std::string& found)
    : error(error_kind::syntax, syntax_msg(line, col, expected, found)),
      line_(line), col_(col), expected_(expected)
  {
  }

  const char* domain_name(domain d)
  {
    return d == domain::int_z ? "Z" : "dense";
  }

  const char* mode_name(game_mode m)
  {
    return m == game_mode::general ? "general" : "single-sided";
  }

  struct formula::node
  {
    op kind;
    rel r = rel::lt;
    term lhs, rhs;
    std::shared_ptr<const node> a, b;
    std::size_t h = 0;
    std::size_t count = 1;
  };

  namespace
  {
    std::size_t mix(std::size_t h, std::size_t v)
    {
      return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }

    std::size_t term_hash(const term& t)
    {
      return mix(std::hash<std::string>{}(t.var), t.depth);
    }
  }

  formula formula::leaf(op o)
  {
    auto n = std::make_shared<node>();
    n->kind = o;
    n->h = mix(0, static_cast<std::size_t>(o));
    return formula(std::move(n));
  }

  formula formula::make(op o, formula a, formula b)
  {
    auto n = std::make_shared<node>();
    n->kind = o;
    std::size_t h = mix(0, static_cast<std::size_t>(o));
    h = mix(h, a.hash());
    n->count = 1 + a.size();
    n->a = std::move(a.n_);
    if (b.n_)
      {
        h = mix(h, b.hash());
        n->count += b.size();
        n->b = std::move(b.n_);
      }
    n->h = h;
    return formula(std::move(n));
  }

  formula::formula() : formula(tt()) {}

  formula formula::tt()
  {
    static const formula f = leaf(op::tt);
    return f;
  }

  formula formula::ff()
  {
    static const formula f = leaf(op::ff);
    return f;
  }

  formula formula::atom(rel r, term lhs, term rhs)
  {
    auto n = std::make_shared<node>();
    n->kind = op::atom;
    n->r = r;
    n->h = mix(mix(mix(mix(0, static_cast<std::size_t>(op::atom)),
                       static_cast<std::size_t>(r)),
                   term_hash(lhs)), term_hash(rhs));
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return formula(std::move(n));
  }

  formula formula::not_(formula f) { return make(op::not_, std::move(f), formula(nullptr)); }
  formula formula::next(formula f) { return make(op::next, std::move(f), formula(nullptr)); }
  formula formula::finally(formula f) { return make(op::finally, std::move(f), formula(nullptr)); }
  formula formula::globally(formula f) { return make(op::globally, std::move(f), formula(nullptr)); }
  formula formula::prompt_finally(formula f) { return make(op::prompt_finally, std::move(f), formula(nullptr)); }
  formula formula::or_(formula l, formula r) { return make(op::or_, std::move(l), std::move(r)); }
  formula formula::and_(formula l, formula r) { return make(op::and_, std::move(l), std::move(r)); }
  formula formula::until(formula l, formula r) { return make(op::until, std::move(l), std::move(r)); }

  formula formula::iff(formula l, formula r)
  {
    return and_(implies(l, r), implies(r, l));
  }

  formula formula::any_of(const std::vector<formula>& fs)
  {
    if (fs.empty())
      return ff();
    formula res = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
      res = or_(res, fs[i]);
    return res;
  }

  formula formula::all_of(const std::vector<formula>& fs)
  {
    if (fs.empty())
      return tt();
    formula res = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i)
      res = and_(res, fs[i]);
    return res;
  }

  op formula::kind() const { return n_->kind; }
  rel formula::relation() const { return n_->r; }
  const term& formula::lhs() const { return n_->lhs; }
  const term& formula::rhs() const { return n_->rhs; }
  formula formula::child() const { return formula(n_->a); }
  formula formula::right() const { return formula(n_->b); }
  std::size_t formula::hash() const { return n_->h; }
  std::size_t formula::size() const { return n_->count; }

  bool formula::operator==(const formula& o) const
  {
    const node* x = n_.get();
    const node* y = o.n_.get();
    if (x == y)
      return true;
    if (!x || !y || x->h != y->h || x->kind != y->kind || x->count != y->count)
      return false;
    if (x->kind == op::atom)
      return x->r == y->r && x->lhs == y->lhs && x->rhs == y->rhs;
    if (formula(x->a) != formula(y->a))
      return false;
    if (!x->b)
      return !y->b;
    return formula(x->b) == formula(y->b);
  }

  const variable* game_spec::find(std::string_view name) const
  {
    for (auto& v: variables)
      if (v.name == name)
        return &v;
    return nullptr;
  }

  std::vector<std::string> game_spec::names(owner who, var_kind kind) const
  {
    std::vector<std::string> res;
    for (auto& v: variables)
      if (v.who == who && v.kind == kind)
        res.push_back(v.name);
    return res;
  }

  bool is_reserved_word(std::string_view w)
  {
    static const char* words[] = {"X", "U", "F", "G", "FP", "true", "false"};
    for (auto* r: words)
      if (w == r)
        return true;
    return false;
  }

  std::string to_string(const term& t)
  {
    if (t.depth == 0)
      return t.var;
    return "X^" + std::to_string(t.depth) + " " + t.var;
  }

  namespace
  {
    void print(std::ostream& os, const formula& f)
    {
      auto unary = [&](const char* name) {
        os << name << ' ';
        formula c = f.child();
        if (c.is(op::atom))
          {
            os << '(';
            print(os, c);
            os << ')';
          }
        else
          print(os, c);
      };
      auto binary = [&](const char* name) {
        os << '(';
        print(os, f.left());
        os << ' ' << name << ' ';
        print(os, f.right());
        os << ')';
      };
      switch (f.kind())
        {
        case op::tt: os << "true"; break;
        case op::ff: os << "false"; break;
        case op::atom:
          os << to_string(f.lhs())
             << (f.relation() == rel::lt ? " < " : " = ")
             << to_string(f.rhs());
          break;
        case op::not_: unary("!"); break;
        case op::next: unary("X"); break;
        case op::finally: unary("F"); break;
        case op::globally: unary("G"); break;
        case op::prompt_finally: unary("FP"); break;
        case op::or_: binary("||"); break;
        case op::and_: binary("&&"); break;
        case op::until: binary("U"); break;
        }
    }

    void join(std::ostream& os, const std::vector<std::string>& names)
    {
      for (std::size_t i = 0; i < names.size(); ++i)
        os << (i ? ", " : "") << names[i];
    }

    void print_side(std::ostream& os, const game_spec& s, owner who,
                    const char* kw)
    {
      auto blind = s.names(who, var_kind::blind);
      auto ahead = s.names(who, var_kind::ahead);
      os << kw << " {";
      if (!blind.empty())
        {
          os << " blind ";
          join(os, blind);
          os << ';';
        }
      if (!ahead.empty())
        {
          os << " ahead ";
          join(os, ahead);
          os << ';';
        }
      os << " }\n";
    }
  }

  std::string to_string(const formula& f)
  {
    std::ostringstream os;
    print(os, f);
    return os.str();
  }

  std::string to_string(const game_spec& s)
  {
    std::ostringstream os;
    os << "domain: " << domain_name(s.dom) << ";\n";
    os << "mode: " << mode_name(s.mode) << ";\n";
    if (s.prompt)
      os << "prompt: true;\n";
    print_side(os, s, owner::env, "env");
    print_side(os, s, owner::sys, "sys");
    os << "spec: " << to_string(s.winning_condition) << ";\n";
    return os.str();
  }

  unsigned x_length(const formula& f)
  {
    switch (f.kind())
      {
      case op::tt:
      case op::ff:
        return 0;
      case op::atom:
        return std::max(f.lhs().depth, f.rhs().depth);
      case op::or_:
      case op::and_:
      case op::until:
        return std::max(x_length(f.left()), x_length(f.right()));
      default:
        return x_length(f.child());
      }
  }

  formula negate(const formula& f)
  {
    switch (f.kind())
      {
      case op::tt: return formula::ff();
      case op::ff: return formula::tt();
      case op::not_: return f.child();
      default: return formula::not_(f);
      }
  }

  formula desugar(const formula& f)
  {
    switch (f.kind())
      {
      case op::tt:
      case op::ff:
      case op::atom:
        return f;
      case op::not_: return formula::not_(desugar(f.child()));
      case op::next: return formula::next(desugar(f.child()));
      case op::or_: return formula::or_(desugar(f.left()), desugar(f.right()));
      case op::and_: return formula::and_(desugar(f.left()), desugar(f.right()));
      case op::until: return formula::until(desugar(f.left()), desugar(f.right()));
      case op::finally:
      case op::prompt_finally:
        return formula::until(formula::tt(), desugar(f.child()));
      case op::globally:
        return formula::not_(formula::until(formula::tt(),
                                            negate(desugar(f.child()))));
      }
    return f;
  }

  namespace
  {
    void collect_closure(const formula& f, std::vector<formula>& out,
                         std::unordered_set<formula, formula_hash>& seen)
    {
      switch (f.kind())
        {
        case op::tt:
        case op::ff:
        case op::atom:
          break;
        case op::or_:
        case op::and_:
        case op::until:
          collect_closure(f.left(), out, seen);
          collect_closure(f.right(), out, seen);
          break;
        default:
          collect_closure(f.child(), out, seen);
        }
      if (seen.insert(f).second)
        out.push_back(f);
      formula n = negate(f);
      if (seen.insert(n).second)
        out.push_back(n);
    }

    void collect_atoms(const formula& f, std::vector<formula>& out,
                       std::unordered_set<formula, formula_hash>& seen)
    {
      switch (f.kind())
        {
        case op::tt:
        case op::ff:
          return;
        case op::atom:
          if (seen.insert(f).second)
            out.push_back(f);
          return;
        case op::or_:
        case op::and_:
        case op::until:
          collect_atoms(f.left(), out, seen);
          collect_atoms(f.right(), out, seen);
          return;
        default:
          collect_atoms(f.child(), out, seen);
        }
    }
  }

  std::vector<formula> closure(const formula& f)
  {
    std::vector<formula> out;
    std::unordered_set<formula, formula_hash> seen;
    collect_closure(desugar(f), out, seen);
    return out;
  }

  std::vector<formula> atoms(const formula& f)
  {
    std::vector<formula> out;
    std::unordered_set<formula, formula_hash> seen;
    collect_atoms(f, out, seen);
    return out;
  }

  std::vector<std::string> variables_of(const formula& f)
  {
    std::vector<std::string> res;
    for (auto& a: atoms(f))
      for (const term* t: {&a.lhs(), &a.rhs()})
        if (std::find(res.begin(), res.end(), t->var) == res.end())
          res.push_back(t->var);
    return res;
  }

  void validate(const game_spec& spec)
  {
    std::unordered_set<std::string> names;
    for (auto& v: spec.variables)
      {
        if (is_reserved_word(v.name))
          throw error(error_kind::invalid_spec,
                      "reserved word used as variable: " + v.name);
        if (!names.insert(v.name).second)
          throw error(error_kind::invalid_spec,
                      "variable declared twice: " + v.name);
      }
    if (spec.variables.empty())
      throw error(error_kind::invalid_spec, "no variables declared");

    for (auto& a: atoms(spec.winning_condition))
      {
        const variable* l = spec.find(a.lhs().var);
        const variable* r = spec.find(a.rhs().var);
        for (auto [t, v]: {std::pair{&a.lhs(), l}, std::pair{&a.rhs(), r}})
          {
            if (!v)
              throw error(error_kind::unknown_variable,
                          "undeclared variable: " + t->var);
            if (v->kind == var_kind::blind && t->depth > 0)
              throw error(error_kind::ownership,
                          "blind variable " + t->var
                          + " cannot occur under look-ahead: " + to_string(a));
          }
        if (l->kind != r->kind)
          throw error(error_kind::mixed_atom,
                      "atom mixes blind and look-ahead variables: "
                      + to_string(a));
      }

    bool has_blind = false;
    bool env_ahead = false;
    for (auto& v: spec.variables)
      {
        has_blind |= v.kind == var_kind::blind;
        env_ahead |= v.kind == var_kind::ahead && v.who == owner::env;
      }
    if (spec.dom == domain::dense && has_blind)
      throw error(error_kind::invalid_spec,
                  "blind variables are not supported over the dense domain");
    if (spec.mode == game_mode::single_sided)
      {
        if (spec.dom != domain::int_z)
          throw error(error_kind::invalid_spec,
                      "single-sided games are decided over Z only");
        if (env_ahead)
          throw error(error_kind::ownership,
                      "single-sided games forbid environment look-ahead variables");
      }

    std::function<bool(const formula&)> has_fp = [&](const formula& f) {
      switch (f.kind())
        {
        case op::tt:
        case op::ff:
        case op::atom:
          return false;
        case op::prompt_finally:
          return true;
        case op::or_:
        case op::and_:
        case op::until:
          return has_fp(f.left()) || has_fp(f.right());
        default:
          return has_fp(f.child());
        }
    };
    if (!spec.prompt && has_fp(spec.winning_condition))
      throw error(error_kind::invalid_spec,
                  "FP requires the prompt extension (prompt: true; or --prompt)");
  }
}
