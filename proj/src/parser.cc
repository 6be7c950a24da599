#include <cltl/errors.hh>
#include <cltl/formula.hh>

#include <cctype>
#include <optional>

namespace cltl
{
  namespace
  {
    enum class tok
    {
      ident,
      number,
      punct,                    // operators and separators, text in `text`
      end,
    };

    struct token
    {
      tok kind;
      std::string text;
      unsigned line, col;
    };

    std::vector<token> lex(std::string_view s)
    {
      std::vector<token> out;
      unsigned line = 1, col = 1;
      std::size_t i = 0;
      auto adv = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i)
          if (s[i] == '\n')
            {
              ++line;
              col = 1;
            }
          else
            ++col;
      };
      static const char* puncts[] = {
        "<->", "->", "<=", ">=", "!=", "&&", "||",
        "<", ">", "=", "!", "(", ")", "{", "}", ";", ":", ",", "^",
      };
      while (i < s.size())
        {
          char c = s[i];
          if (c == '#')
            {
              while (i < s.size() && s[i] != '\n')
                adv(1);
              continue;
            }
          if (std::isspace(static_cast<unsigned char>(c)))
            {
              adv(1);
              continue;
            }
          unsigned l = line, co = col;
          if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            {
              std::size_t j = i;
              while (j < s.size()
                     && (std::isalnum(static_cast<unsigned char>(s[j]))
                         || s[j] == '_'
                         || (s[j] == '-' && j + 1 < s.size()
                             && std::isalpha(static_cast<unsigned char>(s[j + 1])))))
                ++j;
              out.push_back({tok::ident, std::string(s.substr(i, j - i)), l, co});
              adv(j - i);
              continue;
            }
          if (std::isdigit(static_cast<unsigned char>(c)))
            {
              std::size_t j = i;
              while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
              out.push_back({tok::number, std::string(s.substr(i, j - i)), l, co});
              adv(j - i);
              continue;
            }
          bool matched = false;
          for (const char* p: puncts)
            {
              std::string_view pv(p);
              if (s.substr(i, pv.size()) == pv)
                {
                  out.push_back({tok::punct, std::string(pv), l, co});
                  adv(pv.size());
                  matched = true;
                  break;
                }
            }
          if (!matched)
            throw syntax_error(l, co, "a token", std::string("'") + c + "'");
        }
      out.push_back({tok::end, "", line, col});
      return out;
    }

    class parser
    {
    public:
      explicit parser(std::string_view text) : toks_(lex(text)) {}

      game_spec spec(const parse_options& opt)
      {
        game_spec s;
        bool seen_domain = false, seen_mode = false, seen_spec = false;
        bool seen_env = false, seen_sys = false, seen_prompt = false;
        while (!at_end())
          {
            const token& t = peek();
            if (t.kind != tok::ident)
              fail("a section keyword");
            if (t.text == "domain")
              {
                once(seen_domain, "domain");
                next();
                expect(":");
                std::string d = ident("Z or dense");
                if (d == "Z")
                  s.dom = domain::int_z;
                else if (d == "dense")
                  s.dom = domain::dense;
                else
                  fail_at(prev(), "Z or dense");
                expect(";");
              }
            else if (t.text == "mode")
              {
                once(seen_mode, "mode");
                next();
                expect(":");
                std::string word = ident("general or single-sided");
                if (word == "general")
                  s.mode = game_mode::general;
                else if (word == "single-sided")
                  s.mode = game_mode::single_sided;
                else
                  fail_at(prev(), "general or single-sided");
                expect(";");
              }
            else if (t.text == "prompt")
              {
                once(seen_prompt, "prompt");
                next();
                expect(":");
                std::string b = ident("true or false");
                if (b == "true")
                  s.prompt = true;
                else if (b == "false")
                  s.prompt = false;
                else
                  fail_at(prev(), "true or false");
                expect(";");
              }
            else if (t.text == "env" || t.text == "sys")
              {
                once(t.text == "env" ? seen_env : seen_sys, t.text);
                owner who = t.text == "env" ? owner::env : owner::sys;
                next();
                expect("{");
                while (!accept("}"))
                  {
                    std::string k = ident("blind, ahead or '}'");
                    var_kind kind;
                    if (k == "blind")
                      kind = var_kind::blind;
                    else if (k == "ahead")
                      kind = var_kind::ahead;
                    else
                      fail_at(prev(), "blind, ahead or '}'");
                    do
                      {
                        const token& v = peek();
                        std::string name = ident("a variable name");
                        if (is_reserved_word(name)
                            || name.find('-') != std::string::npos)
                          fail_at(v, "a variable name (not a reserved word)");
                        s.variables.push_back({name, who, kind});
                      }
                    while (accept(","));
                    expect(";");
                  }
              }
            else if (t.text == "spec")
              {
                once(seen_spec, "spec");
                next();
                expect(":");
                s.winning_condition = implication();
                expect(";");
              }
            else
              fail("domain, mode, prompt, env, sys or spec");
          }
        if (!seen_domain)
          throw error(error_kind::invalid_spec, "missing `domain:` section");
        if (!seen_spec)
          throw error(error_kind::invalid_spec, "missing `spec:` section");
        if (!seen_mode)
          s.mode = game_mode::general;
        if (opt.prompt)
          s.prompt = true;
        return s;
      }

      formula whole_formula()
      {
        formula f = implication();
        if (!at_end())
          fail("end of input");
        return f;
      }

    private:
      std::vector<token> toks_;
      std::size_t pos_ = 0;

      const token& peek(std::size_t ahead = 0) const
      {
        std::size_t p = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[p];
      }
      const token& prev() const { return toks_[pos_ - 1]; }
      void next() { if (pos_ + 1 < toks_.size()) ++pos_; }
      bool at_end() const { return peek().kind == tok::end; }

      static std::string describe(const token& t)
      {
        if (t.kind == tok::end)
          return "end of input";
        return "'" + t.text + "'";
      }

      [[noreturn]] void fail_at(const token& t, const std::string& expected) const
      {
        throw syntax_error(t.line, t.col, expected, describe(t));
      }
      [[noreturn]] void fail(const std::string& expected) const
      {
        fail_at(peek(), expected);
      }

      void once(bool& seen, const std::string& what)
      {
        if (seen)
          fail_at(peek(), "a single `" + what + "` section");
        seen = true;
      }

      bool is_punct(const char* p, std::size_t ahead = 0) const
      {
        const token& t = peek(ahead);
        return t.kind == tok::punct && t.text == p;
      }
      bool is_word(const char* w, std::size_t ahead = 0) const
      {
        const token& t = peek(ahead);
        return t.kind == tok::ident && t.text == w;
      }

      bool accept(const char* p)
      {
        if (!is_punct(p))
          return false;
        next();
        return true;
      }

      void expect(const char* p)
      {
        if (!accept(p))
          fail(std::string("'") + p + "'");
      }

      std::string ident(const std::string& expected)
      {
        if (peek().kind != tok::ident)
          fail(expected);
        std::string s = peek().text;
        next();
        return s;
      }

      // implication := disjunction [('->' | '<->') implication]
      formula implication()
      {
        formula l = disjunction();
        if (accept("->"))
          return formula::implies(l, implication());
        if (accept("<->"))
          return formula::iff(l, implication());
        return l;
      }

      formula disjunction()
      {
        formula l = conjunction();
        while (accept("||"))
          l = formula::or_(l, conjunction());
        return l;
      }

      formula conjunction()
      {
        formula l = until();
        while (accept("&&"))
          l = formula::and_(l, until());
        return l;
      }

      // U is right associative.
      formula until()
      {
        formula l = unary();
        if (is_word("U"))
          {
            next();
            return formula::until(l, until());
          }
        return l;
      }

      // Is the X at the cursor the start of a term (X^i v, X X v) rather
      // than the temporal next operator?
      bool x_starts_term() const
      {
        std::size_t i = 0;
        while (is_word("X", i))
          {
            ++i;
            if (is_punct("^", i))
              {
                if (peek(i + 1).kind != tok::number)
                  return false;
                i += 2;
              }
          }
        const token& t = peek(i);
        return t.kind == tok::ident && !is_reserved_word(t.text);
      }

      formula unary()
      {
        if (accept("!"))
          return formula::not_(unary());
        if (is_word("X") && !x_starts_term())
          {
            next();
            return formula::next(unary());
          }
        if (is_word("F"))
          {
            next();
            return formula::finally(unary());
          }
        if (is_word("G"))
          {
            next();
            return formula::globally(unary());
          }
        if (is_word("FP"))
          {
            next();
            return formula::prompt_finally(unary());
          }
        return primary();
      }

      formula primary()
      {
        if (accept("("))
          {
            formula f = implication();
            expect(")");
            return f;
          }
        if (is_word("true"))
          {
            next();
            return formula::tt();
          }
        if (is_word("false"))
          {
            next();
            return formula::ff();
          }
        return atom();
      }

      term parse_term()
      {
        term t;
        while (is_word("X"))
          {
            next();
            if (accept("^"))
              {
                if (peek().kind != tok::number)
                  fail("an exponent");
                t.depth += static_cast<unsigned>(std::stoul(peek().text));
                next();
              }
            else
              t.depth += 1;
          }
        const token& v = peek();
        if (v.kind != tok::ident || is_reserved_word(v.text))
          fail("a term");
        t.var = v.text;
        next();
        return t;
      }

      formula atom()
      {
        term l = parse_term();
        const token& r = peek();
        if (r.kind != tok::punct)
          fail("a relation (<, <=, =, !=, >=, >)");
        std::string rel = r.text;
        if (rel != "<" && rel != "<=" && rel != "=" && rel != "!="
            && rel != ">=" && rel != ">")
          fail("a relation (<, <=, =, !=, >=, >)");
        next();
        term rt = parse_term();
        if (rel == "<")
          return formula::lt(l, rt);
        if (rel == ">")
          return formula::lt(rt, l);
        if (rel == "=")
          return formula::eq(l, rt);
        if (rel == "!=")
          return formula::not_(formula::eq(l, rt));
        if (rel == "<=")
          return formula::not_(formula::lt(rt, l));
        return formula::not_(formula::lt(l, rt)); // >=
      }
    };
  }

  game_spec parse_spec(std::string_view text, const parse_options& opt)
  {
    parser p(text);
    game_spec s = p.spec(opt);
    if (opt.validate)
      validate(s);
    return s;
  }

  formula parse_formula(std::string_view text)
  {
    parser p(text);
    return p.whole_formula();
  }
}
