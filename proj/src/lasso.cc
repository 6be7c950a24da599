#include <cltl/errors.hh>
#include <cltl/lasso.hh>

#include <unordered_map>

namespace cltl
{
  std::size_t lasso_shape::advance(std::size_t i, std::size_t n) const
  {
    if (i + n < length())
      return i + n;
    std::size_t past = i + n - stem;
    return stem + past % loop;
  }

  namespace
  {
    class evaluator
    {
    public:
      evaluator(const lasso_shape& shape, const atom_oracle& atoms,
                std::optional<unsigned> bound)
        : shape_(shape), atoms_(atoms), bound_(bound)
      {
      }

      const std::vector<char>& eval(const formula& f)
      {
        if (auto it = memo_.find(f.id()); it != memo_.end())
          return it->second;
        std::size_t n = shape_.length();
        std::vector<char> r(n, 0);
        switch (f.kind())
          {
          case op::tt:
            r.assign(n, 1);
            break;
          case op::ff:
            break;
          case op::atom:
            for (std::size_t i = 0; i < n; ++i)
              r[i] = atoms_(f, i);
            break;
          case op::not_:
            {
              auto& a = eval(f.child());
              for (std::size_t i = 0; i < n; ++i)
                r[i] = !a[i];
              break;
            }
          case op::or_:
          case op::and_:
            {
              auto a = eval(f.left());
              auto& b = eval(f.right());
              for (std::size_t i = 0; i < n; ++i)
                r[i] = f.is(op::or_) ? (a[i] || b[i]) : (a[i] && b[i]);
              break;
            }
          case op::next:
            {
              auto& a = eval(f.child());
              for (std::size_t i = 0; i < n; ++i)
                r[i] = a[shape_.next(i)];
              break;
            }
          case op::until:
            {
              auto a = eval(f.left());
              auto& b = eval(f.right());
              fixpoint(r, [&](std::size_t i, const std::vector<char>& cur) {
                return b[i] || (a[i] && cur[shape_.next(i)]);
              }, 0);
              break;
            }
          case op::finally:
            {
              auto& a = eval(f.child());
              fixpoint(r, [&](std::size_t i, const std::vector<char>& cur) {
                return a[i] || cur[shape_.next(i)];
              }, 0);
              break;
            }
          case op::globally:
            {
              auto& a = eval(f.child());
              fixpoint(r, [&](std::size_t i, const std::vector<char>& cur) {
                return a[i] && cur[shape_.next(i)];
              }, 1);
              break;
            }
          case op::prompt_finally:
            {
              if (!bound_)
                throw error(error_kind::invalid_spec,
                            "FP needs a bound for direct evaluation");
              auto& a = eval(f.child());
              for (std::size_t i = 0; i < n; ++i)
                for (unsigned j = 0; j <= *bound_ && !r[i]; ++j)
                  r[i] = a[shape_.advance(i, j)];
              break;
            }
          }
        return memo_.emplace(f.id(), std::move(r)).first->second;
      }

    private:
      // Least (init 0) or greatest (init 1) fixpoint of a backward step.
      template<class Step>
      void fixpoint(std::vector<char>& r, Step step, char init)
      {
        std::size_t n = r.size();
        r.assign(n, init);
        for (bool changed = true; changed;)
          {
            changed = false;
            for (std::size_t i = n; i-- > 0;)
              {
                char v = step(i, r);
                if (v != r[i])
                  {
                    r[i] = v;
                    changed = true;
                  }
              }
          }
      }

      const lasso_shape& shape_;
      const atom_oracle& atoms_;
      std::optional<unsigned> bound_;
      std::unordered_map<const void*, std::vector<char>> memo_;
    };
  }

  std::vector<char> eval_lasso_positions(const formula& f, const lasso_shape& shape,
                                         const atom_oracle& atoms,
                                         std::optional<unsigned> prompt_bound)
  {
    evaluator e(shape, atoms, prompt_bound);
    return e.eval(f);
  }

  bool eval_lasso(const formula& f, const lasso_shape& shape,
                  const atom_oracle& atoms, std::optional<unsigned> prompt_bound)
  {
    return eval_lasso_positions(f, shape, atoms, prompt_bound)[0];
  }

  bool eval_concrete_lasso(const vocabulary& voc, const formula& f,
                           const std::vector<valuation>& stem,
                           const std::vector<valuation>& loop,
                           std::optional<unsigned> prompt_bound)
  {
    if (loop.empty())
      throw error(error_kind::invalid_spec, "empty lasso loop");
    lasso_shape shape{stem.size(), loop.size()};
    auto at = [&](std::size_t i) -> const valuation& {
      return i < stem.size() ? stem[i] : loop[i - stem.size()];
    };
    atom_oracle atoms = [&](const formula& a, std::size_t pos) {
      auto value = [&](const term& t) -> const rational& {
        const valuation& v = at(shape.advance(pos, t.depth));
        if (int i = voc.ahead_index(t.var); i >= 0)
          return v.ahead[i];
        int b = voc.blind_index(t.var);
        if (b < 0)
          throw error(error_kind::unknown_variable, "unknown variable " + t.var);
        return v.blind[b];
      };
      const rational& l = value(a.lhs());
      const rational& r = value(a.rhs());
      return a.relation() == rel::lt ? l < r : l == r;
    };
    return eval_lasso(f, shape, atoms, prompt_bound);
  }

  bool eval_symbolic_lasso(const vocabulary& voc, const formula& f,
                           const std::vector<frame>& stem,
                           const std::vector<frame>& loop)
  {
    if (loop.empty())
      throw error(error_kind::invalid_spec, "empty lasso loop");
    lasso_shape shape{stem.size(), loop.size()};
    atom_oracle atoms = [&](const formula& a, std::size_t pos) {
      const frame& fr = pos < stem.size() ? stem[pos] : loop[pos - stem.size()];
      return atom_holds(fr, a, voc);
    };
    return eval_lasso(f, shape, atoms);
  }

  std::pair<std::vector<frame>, std::vector<frame>>
  symbolic_lasso(const vocabulary& voc, unsigned k,
                 const std::vector<valuation>& stem,
                 const std::vector<valuation>& loop)
  {
    lasso_shape shape{stem.size(), loop.size()};
    auto at = [&](std::size_t i) -> const valuation& {
      std::size_t p = shape.advance(0, i);
      return p < stem.size() ? stem[p] : loop[p - stem.size()];
    };
    std::vector<frame> fs;
    for (std::size_t i = 0; i < shape.length(); ++i)
      {
        std::vector<valuation> window;
        for (unsigned j = 0; j <= k; ++j)
          window.push_back(at(i + j));
        fs.push_back(mu_step(window, voc));
      }
    std::vector<frame> s(fs.begin(), fs.begin() + stem.size());
    std::vector<frame> l(fs.begin() + stem.size(), fs.end());
    return {s, l};
  }
}
