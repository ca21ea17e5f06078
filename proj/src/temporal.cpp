#include "scenium/temporal.hpp"

#include <utility>

#include "scenium/errors.hpp"

namespace scenium {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "TRUE";
        case Verdict::False: return "FALSE";
        case Verdict::PresumablyTrue: return "PRESUMABLY_TRUE";
        case Verdict::PresumablyFalse: return "PRESUMABLY_FALSE";
    }
    return "?";
}

Verdict verdict_negate(Verdict v) {
    switch (v) {
        case Verdict::True: return Verdict::False;
        case Verdict::False: return Verdict::True;
        case Verdict::PresumablyTrue: return Verdict::PresumablyFalse;
        case Verdict::PresumablyFalse: return Verdict::PresumablyTrue;
    }
    return v;
}

using Kind = TemporalFormula::Kind;

namespace {

Formula make(Kind kind, Formula a = nullptr, Formula b = nullptr) {
    auto f = std::make_shared<TemporalFormula>();
    f->kind = kind;
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

}  // namespace

Formula mk_true() {
    static const Formula t = make(Kind::True);
    return t;
}

Formula mk_false() {
    static const Formula f = make(Kind::False);
    return f;
}

Formula mk_bool(bool v) { return v ? mk_true() : mk_false(); }

Formula mk_atom(int index, std::string name) {
    auto f = std::make_shared<TemporalFormula>();
    f->kind = Kind::Atom;
    f->atom = index;
    f->name = std::move(name);
    return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->atom != b->atom) return false;
    return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
}

Formula mk_not(Formula f) {
    if (f->kind == Kind::True) return mk_false();
    if (f->kind == Kind::False) return mk_true();
    if (f->kind == Kind::Not) return f->a;  // double negation
    return make(Kind::Not, std::move(f));
}

Formula mk_and(Formula a, Formula b) {
    if (a->kind == Kind::False || b->kind == Kind::False) return mk_false();
    if (a->kind == Kind::True) return b;
    if (b->kind == Kind::True) return a;
    if (formula_equal(a, b)) return a;
    // one-level flattening idempotence: x & (x & y) = x & y
    if (b->kind == Kind::And && (formula_equal(b->a, a) || formula_equal(b->b, a))) return b;
    if (a->kind == Kind::And && (formula_equal(a->a, b) || formula_equal(a->b, b))) return a;
    // absorption: x & (x | y) = x
    if (b->kind == Kind::Or && (formula_equal(b->a, a) || formula_equal(b->b, a))) return a;
    if (a->kind == Kind::Or && (formula_equal(a->a, b) || formula_equal(a->b, b))) return b;
    return make(Kind::And, std::move(a), std::move(b));
}

Formula mk_or(Formula a, Formula b) {
    if (a->kind == Kind::True || b->kind == Kind::True) return mk_true();
    if (a->kind == Kind::False) return b;
    if (b->kind == Kind::False) return a;
    if (formula_equal(a, b)) return a;
    if (b->kind == Kind::Or && (formula_equal(b->a, a) || formula_equal(b->b, a))) return b;
    if (a->kind == Kind::Or && (formula_equal(a->a, b) || formula_equal(a->b, b))) return a;
    // absorption: x | (x & y) = x
    if (b->kind == Kind::And && (formula_equal(b->a, a) || formula_equal(b->b, a))) return a;
    if (a->kind == Kind::And && (formula_equal(a->a, b) || formula_equal(a->b, b))) return b;
    return make(Kind::Or, std::move(a), std::move(b));
}

Formula mk_always(Formula f) { return make(Kind::Always, std::move(f)); }
Formula mk_eventually(Formula f) { return make(Kind::Eventually, std::move(f)); }
Formula mk_next(Formula f) { return make(Kind::Next, std::move(f)); }
Formula mk_until(Formula a, Formula b) { return make(Kind::Until, std::move(a), std::move(b)); }

std::string formula_to_string(const Formula& f) {
    switch (f->kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Atom: return f->name.empty() ? "a" + std::to_string(f->atom) : f->name;
        case Kind::Not: return "(not " + formula_to_string(f->a) + ")";
        case Kind::And:
            return "(" + formula_to_string(f->a) + " and " + formula_to_string(f->b) + ")";
        case Kind::Or:
            return "(" + formula_to_string(f->a) + " or " + formula_to_string(f->b) + ")";
        case Kind::Always: return "(always " + formula_to_string(f->a) + ")";
        case Kind::Eventually: return "(eventually " + formula_to_string(f->a) + ")";
        case Kind::Next: return "(next " + formula_to_string(f->a) + ")";
        case Kind::Until:
            return "(" + formula_to_string(f->a) + " until " + formula_to_string(f->b) + ")";
    }
    return "?";
}

Formula progress(const Formula& f, const std::vector<bool>& atoms) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
            return f;
        case Kind::Atom:
            return mk_bool(f->atom >= 0 && static_cast<size_t>(f->atom) < atoms.size() &&
                           atoms[f->atom]);
        case Kind::Not:
            return mk_not(progress(f->a, atoms));
        case Kind::And:
            return mk_and(progress(f->a, atoms), progress(f->b, atoms));
        case Kind::Or:
            return mk_or(progress(f->a, atoms), progress(f->b, atoms));
        case Kind::Next:
            return f->a;
        case Kind::Always:
            return mk_and(progress(f->a, atoms), f);
        case Kind::Eventually:
            return mk_or(progress(f->a, atoms), f);
        case Kind::Until:
            return mk_or(progress(f->b, atoms), mk_and(progress(f->a, atoms), f));
    }
    return f;
}

// ------------------------------------------ finite-trace valuations ---------

namespace {

enum class Val { Strong, Weak, Neutral };

Val dual(Val v) {
    if (v == Val::Strong) return Val::Weak;
    if (v == Val::Weak) return Val::Strong;
    return Val::Neutral;
}

bool eval_at(const Formula& f, const std::vector<std::vector<bool>>& tr, size_t i, Val v) {
    const bool last = i + 1 >= tr.size();
    switch (f->kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom:
            return f->atom >= 0 && static_cast<size_t>(f->atom) < tr[i].size() &&
                   tr[i][f->atom];
        case Kind::Not:
            return !eval_at(f->a, tr, i, dual(v));
        case Kind::And:
            return eval_at(f->a, tr, i, v) && eval_at(f->b, tr, i, v);
        case Kind::Or:
            return eval_at(f->a, tr, i, v) || eval_at(f->b, tr, i, v);
        case Kind::Next:
            if (last) return v == Val::Weak;
            return eval_at(f->a, tr, i + 1, v);
        case Kind::Always:
            if (!eval_at(f->a, tr, i, v)) return false;
            if (last) return v != Val::Strong;  // no finite trace proves always
            return eval_at(f, tr, i + 1, v);
        case Kind::Eventually:
            if (eval_at(f->a, tr, i, v)) return true;
            if (last) return v == Val::Weak;  // an extension could still satisfy it
            return eval_at(f, tr, i + 1, v);
        case Kind::Until:
            if (eval_at(f->b, tr, i, v)) return true;
            if (!eval_at(f->a, tr, i, v)) return false;
            if (last) return v == Val::Weak;
            return eval_at(f, tr, i + 1, v);
    }
    return false;
}

Verdict verdict_of(const Formula& f, const std::vector<std::vector<bool>>& trace) {
    if (eval_at(f, trace, 0, Val::Strong)) return Verdict::True;
    if (!eval_at(f, trace, 0, Val::Weak)) return Verdict::False;
    return eval_at(f, trace, 0, Val::Neutral) ? Verdict::PresumablyTrue
                                              : Verdict::PresumablyFalse;
}

}  // namespace

void Monitor::step(const std::vector<bool>& atoms) {
    prev_ = cur_;
    last_ = atoms;
    if (cur_->kind != Kind::True && cur_->kind != Kind::False) {
        cur_ = progress(cur_, atoms);
    }
    ++steps_;
}

std::optional<Verdict> Monitor::definite() const {
    if (steps_ == 0) return std::nullopt;
    if (cur_->kind == Kind::True) return Verdict::True;
    if (cur_->kind == Kind::False) return Verdict::False;
    return std::nullopt;
}

Verdict Monitor::finalize() const {
    if (steps_ == 0) throw EvalError("cannot finalize a monitor over an empty trace");
    // Progression commutes with all three valuations over non-empty
    // suffixes, but not over the empty one: progressing through the final
    // state rewrites "next p" to a bare "p", which the end-of-trace rules
    // then value as a claim about a state that exists.  So the last state is
    // held back and the residual from just before it is valued over it
    // directly.
    return verdict_of(prev_, {last_});
}

Verdict evaluate_whole_trace(const Formula& f,
                             const std::vector<std::vector<bool>>& trace) {
    if (trace.empty()) throw EvalError("cannot evaluate a formula over an empty trace");
    return verdict_of(f, trace);
}

double stl_bounded_eventually_robustness(const std::vector<double>& signal,
                                         double threshold, int window) {
    if (signal.empty()) throw EmptySignal("robustness of an empty signal is undefined");
    size_t limit = std::min(signal.size() - 1, static_cast<size_t>(window < 0 ? 0 : window));
    double best = signal[0] - threshold;
    for (size_t t = 1; t <= limit; ++t) best = std::max(best, signal[t] - threshold);
    return best;
}

// ------------------------------------------------------- AST conversion ----

int AtomTable::intern(const Expr& e) {
    for (size_t i = 0; i < exprs.size(); ++i) {
        if (expr_equal(*exprs[i], e)) return static_cast<int>(i);
    }
    exprs.push_back(&e);
    names.push_back(dump(e));
    return static_cast<int>(exprs.size() - 1);
}

Formula formula_from_expr(const Expr& e, AtomTable& atoms) {
    switch (e.kind) {
        case ExprKind::Boolean:
            return mk_bool(e.boolean);
        case ExprKind::Not:
            return mk_not(formula_from_expr(*e.children[0], atoms));
        case ExprKind::And:
            return mk_and(formula_from_expr(*e.children[0], atoms),
                          formula_from_expr(*e.children[1], atoms));
        case ExprKind::Or:
            return mk_or(formula_from_expr(*e.children[0], atoms),
                         formula_from_expr(*e.children[1], atoms));
        case ExprKind::Always:
            return mk_always(formula_from_expr(*e.children[0], atoms));
        case ExprKind::Eventually:
            return mk_eventually(formula_from_expr(*e.children[0], atoms));
        case ExprKind::Next:
            return mk_next(formula_from_expr(*e.children[0], atoms));
        case ExprKind::Until:
            return mk_until(formula_from_expr(*e.children[0], atoms),
                            formula_from_expr(*e.children[1], atoms));
        default: {
            int idx = atoms.intern(e);
            std::string name = e.kind == ExprKind::Name ? e.text : atoms.names[idx];
            return mk_atom(idx, std::move(name));
        }
    }
}

}  // namespace scenium
