#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scenium/ast.hpp"

namespace scenium {

// Four-valued finite-trace verdict.
enum class Verdict { True, False, PresumablyTrue, PresumablyFalse };

const char* verdict_name(Verdict v);  // TRUE / FALSE / PRESUMABLY_TRUE / PRESUMABLY_FALSE
inline bool verdict_accepts(Verdict v) {
    return v == Verdict::True || v == Verdict::PresumablyTrue;
}
Verdict verdict_negate(Verdict v);  // swaps T<->F and Tp<->Fp

struct TemporalFormula;
using Formula = std::shared_ptr<const TemporalFormula>;

struct TemporalFormula {
    enum class Kind { True, False, Atom, Not, And, Or, Always, Eventually, Next, Until };

    Kind kind{};
    int atom = -1;      // Atom: index into the valuation vector
    std::string name;   // Atom: display name
    Formula a, b;
};

// Smart constructors.  mk_and / mk_or / mk_not apply only rewrites that
// preserve all three finite-trace valuations (strong, weak, neutral):
// constant folding, idempotence, one-level flattening, absorption, and
// double negation.  Complementation (p and not p -> false) and temporal
// rewrites are deliberately not applied; they are unsound here.
Formula mk_true();
Formula mk_false();
Formula mk_bool(bool v);
Formula mk_atom(int index, std::string name);
Formula mk_not(Formula f);
Formula mk_and(Formula a, Formula b);
Formula mk_or(Formula a, Formula b);
Formula mk_always(Formula f);
Formula mk_eventually(Formula f);
Formula mk_next(Formula f);
Formula mk_until(Formula a, Formula b);

bool formula_equal(const Formula& a, const Formula& b);
std::string formula_to_string(const Formula& f);

// One LTL progression step: atoms replaced by their current truth values,
// temporal operators unrolled by one state.
Formula progress(const Formula& f, const std::vector<bool>& atoms);

// Incremental monitor: feed one state at a time, finalize at trace end.
class Monitor {
  public:
    explicit Monitor(Formula f) : cur_(std::move(f)), prev_(cur_) {}

    void step(const std::vector<bool>& atoms);
    int steps() const { return steps_; }
    const Formula& current() const { return cur_; }

    // Set once progression reaches constant true/false; absorbing.
    std::optional<Verdict> definite() const;

    // Verdict at trace end; requires at least one step.
    Verdict finalize() const;

  private:
    Formula cur_;
    // Residual from before the newest state, plus that state's atom values.
    // finalize() needs them: progressing through the final state would turn
    // "next p" into a bare "p" and lose the fact that the obligation fell
    // past the end of the trace.
    Formula prev_;
    std::vector<bool> last_;
    int steps_ = 0;
};

// Independent whole-trace reference evaluator (strong / weak / neutral
// recursive valuations); the trace is a list of per-step atom valuations.
Verdict evaluate_whole_trace(const Formula& f, const std::vector<std::vector<bool>>& trace);

// max over t in [0, min(window, len-1)] of signal[t] - threshold.
double stl_bounded_eventually_robustness(const std::vector<double>& signal,
                                         double threshold, int window);

// ---- bridging from parsed expressions --------------------------------------

// Atoms are the maximal non-temporal, non-boolean-connective subexpressions
// of a require formula; structurally equal subexpressions share an index.
struct AtomTable {
    std::vector<const Expr*> exprs;
    std::vector<std::string> names;

    int intern(const Expr& e);
};

Formula formula_from_expr(const Expr& e, AtomTable& atoms);

}  // namespace scenium
