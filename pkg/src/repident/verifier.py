"""Decides whether an identity holds in a representation, with graded
evidence:

- exhaustive: every assignment enumerated (budget-bounded);
- guarded: guard sets range over full group enumerations (canonical plus
  K random orderings), argument variables enumerated or sampled, streamed
  products decided by zero-subset counting;
- structured: the assignment family that the construction singles out
  (class representatives x centralizer transversals, or series-complement
  tuples), plus random sampling;
- sampled(N, seed): N uniform assignments, exact evaluation per sample.

A fails verdict always carries a counterexample whose re-evaluation is
nonzero (or, for streamed products too large to materialize, an
assignment on which no factor vanishes, which with fresh separators and
an irreducible target implies nonvanishing).
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

from .exactnum import Cyc
from .freeexpr import (
    Evaluator,
    Expr,
    StreamNonvanishing,
    StreamUndecided,
    prod,
    star,
)
from .idfactory import IdentityDoc
from .matrices import Mat
from .replab import Rep


class VerifierError(RuntimeError):
    pass


class BudgetExceeded(VerifierError):
    pass


class Verdict:
    def __init__(self, status: str, evidence: str, detail: dict | None = None,
                 counterexample: dict | None = None, timing_ms: float | None = None):
        self.status = status
        self.evidence = evidence
        self.detail = detail or {}
        self.counterexample = counterexample
        self.timing_ms = timing_ms
        if status == "fails" and counterexample is None:
            raise VerifierError("a fails verdict requires a counterexample")

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_json(self) -> dict:
        out = {"status": self.status, "evidence": self.evidence}
        out.update(self.detail)
        if self.counterexample is not None:
            out["witness"] = self.counterexample
        if self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out

    def __repr__(self):
        return f"Verdict({self.status}/{self.evidence})"


def _root_factors(expr: Expr) -> list[Expr]:
    return list(expr.children) if expr.kind == "prod" else [expr]


class _Session:
    """One verification run: owns the evaluator, RNG and witness search."""

    def __init__(self, doc: IdentityDoc, rep: Rep, seed: int, sep_tries: int = 40,
                 arg_vars=None):
        self.doc = doc
        self.rep = rep
        self.rng = random.Random(seed)
        self.seed = seed
        self.sep_tries = sep_tries
        self.ev = Evaluator(rep, use_cross_cache=True)
        self.factors = _root_factors(doc.expr)
        self.separators = set(doc.vars_with_role("separator")) | set(
            doc.vars_with_role("subset-tag")
        )
        self.sep_list = sorted(self.separators)
        arg_set = set(arg_vars or ())
        self.static_factors = []
        self.dynamic_factors = []
        self.last_undecided = False
        self.undecided_count = 0
        for f in self.factors:
            if f.kind == "var" and f.value in self.separators:
                continue
            if arg_set and f.free_vars() & arg_set:
                self.dynamic_factors.append(f)
            else:
                self.static_factors.append(f)

    def scan_factors(self, assignment: dict, factors) -> tuple[bool, bool]:
        """(found_zero, stream_blocked) over the given factor subset.

        Sets the per-call undecided flag when a streamed factor could neither
        vanish nor certify nonvanishing.
        """
        memo: dict = {}
        blocked = False
        self.last_undecided = False
        for f in factors:
            try:
                val = self.ev._eval(f, assignment, memo)
            except StreamNonvanishing:
                blocked = True
                continue
            except StreamUndecided:
                self.last_undecided = True
                continue
            if self.ev._is_zero(val):
                return True, False
        return False, blocked

    def vanishes(self, assignment: dict) -> tuple[bool, bool]:
        """(vanishes, stream_blocked): scan all root factors for an exact zero.

        stream_blocked means a streamed factor certified nonvanishing, so no
        explicit witness value can be materialized; the undecided flag marks
        assignments whose status is unknown.
        """
        memo: dict = {}
        blocked = False
        self.last_undecided = False
        for f in self.factors:
            if f.kind == "var" and f.value in self.separators:
                continue
            try:
                val = self.ev._eval(f, assignment, memo)
            except StreamNonvanishing:
                blocked = True
                continue
            except StreamUndecided:
                self.last_undecided = True
                continue
            if self.ev._is_zero(val):
                return True, False
        return False, blocked

    def witness_value(self, assignment: dict) -> dict | None:
        """Choose separators greedily left to right so the running product
        stays nonzero.  On an irreducible target a choice always exists: the
        two-sided ideal of a nonzero prefix meets any nonzero factor, and by
        linearity over the span of the image some group element realizes it.
        """
        m = self.rep.group.order
        memo: dict = {}
        assign = dict(assignment)
        prefix: Mat | None = None
        pending: list[str] = []
        for child in self.factors:
            if child.kind == "var" and child.value in self.separators:
                pending.append(child.value)
                continue
            try:
                val = self.ev._eval(child, assign, memo)
            except StreamNonvanishing:
                return None
            f = self.ev._to_mat(val)
            if f.is_zero():
                raise VerifierError("internal: vanishing factor inside witness search")
            if prefix is None:
                for s in pending:
                    assign[s] = 0
                prefix = f
                pending = []
                continue
            if not pending:
                prefix = prefix * f
                if prefix.is_zero():
                    return None  # adjacent factors collapse; no separator freedom
                continue
            # one free separator slot carries the choice; earlier ones identity
            for s in pending[:-1]:
                assign[s] = 0
            slot = pending[-1]
            pending = []
            chosen = None
            for u in range(m):
                cand = prefix * self.rep.image(u) * f
                if not cand.is_zero():
                    chosen = u
                    prefix = cand
                    break
            if chosen is None:
                return None
            assign[slot] = chosen
        for s in pending:
            assign[s] = 0
        if prefix is None or prefix.is_zero():
            return None
        return assign

    def decide(self, assignment: dict):
        """Full decision for one assignment of non-separator variables.

        Returns None when the expression vanishes for every separator choice
        reachable here, a witness assignment dict when a nonzero value was
        materialized, "blocked" when a streamed factor certifies nonvanishing
        without a materializable value, or "undecided" when a streamed factor
        could not be decided (counted, never treated as a verdict).
        """
        vanished, blocked = self.vanishes(assignment)
        if vanished:
            return None
        if self.last_undecided:
            self.undecided_count += 1
            return "undecided"
        if blocked:
            return "blocked"
        return self.witness_value(assignment)

    def fail_verdict(self, outcome, assignment: dict, evidence: str, detail: dict) -> Verdict:
        if outcome == "blocked" or outcome is None:
            witness = {k: int(v) for k, v in assignment.items() if not isinstance(v, Mat)}
            detail = dict(detail)
            detail["witness_kind"] = (
                "no-vanishing-factor (streamed product; nonzero by simplicity "
                "with fresh separators)"
            )
            return Verdict("fails", "structured", detail, witness)
        witness = {k: int(v) for k, v in outcome.items()}
        return Verdict("fails", evidence, detail, witness)


def holds_exhaustive(doc: IdentityDoc, rep: Rep, budget: int = 300_000, seed: int = 0,
                     jobs: int = 1) -> Verdict:
    t0 = time.time()
    if doc.vacuous:
        return Verdict("holds", "exhaustive", {"assignments": 0, "vacuous": True},
                       timing_ms=(time.time() - t0) * 1000)
    names = sorted(doc.expr.free_vars())
    m = rep.group.order
    total = m ** len(names)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    session = _Session(doc, rep, seed)
    if jobs > 1:
        verdict = _parallel_scan(doc, rep, names, total, seed, jobs)
        if verdict is not None:
            verdict.timing_ms = (time.time() - t0) * 1000
            return verdict
        return Verdict("holds", "exhaustive", {"assignments": total, "jobs": jobs},
                       timing_ms=(time.time() - t0) * 1000)
    for combo in itertools.product(range(m), repeat=len(names)):
        assignment = dict(zip(names, combo))
        if _full_zero(session, assignment) is False:
            return Verdict("fails", "exhaustive", {"assignments": total},
                           dict(assignment), timing_ms=(time.time() - t0) * 1000)
    detail = {"assignments": total}
    if session.undecided_count:
        detail["undecided"] = session.undecided_count
    return Verdict("holds", "exhaustive", detail,
                   timing_ms=(time.time() - t0) * 1000)


def _full_zero(session: _Session, assignment: dict):
    """Exact zero test of the whole expression under a total assignment.

    True/False when decided; None when a streamed factor was undecidable.
    """
    vanished, blocked = session.vanishes(assignment)
    if vanished:
        return True
    if session.last_undecided:
        session.undecided_count += 1
        return None
    if blocked:
        return False
    try:
        value = session.ev.evaluate(session.doc.expr, assignment)
    except StreamNonvanishing:
        return False
    except StreamUndecided:
        session.undecided_count += 1
        return None
    return value.is_zero()


def _parallel_scan(doc, rep, names, total, seed, jobs):
    import multiprocessing as mp

    m = rep.group.order
    ranges = []
    step = (total + jobs - 1) // jobs
    for start in range(0, total, step):
        ranges.append((start, min(start + step, total)))
    ctx = mp.get_context("fork")
    with ctx.Pool(jobs, initializer=_worker_init, initargs=(doc, rep, names, seed)) as pool:
        for result in pool.imap_unordered(_worker_scan, ranges):
            if result is not None:
                assignment = dict(zip(names, result))
                return Verdict("fails", "exhaustive",
                               {"assignments": total, "jobs": jobs}, assignment)
    return None


_WORKER_STATE: dict = {}


def _worker_init(doc, rep, names, seed):
    _WORKER_STATE["session"] = _Session(doc, rep, seed)
    _WORKER_STATE["names"] = names
    _WORKER_STATE["m"] = rep.group.order


def _worker_scan(rng_pair):
    start, end = rng_pair
    session = _WORKER_STATE["session"]
    names = _WORKER_STATE["names"]
    m = _WORKER_STATE["m"]
    k = len(names)
    for linear in range(start, end):
        combo = []
        x = linear
        for _ in range(k):
            combo.append(x % m)
            x //= m
        assignment = dict(zip(names, combo))
        if _full_zero(session, assignment) is False:
            return tuple(combo)
    return None


def holds_guarded(doc: IdentityDoc, rep: Rep, seed: int = 0, orderings: int = 5,
                  arg_budget: int = 20_000, samples_if_over: int = 500) -> Verdict:
    t0 = time.time()
    if doc.vacuous:
        return Verdict("holds", "guarded", {"vacuous": True},
                       timing_ms=(time.time() - t0) * 1000)
    m = rep.group.order
    groups = doc.guard_groups()
    if not groups:
        raise VerifierError("document declares no guard roles; use another mode")
    for label, vars_ in groups.items():
        if len(vars_) != m:
            raise VerifierError(
                f"guard group {label} has {len(vars_)} variables but the group "
                f"has order {m}; use the structured mode"
            )
    args = doc.vars_with_role("psi-argument")
    session = _Session(doc, rep, seed, arg_vars=args)
    rng = session.rng
    exhaustive_args = m ** len(args) <= arg_budget if args else True
    checked = 0
    for rnd in range(orderings + 1):
        assignment: dict = {s: 0 for s in session.sep_list}
        for label, vars_ in groups.items():
            order = list(range(m))
            if rnd > 0:
                rng.shuffle(order)
            for v, g in zip(vars_, order):
                assignment[v] = g
        # arguments need a value even for the static scan's shared memo
        for name in args:
            assignment[name] = 0
        if exhaustive_args:
            arg_iter = itertools.product(range(m), repeat=len(args))
        else:
            arg_iter = (
                tuple(rng.randrange(m) for _ in args) for _ in range(samples_if_over)
            )
        static_zero, blocked0 = session.scan_factors(assignment, session.static_factors)
        if static_zero:
            checked += 1
            continue
        for combo in arg_iter:
            for name, val in zip(args, combo):
                assignment[name] = val
            checked += 1
            vanished, blocked = session.scan_factors(assignment, session.dynamic_factors)
            if vanished:
                continue
            outcome = session.decide(dict(assignment))
            if outcome is None or outcome == "undecided":
                continue
            detail = {
                "orderings": orderings,
                "seed": seed,
                "checked": checked,
                "args_exhaustive": exhaustive_args,
            }
            return session.fail_verdict(outcome, dict(assignment), "guarded", detail)
    detail = {
        "orderings": orderings,
        "seed": seed,
        "checked": checked,
        "args_exhaustive": exhaustive_args,
    }
    if session.undecided_count:
        detail["undecided"] = session.undecided_count
    return Verdict("holds", "guarded", detail, timing_ms=(time.time() - t0) * 1000)


def holds_sampled(doc: IdentityDoc, rep: Rep, n: int = 500, seed: int = 0) -> Verdict:
    t0 = time.time()
    if doc.vacuous:
        return Verdict("holds", "sampled", {"n": 0, "seed": seed, "vacuous": True},
                       timing_ms=(time.time() - t0) * 1000)
    m = rep.group.order
    names = sorted(doc.expr.free_vars())
    session = _Session(doc, rep, seed)
    rng = session.rng
    for _ in range(n):
        assignment = {name: rng.randrange(m) for name in names}
        if _full_zero(session, assignment) is False:
            outcome = session.decide(assignment)
            if outcome is None or outcome == "undecided":
                outcome = dict(assignment)
            return session.fail_verdict(outcome, assignment, "sampled",
                                        {"n": n, "seed": seed})
    detail = {"n": n, "seed": seed}
    if session.undecided_count:
        detail["undecided"] = session.undecided_count
    return Verdict("holds", "sampled", detail, timing_ms=(time.time() - t0) * 1000)


def holds_structured(doc: IdentityDoc, rep: Rep, seed: int = 0, orderings: int = 3,
                     extra_samples: int = 200) -> Verdict:
    """Family-specific assignment enumeration plus random sampling."""
    t0 = time.time()
    if doc.vacuous:
        return Verdict("holds", "structured", {"vacuous": True},
                       timing_ms=(time.time() - t0) * 1000)
    if doc.family in ("class", "class-adams"):
        verdict = _structured_class(doc, rep, seed, orderings)
    elif doc.family == "central-series-gassmann":
        verdict = _structured_series(doc, rep, seed, orderings)
    else:
        raise VerifierError(f"no structured family handler for {doc.family}")
    if verdict is not None:
        verdict.timing_ms = (time.time() - t0) * 1000
        return verdict
    sampled = holds_sampled(doc, rep, n=extra_samples, seed=seed + 1)
    if not sampled.holds:
        return sampled
    return Verdict("holds", "structured",
                   {"seed": seed, "orderings": orderings,
                    "extra_samples": extra_samples},
                   timing_ms=(time.time() - t0) * 1000)


def _structured_class(doc: IdentityDoc, rep: Rep, seed: int, orderings: int,
                      max_bijections: int = 24):
    """Theorem-style family: x_r over class representatives matched by size,
    Y_r over left transversals of the centralizers.

    The slot-to-class bijections within each size group are enumerated up to
    a cap: any single size-valid bijection already witnesses a failing
    value-matching body, and the holding direction is additionally covered
    by the random-sample supplement."""
    group = rep.group
    sizes = doc.params["sizes"]
    s = doc.params["s"]
    cc = group.conjugacy_classes
    session = _Session(doc, rep, seed)
    rng = session.rng
    # candidate classes per slot, by exact size match
    slots = [[ci for ci in range(len(cc)) if cc.sizes[ci] == sizes[r]] for r in range(s)]
    size_groups = doc.params["size_groups"]
    base_assign = {sep: 0 for sep in session.sep_list}

    def left_transversal(x: int, shuffle: bool) -> list[int]:
        cent = set(group.centralizer(x))
        reps, seen = [], set()
        order = list(range(group.order))
        if shuffle:
            rng.shuffle(order)
        for g in order:
            coset = frozenset(group.table[g][c] for c in cent)
            if coset not in seen:
                seen.add(coset)
                pick = g if shuffle else min(coset)
                reps.append(pick)
        if shuffle:
            rng.shuffle(reps)
        return reps

    # all ways to biject same-size slots onto distinct classes of that size
    choices_per_group = []
    for grp in size_groups:
        size = sizes[grp[0] - 1]
        classes = [ci for ci in range(len(cc)) if cc.sizes[ci] == size]
        if len(classes) < len(grp):
            choices_per_group.append([])
        else:
            choices_per_group.append(list(itertools.permutations(classes, len(grp))))
    if any(not c for c in choices_per_group):
        return None  # the forcing product vanishes identically; fall to sampling
    combos = itertools.islice(itertools.product(*choices_per_group), max_bijections)
    for combo in combos:
        class_for_slot = {}
        for grp, perm in zip(size_groups, combo):
            for slot, ci in zip(grp, perm):
                class_for_slot[slot] = ci
        for rnd in range(orderings + 1):
            assignment = dict(base_assign)
            ok = True
            for r in range(1, s + 1):
                ci = class_for_slot[r]
                members = sorted(cc.classes[ci])
                x_val = members[0] if rnd == 0 else rng.choice(members)
                assignment[f"x{r}"] = x_val
                reps = left_transversal(x_val, shuffle=rnd > 0)
                if len(reps) < sizes[r - 1]:
                    ok = False
                    break
                for idx in range(sizes[r - 1]):
                    assignment[f"y{r}_{idx + 1}"] = reps[idx]
            if not ok:
                continue
            outcome = session.decide(assignment)
            if outcome is not None and outcome != "undecided":
                return session.fail_verdict(outcome, assignment, "structured",
                                            {"seed": seed, "family": doc.family})
    return None


def _structured_series(doc: IdentityDoc, rep: Rep, seed: int, orderings: int):
    group = rep.group
    s = doc.params["outside"]
    t = doc.params["t"]
    session = _Session(doc, rep, seed)
    rng = session.rng
    series = group.upper_central_series()
    zt = series[t] if t < len(series) else series[-1]
    outside = sorted(set(range(group.order)) - set(zt))
    if len(outside) != s:
        return None
    m = group.order
    xnames = [f"x{i}" for i in range(1, s + 1)]
    unames = [f"c{j}_{st}" for j in range(1, s + 1) for st in range(1, t + 1)]
    ynames = [f"y{i}" for i in range(1, m + 1)]
    for rnd in range(orderings + 1):
        assignment = {sep: 0 for sep in session.sep_list}
        order = list(range(m))
        if rnd > 0:
            rng.shuffle(order)
        for v, g in zip(ynames, order):
            assignment[v] = g
        xs = list(outside)
        if rnd > 0:
            rng.shuffle(xs)
        for v, g in zip(xnames, xs):
            assignment[v] = g
        for u in unames:
            assignment[u] = 0 if rnd == 0 else rng.randrange(m)
        outcome = session.decide(assignment)
        if outcome is not None and outcome != "undecided":
            return session.fail_verdict(outcome, assignment, "structured",
                                        {"seed": seed, "family": doc.family})
    return None


def check(doc: IdentityDoc, rep: Rep, mode: str = "auto", seed: int = 0,
          budget: int = 300_000, n: int = 500, orderings: int = 5,
          jobs: int = 1) -> Verdict:
    if mode == "exhaustive":
        return holds_exhaustive(doc, rep, budget=budget, seed=seed, jobs=jobs)
    if mode == "guarded":
        return holds_guarded(doc, rep, seed=seed, orderings=orderings)
    if mode == "sampled":
        return holds_sampled(doc, rep, n=n, seed=seed)
    if mode == "structured":
        return holds_structured(doc, rep, seed=seed)
    if mode != "auto":
        raise VerifierError(f"unknown mode {mode!r}")
    if doc.vacuous:
        return Verdict("holds", "structured", {"vacuous": True})
    if doc.family in ("class", "class-adams", "central-series-gassmann"):
        return holds_structured(doc, rep, seed=seed)
    m = rep.group.order
    groups = doc.guard_groups()
    if groups and all(len(v) == m for v in groups.values()):
        return holds_guarded(doc, rep, seed=seed, orderings=orderings)
    total = m ** len(doc.expr.free_vars())
    if total <= budget:
        return holds_exhaustive(doc, rep, budget=budget, seed=seed, jobs=jobs)
    return holds_sampled(doc, rep, n=n, seed=seed)


# -- scalar and probabilistic analytics ---------------------------------------


def scalar_check(expr: Expr, rep: Rep, assignment: dict):
    """The scalar c with value c*I, or None if the value is not scalar."""
    return Evaluator(rep).scalar_of(expr, assignment)


def expectation(expr: Expr, rep: Rep, budget: int = 300_000) -> Mat:
    names = sorted(expr.free_vars())
    m = rep.group.order
    total = m ** len(names)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    ev = Evaluator(rep, use_cross_cache=False)
    acc = None
    for combo in itertools.product(range(m), repeat=len(names)):
        value = ev.evaluate(expr, dict(zip(names, combo)))
        acc = value if acc is None else acc + value
    return acc.scale(Cyc.from_rational(Fraction(1, total)))


def relation_probability(expr: Expr, rep: Rep, budget: int = 300_000) -> Fraction:
    names = sorted(expr.free_vars())
    m = rep.group.order
    total = m ** len(names)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    ev = Evaluator(rep, use_cross_cache=False)
    hits = 0
    for combo in itertools.product(range(m), repeat=len(names)):
        if ev.evaluate(expr, dict(zip(names, combo))).is_zero():
            hits += 1
    return Fraction(hits, total)


def conditional_relation_probability(u: Expr, v: Expr, rep: Rep,
                                     budget: int = 300_000) -> Fraction:
    """Pr(u | v) via the positive-semidefinite combination u u* + v v*."""
    names = sorted(u.free_vars() | v.free_vars())
    m = rep.group.order
    total = m ** len(names)
    if total > budget:
        raise BudgetExceeded(f"{total} assignments exceed the budget {budget}")
    ev = Evaluator(rep, use_cross_cache=False)
    uu = prod([u, star(u)])
    vv = prod([v, star(v)])
    both = 0
    v_only = 0
    from .freeexpr import sum_ as _sum

    combined = _sum([uu, vv])
    for combo in itertools.product(range(m), repeat=len(names)):
        assignment = dict(zip(names, combo))
        if ev.evaluate(vv, assignment).is_zero():
            v_only += 1
            if ev.evaluate(combined, assignment).is_zero():
                both += 1
    if v_only == 0:
        raise VerifierError("conditioning relation never holds")
    return Fraction(both, v_only)


# -- exact sampling over determinant-one rational matrices ----------------------


def random_sl2(rng: random.Random, shears: int = 4, height: int = 10) -> Mat:
    """Product of elementary shears with bounded rational entries (det = 1)."""
    acc = Mat.identity(2)
    for _ in range(shears):
        q = Fraction(rng.randint(-height, height), rng.randint(1, height))
        c = Cyc.from_rational(q)
        one = Cyc.one()
        zero = Cyc.zero()
        shear = Mat(((one, c), (zero, one))) if rng.random() < 0.5 else Mat(
            ((one, zero), (c, one))
        )
        acc = acc * shear
    return acc


def sl2_sample_check(expr: Expr, trials: int = 1000, seed: int = 0) -> Verdict:
    t0 = time.time()
    names = sorted(expr.free_vars())
    rng = random.Random(seed)
    ev = Evaluator(rep=None, dim=2)
    for trial in range(trials):
        assignment = {name: random_sl2(rng) for name in names}
        value = ev.evaluate(expr, assignment)
        if not value.is_zero():
            witness = {
                name: [[str(v.rational_value()) for v in row] for row in mat.rows]
                for name, mat in assignment.items()
            }
            return Verdict("fails", "sampled",
                           {"n": trials, "seed": seed, "trial": trial},
                           witness, timing_ms=(time.time() - t0) * 1000)
    return Verdict("holds", "sampled", {"n": trials, "seed": seed},
                   timing_ms=(time.time() - t0) * 1000)


def sl2_trace_identity_check(trials: int = 1000, seed: int = 0) -> Verdict:
    """x^2 - tr(x) x + det_2(x) I with the actual trace and the half-difference
    determinant expression, on exact random determinant-one matrices."""
    t0 = time.time()
    rng = random.Random(seed)
    half = Cyc.from_rational(Fraction(1, 2))
    for trial in range(trials):
        a = random_sl2(rng)
        tr = a.trace()
        tr2 = (a * a).trace()
        det2 = (tr * tr - tr2) * half
        value = a * a - a.scale(tr) + Mat.identity(2).scale(det2)
        if not value.is_zero():
            witness = {"x": [[str(v.rational_value()) for v in row] for row in a.rows]}
            return Verdict("fails", "sampled", {"n": trials, "seed": seed},
                           witness, timing_ms=(time.time() - t0) * 1000)
    return Verdict("holds", "sampled", {"n": trials, "seed": seed},
                   timing_ms=(time.time() - t0) * 1000)
