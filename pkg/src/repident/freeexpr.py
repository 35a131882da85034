"""Evaluable expression DAGs over the group algebra of a free group.

An Expr is a DAG with node kinds Const / Var / Inv / Star / Sum / Prod,
plus two streamed product kinds (indexed over subsets or over typed
partitions of a variable set) whose factors are generated on demand and
never held resident at once.

Expressions are structural objects: words are never freely reduced, so
y * y^-1 persists as a Prod node.  Evaluation semantics is unaffected;
structural equality is simply finer than equality in the group algebra.

Evaluation maps Vars to group element indices (with a Rep supplying the
matrices) or directly to matrices.  Words are composed in the group and
only materialized to matrices at Sum boundaries or mixed products, which
is what makes guard-heavy identities affordable.  A Prod evaluates its
factors left to right and short-circuits to zero on the first factor
that is exactly zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .exactnum import Cyc
from .matrices import Mat


class NonGroupSubtermError(ValueError):
    """Inv applied to a subexpression that did not evaluate to an invertible value."""


class StreamNonvanishing(Exception):
    """A streamed product has no vanishing factor under the given assignment."""

    def __init__(self, zero_count: int, needed: int):
        self.zero_count = zero_count
        self.needed = needed
        super().__init__(f"no vanishing factor (zeros={zero_count}, needed={needed})")


class StreamUndecided(Exception):
    """A streamed product could not be decided within budget."""


class Var:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return f"Var({self.name})"

    def __eq__(self, other):
        return isinstance(other, Var) and other.name == self.name

    def __hash__(self):
        return hash(("Var", self.name))


class Expr:
    __slots__ = ("kind", "value", "children", "_fvs", "_fvt", "_star", "extra")

    def __init__(self, kind: str, value=None, children: tuple = (), extra=None):
        self.kind = kind
        self.value = value
        self.children = children
        self.extra = extra
        self._fvs = None
        self._fvt = None
        self._star = None

    def sorted_vars(self) -> tuple[str, ...]:
        if self._fvt is None:
            self._fvt = tuple(sorted(self.free_vars()))
        return self._fvt

    # -- free variables ------------------------------------------------

    def free_vars(self) -> frozenset[str]:
        if self._fvs is None:
            if self.kind == "var":
                self._fvs = frozenset({self.value})
            elif self.kind == "const":
                self._fvs = frozenset()
            elif self.kind in ("sum", "prod"):
                acc = frozenset()
                for c in self.children:
                    acc |= c.free_vars()
                self._fvs = acc
            elif self.kind in ("inv", "star"):
                self._fvs = self.children[0].free_vars()
            elif self.kind in ("stream_subsets", "stream_partitions",
                               "stream_perm_body"):
                acc = frozenset()
                for c in self.children:
                    acc |= c.free_vars()
                self._fvs = acc
            else:
                raise AssertionError(self.kind)
        return self._fvs

    def __repr__(self):
        if self.kind == "var":
            return self.value
        if self.kind == "const":
            return repr(self.value)
        if self.kind == "inv":
            return f"({self.children[0]!r})^-1"
        if self.kind == "star":
            return f"star({self.children[0]!r})"
        if self.kind == "sum":
            return "(" + " + ".join(repr(c) for c in self.children) + ")"
        if self.kind == "prod":
            return "(" + "*".join(repr(c) for c in self.children) + ")"
        return f"<{self.kind}>"

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "const":
            return {"kind": "const", "value": self.value.to_json()}
        if self.kind == "var":
            return {"kind": "var", "name": self.value}
        if self.kind in ("inv", "star"):
            return {"kind": self.kind, "child": self.children[0].to_json()}
        if self.kind in ("sum", "prod"):
            return {"kind": self.kind, "children": [c.to_json() for c in self.children]}
        if self.kind == "stream_subsets":
            t, sep_prefix, psd = self.extra
            return {
                "kind": "stream_subsets",
                "subset_size": t,
                "separator_prefix": sep_prefix,
                "psd": psd,
                "bases": [c.to_json() for c in self.children],
            }
        if self.kind == "stream_partitions":
            var_names, sizes, targets, sep_prefix = self.extra
            return {
                "kind": "stream_partitions",
                "vars": list(var_names),
                "sizes": list(sizes),
                "targets": [t.to_json() for t in targets],
                "separator_prefix": sep_prefix,
            }
        if self.kind == "stream_perm_body":
            (group_sizes,) = self.extra
            return {
                "kind": "stream_perm_body",
                "group_sizes": list(group_sizes),
                "pairs": [c.to_json() for c in self.children],
            }
        raise AssertionError(self.kind)

    @staticmethod
    def from_json(obj: dict) -> "Expr":
        kind = obj["kind"]
        if kind == "const":
            return const(Cyc.from_json(obj["value"]))
        if kind == "var":
            return var(obj["name"])
        if kind == "inv":
            return inv(Expr.from_json(obj["child"]))
        if kind == "star":
            return Expr("star", children=(Expr.from_json(obj["child"]),))
        if kind == "sum":
            return sum_([Expr.from_json(c) for c in obj["children"]])
        if kind == "prod":
            return prod([Expr.from_json(c) for c in obj["children"]])
        if kind == "stream_subsets":
            return stream_subsets(
                [Expr.from_json(c) for c in obj["bases"]],
                obj["subset_size"],
                obj["separator_prefix"],
                psd=obj["psd"],
            )
        if kind == "stream_partitions":
            return stream_partitions(
                obj["vars"],
                obj["sizes"],
                [Cyc.from_json(t) for t in obj["targets"]],
                obj["separator_prefix"],
            )
        if kind == "stream_perm_body":
            return stream_perm_body(
                obj["group_sizes"],
                [Expr.from_json(c) for c in obj["pairs"]],
            )
        raise ValueError(f"unknown node kind {kind!r}")


# -- constructors (with canonical flattening) ----------------------------


def const(c) -> Expr:
    if isinstance(c, (int, Fraction)):
        c = Cyc.from_rational(c)
    return Expr("const", value=c)


def var(name) -> Expr:
    if isinstance(name, Var):
        name = name.name
    return Expr("var", value=name)


def inv(e: Expr) -> Expr:
    return Expr("inv", children=(e,))


def sum_(terms: Iterable[Expr]) -> Expr:
    flat = []
    for t in terms:
        if t.kind == "sum":
            flat.extend(t.children)
        else:
            flat.append(t)
    if not flat:
        return const(0)
    if len(flat) == 1:
        return flat[0]
    return Expr("sum", children=tuple(flat))


def prod(factors: Iterable[Expr]) -> Expr:
    flat = []
    for f in factors:
        if f.kind == "prod":
            flat.extend(f.children)
        else:
            flat.append(f)
    if not flat:
        return const(1)
    if len(flat) == 1:
        return flat[0]
    return Expr("prod", children=tuple(flat))


def smul(c, e: Expr) -> Expr:
    return prod([const(c), e])


def power(e: Expr, k: int) -> Expr:
    if k == 0:
        return const(1)
    if k < 0:
        return inv(power(e, -k))
    return prod([e] * k) if k > 1 else e


def sub(a: Expr, b: Expr) -> Expr:
    return sum_([a, smul(-1, b)])


def stream_subsets(bases, t: int, sep_prefix: str, psd: bool = True) -> Expr:
    return Expr("stream_subsets", children=tuple(bases), extra=(t, sep_prefix, psd))


def stream_partitions(var_names, sizes, targets, sep_prefix: str) -> Expr:
    return Expr(
        "stream_partitions",
        children=tuple(var(v) for v in var_names),
        extra=(tuple(var_names), tuple(sizes), tuple(targets), sep_prefix),
    )


def stream_perm_body(group_sizes, pair_exprs) -> Expr:
    """Sum over groups of the product over all slot permutations of the
    within-group pair sums: sum_i prod_{nu in S(A_i)} sum_a pairs[a][nu(a)].

    pair_exprs is flattened group-by-group in row-major (a, b) order; the
    node never materializes the factorial-size products.
    """
    return Expr("stream_perm_body", children=tuple(pair_exprs),
                extra=(tuple(group_sizes),))


def star_node(e: Expr) -> Expr:
    return Expr("star", children=(e,))


# -- the star involution --------------------------------------------------


def star(e: Expr) -> Expr:
    """Conjugate of a group-algebra element: coefficients conjugated, words inverted."""
    if e._star is not None:
        return e._star
    if e.kind == "const":
        out = const(e.value.conjugate())
    elif e.kind == "var":
        out = inv(e)
    elif e.kind == "inv":
        out = inv(star(e.children[0]))
    elif e.kind == "star":
        out = e.children[0]
    elif e.kind == "sum":
        out = sum_([star(c) for c in e.children])
    elif e.kind == "prod":
        out = prod([star(c) for c in reversed(e.children)])
    elif e.kind == "stream_subsets":
        t, sep_prefix, psd = e.extra
        out = stream_subsets([star(b) for b in e.children], t, sep_prefix + "*", psd)
    else:
        raise ValueError(f"star unsupported on {e.kind}")
    e._star = out
    return out


def free_vars(e: Expr) -> frozenset[str]:
    return e.free_vars()


# -- evaluation ------------------------------------------------------------

_G, _S, _M = 0, 1, 2  # value tags: group index, scalar, matrix


class Evaluator:
    """Evaluates Exprs against a Rep (or raw matrix assignments).

    cross_cache, when enabled, memoizes sum/prod node values across calls
    keyed by the node and the values of its free variables; this pays off
    in verifier loops where a guard enumeration is fixed while one
    argument variable sweeps the group.
    """

    def __init__(self, rep=None, use_cross_cache: bool = False, shortcircuit: bool = True,
                 dim: int | None = None):
        self.rep = rep
        self.dim = dim if dim is not None else (rep.dim if rep is not None else None)
        self.shortcircuit = shortcircuit
        self.cross_cache: Optional[dict] = {} if use_cross_cache else None
        self.stream_budget = 250_000
        self.partition_budget = 300_000

    # value helpers

    def _to_mat(self, val) -> Mat:
        tag, payload = val
        if tag == _M:
            return payload
        if tag == _G:
            return self.rep.image(payload)
        # scalar
        if self.dim is None:
            raise ValueError("cannot materialize a scalar without a dimension hint")
        return Mat.scalar(self.dim, payload)

    def _is_zero(self, val) -> bool:
        tag, payload = val
        if tag == _G:
            return False
        if tag == _S:
            return payload.is_zero()
        return payload.is_zero()

    def evaluate(self, e: Expr, assignment: dict) -> Mat:
        val = self._eval(e, assignment, {})
        return self._to_mat(val)

    def evaluate_value(self, e: Expr, assignment: dict):
        """Raw tagged value; used by the verifier for zero tests without materializing."""
        return self._eval(e, assignment, {})

    def scalar_of(self, e: Expr, assignment: dict):
        """The scalar c when the value equals c*I, else None."""
        val = self._eval(e, assignment, {})
        tag, payload = val
        if tag == _S:
            return payload
        if tag == _G:
            payload = self.rep.image(payload)
        return payload.is_scalar()

    def _cache_key(self, e: Expr, assignment: dict):
        try:
            vals = tuple(assignment[v] for v in e.sorted_vars())
        except KeyError:
            missing = sorted(set(e.free_vars()) - set(assignment))
            raise KeyError(f"assignment missing variables {missing}")
        if any(not isinstance(v, int) for v in vals):
            return None
        return (id(e), vals)

    def _eval(self, e: Expr, assignment: dict, memo: dict):
        key = id(e)
        hit = memo.get(key)
        if hit is not None:
            return hit
        kind = e.kind
        if kind == "const":
            out = (_S, e.value)
        elif kind == "var":
            v = assignment[e.value]
            out = (_G, v) if isinstance(v, int) else (_M, v)
        elif kind == "inv":
            out = self._eval_inv(e, assignment, memo)
        elif kind == "star":
            out = self._eval(star(e), assignment, memo)
        elif kind == "sum":
            out = self._eval_sum(e, assignment, memo)
        elif kind == "prod":
            out = self._eval_prod(e, assignment, memo)
        elif kind == "stream_subsets":
            out = self._eval_stream_subsets(e, assignment, memo)
        elif kind == "stream_partitions":
            out = self._eval_stream_partitions(e, assignment, memo)
        elif kind == "stream_perm_body":
            out = self._eval_stream_perm_body(e, assignment, memo)
        else:
            raise AssertionError(kind)
        memo[key] = out
        return out

    def _eval_inv(self, e, assignment, memo):
        tag, payload = self._eval(e.children[0], assignment, memo)
        if tag == _G:
            return (_G, self.rep.group.inverse[payload] if self.rep else payload)
        if tag == _S:
            if payload.is_zero():
                raise NonGroupSubtermError("inverse of a zero scalar subterm")
            return (_S, payload.inverse())
        try:
            return (_M, payload.inverse())
        except ZeroDivisionError as exc:
            raise NonGroupSubtermError("inverse of a singular matrix subterm") from exc

    def _eval_sum(self, e, assignment, memo):
        cached = None
        if self.cross_cache is not None:
            cached = self._cache_key(e, assignment)
            if cached is not None and cached in self.cross_cache:
                return self.cross_cache[cached]
        vals = [self._eval(c, assignment, memo) for c in e.children]
        if all(tag == _S for tag, _ in vals):
            acc = vals[0][1]
            for tag, v in vals[1:]:
                acc = acc + v
            out = (_S, acc)
        else:
            mat = None
            for val in vals:
                m = self._to_mat(val)
                mat = m if mat is None else mat + m
            out = (_M, mat)
        if cached is not None:
            self.cross_cache[cached] = out
            if len(self.cross_cache) > 400_000:
                self.cross_cache.clear()
        return out

    def _eval_prod(self, e, assignment, memo):
        cached = None
        if self.cross_cache is not None:
            cached = self._cache_key(e, assignment)
            if cached is not None and cached in self.cross_cache:
                return self.cross_cache[cached]
        vals = []
        zero = None
        for c in e.children:
            val = self._eval(c, assignment, memo)
            if self._is_zero(val):
                zero = (_S, Cyc.zero())
                if self.shortcircuit:
                    break
            vals.append(val)
        if zero is not None:
            out = zero
        else:
            out = self._combine_product(vals)
        if cached is not None:
            self.cross_cache[cached] = out
            if len(self.cross_cache) > 400_000:
                self.cross_cache.clear()
        return out

    def _combine_product(self, vals):
        scalar = None
        cores = []  # tagged values, scalars folded out
        for tag, payload in vals:
            if tag == _S:
                scalar = payload if scalar is None else scalar * payload
            elif tag == _G and cores and cores[-1][0] == _G and self.rep is not None:
                cores[-1] = (_G, self.rep.group.table[cores[-1][1]][payload])
            else:
                cores.append((tag, payload))
        if not cores:
            return (_S, Cyc.one() if scalar is None else scalar)
        if len(cores) == 1 and scalar is None:
            return cores[0]
        mat = None
        for val in cores:
            m = self._to_mat(val)
            mat = m if mat is None else mat * m
        if scalar is not None:
            mat = mat.scale(scalar)
        return (_M, mat)

    # -- streamed products ------------------------------------------------

    def _eval_stream_subsets(self, e, assignment, memo):
        t, _sep, psd = e.extra
        base_vals = [self._eval(b, assignment, memo) for b in e.children]
        zeros = sum(1 for v in base_vals if self._is_zero(v))
        if zeros >= t:
            return (_S, Cyc.zero())
        # no subset of size t can consist of vanishing terms only; with
        # positive semidefinite terms every factor is then nonzero
        if psd:
            raise StreamNonvanishing(zeros, t)
        raise StreamUndecided("non-psd streamed product with no vanishing subset")

    def _eval_stream_perm_body(self, e, assignment, memo):
        """Sum over groups of factorial-size permutation products, decided by
        perfect matching over vanishing pair terms.

        A permutation factor sum_a E[a][nu(a)] vanishes when every chosen pair
        vanishes, so the product over all permutations of a group vanishes iff
        the vanishing pairs contain a perfect matching.  When every group has
        one, the whole body is zero.  Otherwise the body is certified nonzero
        only when all pair values are scalars (the guard-respecting case,
        where each term is a nonnegative multiple of the identity); mixed
        matrix values are reported undecided.
        """
        (group_sizes,) = e.extra
        offset = 0
        all_scalar = True
        all_matched = True
        for size in group_sizes:
            vals = []
            for a in range(size):
                row = []
                for b in range(size):
                    val = self._eval(e.children[offset + a * size + b], assignment, memo)
                    row.append(val)
                    if val[0] != _S:
                        mat = self._to_mat(val)
                        if mat.is_scalar() is None:
                            all_scalar = False
                vals.append(row)
            offset += size * size
            zero = [[self._is_zero(vals[a][b]) for b in range(size)] for a in range(size)]
            if not _has_perfect_matching(zero):
                all_matched = False
        if all_matched:
            return (_S, Cyc.zero())
        if all_scalar:
            raise StreamNonvanishing(0, 1)
        raise StreamUndecided("permutation body with non-scalar pair values")

    def _eval_stream_partitions(self, e, assignment, memo):
        var_names, sizes, targets, _sep = e.extra
        mats = [self._to_mat(self._eval(c, assignment, memo)) for c in e.children]
        n = mats[0].n
        target_mats = [Mat.scalar(n, c) for c in targets]
        found = self._find_zero_partition(mats, list(sizes), target_mats, assignment, var_names)
        if found:
            return (_S, Cyc.zero())
        raise StreamNonvanishing(0, 1)

    def _find_zero_partition(self, mats, sizes, target_mats, assignment, var_names) -> bool:
        """Search for a typed partition whose every block sum matches its target."""
        m = len(mats)
        # hint: when values are group elements of the rep's group, try
        # assembling blocks from whole conjugacy classes first
        if self.rep is not None and all(isinstance(assignment.get(v), int) for v in var_names):
            if self._class_assembly_hint(assignment, var_names, sizes, target_mats, mats):
                return True
        order = sorted(range(len(sizes)), key=lambda i: sizes[i])
        budget = [self.partition_budget]

        def backtrack(bi, remaining):
            if budget[0] <= 0:
                raise StreamUndecided("partition search budget exhausted")
            if bi == len(order):
                return not remaining
            i = order[bi]
            size, target = sizes[i], target_mats[i]
            for subset in combinations(sorted(remaining), size):
                budget[0] -= 1
                acc = None
                for idx in subset:
                    acc = mats[idx] if acc is None else acc + mats[idx]
                total = acc if acc is not None else Mat.zeros(target.n)
                if (total - target.scale(Cyc.from_rational(size))).is_zero():
                    if backtrack(bi + 1, remaining - set(subset)):
                        return True
            return False

        return backtrack(0, set(range(m)))

    def _class_assembly_hint(self, assignment, var_names, sizes, target_mats, mats) -> bool:
        group = self.rep.group
        cls_of = {}
        for i, v in enumerate(var_names):
            cls_of.setdefault(group.class_of(assignment[v]), []).append(i)
        # try to match blocks to unions of classes greedily by exact size+sum
        items = sorted(cls_of.items(), key=lambda kv: -len(kv[1]))
        used = [False] * len(items)

        def fits(block_idx, chosen, size_left, acc):
            if size_left == 0:
                target = target_mats[block_idx].scale(Cyc.from_rational(sizes[block_idx]))
                return (acc - target).is_zero() if acc is not None else target.is_zero()
            for k, (_, idxs) in enumerate(items):
                if used[k] or len(idxs) > size_left:
                    continue
                used[k] = True
                s = None
                for i in idxs:
                    s = mats[i] if s is None else s + mats[i]
                new_acc = s if acc is None else acc + s
                if fits(block_idx, chosen + [k], size_left - len(idxs), new_acc):
                    return True
                used[k] = False
            return False

        def assemble(block_idx):
            if block_idx == len(sizes):
                return all(used)
            if fits(block_idx, [], sizes[block_idx], None):
                if assemble(block_idx + 1):
                    return True
            return False

        try:
            return assemble(0)
        except RecursionError:
            return False


def _has_perfect_matching(adj: list[list[bool]]) -> bool:
    """Bipartite perfect matching on a boolean adjacency square (Kuhn)."""
    n = len(adj)
    match_of = [-1] * n

    def try_augment(a, seen):
        for b in range(n):
            if adj[a][b] and not seen[b]:
                seen[b] = True
                if match_of[b] == -1 or try_augment(match_of[b], seen):
                    match_of[b] = a
                    return True
        return False

    for a in range(n):
        if not try_augment(a, [False] * n):
            return False
    return True


def expand_stream(e: Expr, limit: int = 10_000) -> Expr:
    """Materialize a streamed product into an explicit Prod (size-guarded)."""
    from math import comb

    if e.kind == "stream_subsets":
        t, sep_prefix, _ = e.extra
        count = comb(len(e.children), t)
        if count > limit:
            raise StreamUndecided(f"{count} factors exceed the expansion limit {limit}")
        factors = []
        for subset in combinations(range(len(e.children)), t):
            name = sep_prefix + "{" + ",".join(str(i + 1) for i in subset) + "}"
            factors.append(sum_([e.children[i] for i in subset]))
            factors.append(var(name))
        return prod(factors)
    if e.kind == "stream_perm_body":
        from itertools import permutations
        from math import factorial

        (group_sizes,) = e.extra
        total = 1
        for size in group_sizes:
            total *= factorial(size)
        if total > limit:
            raise StreamUndecided(f"{total} permutation factors exceed the limit {limit}")
        terms = []
        offset = 0
        for size in group_sizes:
            factors = []
            for nu in sorted(permutations(range(size))):
                factors.append(sum_(
                    [e.children[offset + a * size + nu[a]] for a in range(size)]
                ))
            terms.append(prod(factors))
            offset += size * size
        return sum_(terms)
    if e.kind == "stream_partitions":
        var_names, sizes, targets, sep_prefix = e.extra
        parts = list(_typed_partitions(list(range(len(var_names))), list(sizes)))
        if len(parts) > limit:
            raise StreamUndecided(f"{len(parts)} factors exceed the expansion limit {limit}")
        factors = []
        for pi, blocks in enumerate(parts):
            terms = []
            for (block, target) in zip(blocks, targets):
                avg = smul(Fraction(1, len(block)), sum_([var(var_names[i]) for i in block]))
                diff = sum_([avg, const(-target)])
                terms.append(prod([diff, star(diff)]))
            factors.append(sum_(terms))
            factors.append(var(f"{sep_prefix}{{{pi + 1}}}"))
        return prod(factors)
    return e


def _typed_partitions(universe: list[int], sizes: list[int]):
    if not sizes:
        if not universe:
            yield []
        return
    first, rest = sizes[0], sizes[1:]
    anchor_free = len(universe) == sum(sizes)
    for block in combinations(universe, first):
        remaining = [x for x in universe if x not in block]
        for tail in _typed_partitions(remaining, rest):
            yield [list(block)] + tail
