"""Deterministic builders for every identity family, each returning an
IdentityDoc: an evaluable expression plus variable-role metadata and a
short description of the family.

Naming conventions are fixed so rebuilding with equal parameters yields a
byte-identical serialization: guard variables y1..ym / x1..xm, guard
separators u0, u{i}_{j} (s0, s{i}_{j} for a second guard), factor
separators v1..v{k-1}, per-factor separators w..., subset separators
v_S{i,j,...} with 1-based sorted subset notation, partition separators
v_P{i}.

Subset- and partition-indexed products are emitted as streamed nodes:
their factors are generated on demand and never materialized at once.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

from .exactnum import Cyc, cyc_root_of_unity
from .freeexpr import (
    Expr,
    const,
    expand_stream,
    inv,
    power,
    prod,
    smul,
    star,
    stream_partitions,
    stream_perm_body,
    stream_subsets,
    sub,
    sum_,
    var,
)
from .replab import Rep, RepError, sigma_value, spectrum_key


class BuildError(ValueError):
    pass


class IdentityDoc:
    """An expression with role metadata: the unit the verifier consumes."""

    def __init__(self, family: str, expr: Expr, var_roles: dict, params: dict,
                 citation: str, is_identity: bool = True, vacuous: bool = False):
        self.family = family
        self.expr = expr
        self.var_roles = var_roles
        self.params = params
        self.citation = citation
        self.is_identity = is_identity
        self.vacuous = vacuous
        fv = expr.free_vars()
        missing = fv - set(var_roles)
        if missing:
            raise BuildError(f"variables without roles: {sorted(missing)}")

    def guard_groups(self) -> dict:
        groups: dict[str, list[str]] = {}
        for name, role in self.var_roles.items():
            if role["role"] == "guard":
                groups.setdefault(role["group"], []).append(name)
        for g in groups:
            groups[g].sort(key=_var_sort_key)
        return groups

    def vars_with_role(self, role: str) -> list[str]:
        return sorted((n for n, r in self.var_roles.items() if r["role"] == role),
                      key=_var_sort_key)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "citation": self.citation,
            "is_identity": self.is_identity,
            "vacuous": self.vacuous,
            "var_roles": {k: self.var_roles[k] for k in sorted(self.var_roles)},
            "expr": self.expr.to_json(),
        }

    @staticmethod
    def from_json(obj: dict) -> "IdentityDoc":
        return IdentityDoc(
            obj["family"],
            Expr.from_json(obj["expr"]),
            dict(obj["var_roles"]),
            dict(obj["params"]),
            obj["citation"],
            is_identity=obj.get("is_identity", True),
            vacuous=obj.get("vacuous", False),
        )

    def __repr__(self):
        return f"IdentityDoc({self.family}, vars={len(self.var_roles)})"


def _var_sort_key(name: str):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def _role(role: str, group: str | None = None) -> dict:
    out = {"role": role}
    if group is not None:
        out["group"] = group
    return out


# -- guard term ---------------------------------------------------------------


def guard_factors(m: int, var_prefix: str = "y", sep_prefix: str = "u"):
    """Flattened factor list u0 (y_i - y_j) u{i}_{j} ... plus the role map."""
    factors = [var(f"{sep_prefix}0")]
    roles = {f"{sep_prefix}0": _role("separator")}
    yvars = [var(f"{var_prefix}{i}") for i in range(1, m + 1)]
    for name in (f"{var_prefix}{i}" for i in range(1, m + 1)):
        roles[name] = _role("guard", var_prefix.upper())
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            sep = f"{sep_prefix}{i}_{j}"
            factors.append(sub(yvars[i - 1], yvars[j - 1]))
            factors.append(var(sep))
            roles[sep] = _role("separator")
    return factors, roles, yvars


def guard_C(m: int, var_prefix: str = "y", sep_prefix: str = "u") -> IdentityDoc:
    if m < 2:
        raise BuildError("guard needs m >= 2")
    factors, roles, _ = guard_factors(m, var_prefix, sep_prefix)
    return IdentityDoc(
        "guard",
        prod(factors),
        roles,
        {"m": m},
        "separated product of pairwise differences; vanishes unless all "
        "guard variables take distinct values",
    )


# -- conjugation averages -------------------------------------------------------


def psi_expr(x_expr: Expr, yvars: list[Expr]) -> Expr:
    return sum_([prod([y, x_expr, inv(y)]) for y in yvars])


def psi(m: int, x_name: str = "x", var_prefix: str = "y") -> IdentityDoc:
    if m < 1:
        raise BuildError("need m >= 1")
    yvars = [var(f"{var_prefix}{i}") for i in range(1, m + 1)]
    roles = {f"{var_prefix}{i}": _role("guard", var_prefix.upper()) for i in range(1, m + 1)}
    roles[x_name] = _role("psi-argument")
    return IdentityDoc(
        "psi",
        psi_expr(var(x_name), yvars),
        roles,
        {"m": m},
        "sum of m conjugates of one variable; a scalar multiple of the trace "
        "on a full distinct assignment",
        is_identity=False,
    )


def theta(m: int) -> IdentityDoc:
    gf, roles, yvars = guard_factors(m)
    psi_node = psi_expr(var("x"), yvars)
    yfree = var("z")
    roles["x"] = _role("psi-argument")
    roles["z"] = _role("psi-argument")
    commute = sub(prod([psi_node, yfree]), prod([yfree, psi_node]))
    return IdentityDoc(
        "theta",
        prod(gf + [commute]),
        roles,
        {"m": m},
        "guarded commutation of the conjugation average with a free variable",
    )


def character_identity(rep: Rep, separated: bool = True) -> IdentityDoc:
    if not rep.is_irreducible() or not rep.is_faithful():
        raise BuildError("character identity requires a faithful irreducible rep")
    m, n = rep.group.order, rep.dim
    values = rep.character.range_values(rep.key_conductor)
    gf, roles, yvars = guard_factors(m)
    psi_node = psi_expr(var("x"), yvars)
    roles["x"] = _role("psi-argument")
    ratio = Fraction(m, n)
    factors = []
    constants = []
    for i, chi in enumerate(values, start=1):
        c = chi * Cyc.from_rational(ratio)
        constants.append(c)
        factors.append(sum_([psi_node, const(-c)]))
        if separated and i < len(values):
            sep = f"v{i}"
            factors.append(var(sep))
            roles[sep] = _role("separator")
    return IdentityDoc(
        "character" if separated else "character-unseparated",
        prod(gf + factors),
        roles,
        {
            "m": m,
            "n": n,
            "constants": [c.to_json() for c in constants],
        },
        "guarded product of conjugation-average factors, one per character value",
    )


def dimension_identity(m: int, n: int) -> IdentityDoc:
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    terms = [prod([psi_expr(x, yvars), inv(x)]) for x in xvars]
    body = sum_(terms + [const(-Cyc.from_rational(Fraction(m, n) ** 2))])
    return IdentityDoc(
        "dimension",
        prod(gx + gy + [body]),
        roles,
        {"m": m, "n": n},
        "doubly guarded sum of averaged commutators minus the squared ratio "
        "of group order to dimension",
    )


def dimension_identity_alt(m: int, n: int) -> IdentityDoc:
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    terms = [prod([psi_expr(x, yvars), psi_expr(inv(x), yvars)]) for x in xvars]
    body = sum_(terms + [const(-Cyc.from_rational(Fraction(m**3, n**2)))])
    return IdentityDoc(
        "dimension-alt",
        prod(gx + gy + [body]),
        roles,
        {"m": m, "n": n},
        "doubly guarded sum of conjugation averages paired with their "
        "inverse-argument averages",
    )


def range_identity(rep: Rep, xi: Cyc) -> IdentityDoc:
    m, n = rep.group.order, rep.dim
    kc = rep.key_conductor
    in_range = any(v == xi for v in rep.character.range_values(kc))
    if not in_range:
        raise BuildError("value outside the character range would make the "
                         "identity vacuous by construction")
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    c = xi * Cyc.from_rational(Fraction(m, n))
    factors = []
    for i, x in enumerate(xvars, start=1):
        factors.append(sum_([psi_expr(x, yvars), const(-c)]))
        sep = f"v{i}"
        factors.append(var(sep))
        roles[sep] = _role("separator")
    return IdentityDoc(
        "range",
        prod(gx + gy + factors),
        roles,
        {"m": m, "n": n, "xi": xi.to_json()},
        "guarded product asserting one prescribed character value is attained",
    )


def level_set_identity(rep: Rep, i: int) -> IdentityDoc:
    m, n = rep.group.order, rep.dim
    kc = rep.key_conductor
    values = rep.character.range_values(kc)
    if not 1 <= i <= len(values):
        raise BuildError(f"level index {i} out of range 1..{len(values)}")
    chi_i = values[i - 1]
    t_i = len(rep.character.level_set(chi_i))
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    c = chi_i * Cyc.from_rational(Fraction(m, n))
    cbar = c.conjugate()
    bases = []
    for x in xvars:
        left = sum_([psi_expr(x, yvars), const(-c)])
        right = sum_([psi_expr(inv(x), yvars), const(-cbar)])
        bases.append(prod([left, right]))
    node = stream_subsets(bases, t_i, "v_S")
    return IdentityDoc(
        "level-set",
        prod(gx + gy + [node]),
        roles,
        {
            "m": m,
            "n": n,
            "index": i,
            "value": chi_i.to_json(),
            "level_size": t_i,
            "stream_factors": comb(m, t_i),
            "stream_separator": "v_S",
        },
        "guarded streamed product over all level-size subsets of paired "
        "squared distances to one character value",
    )


# -- conjugate class identities -------------------------------------------------


def class_identity(rep: Rep, variant: str = "character") -> IdentityDoc:
    if variant not in ("character", "adams"):
        raise BuildError("variant must be 'character' or 'adams'")
    if not rep.is_irreducible() or not rep.is_faithful():
        raise BuildError("class identity requires a faithful irreducible rep")
    group = rep.group
    n = rep.dim
    cc = group.conjugacy_classes
    s = len(cc)
    sizes = cc.sizes
    chi = rep.character
    class_vals = [chi.value(r) for r in cc.representatives]
    if group.order == 1:
        return IdentityDoc("class", const(0), {}, {"s": 0, "variant": variant},
                           "empty-class degenerate form", vacuous=True)
    roles: dict = {}
    xvars = []
    yvar_sets = []
    for r in range(1, s + 1):
        xname = f"x{r}"
        roles[xname] = _role("psi-argument")
        xvars.append(var(xname))
        ys = []
        for idx in range(1, sizes[r - 1] + 1):
            yname = f"y{r}_{idx}"
            roles[yname] = _role("guard", f"Y{r}")
            ys.append(var(yname))
        yvar_sets.append(ys)

    factors = []
    # commutator blocks force Y_r into pairwise distinct left centralizer
    # cosets (the side the conjugation averages need), hence the word
    # y_a^-1 y_b rather than y_a y_b^-1
    for r in range(1, s):
        ys = yvar_sets[r - 1]
        xr = xvars[r - 1]
        for a in range(len(ys)):
            for b in range(a + 1, len(ys)):
                word = prod([inv(ys[a]), ys[b]])
                comm = prod([inv(xr), inv(word), xr, word])
                factors.append(sub(const(1), comm))
                sep = f"u{r}_{a + 1}_{b + 1}"
                roles[sep] = _role("separator")
                factors.append(var(sep))
    # cross-class separation: x_q avoids every conjugate of x_p over Y_p;
    # conjugation is y x y^-1 so left-coset-distinct Y_p covers the class
    for p in range(1, s + 1):
        for q in range(p + 1, s + 1):
            for idx, y in enumerate(yvar_sets[p - 1], start=1):
                factors.append(sub(xvars[q - 1], prod([y, xvars[p - 1], inv(y)])))
                sep = f"v{p}_{q}_{idx}"
                roles[sep] = _role("separator")
                factors.append(var(sep))

    def e_term(a: int, b: int) -> Expr:
        # conjugation average of x_a over Y_a against class-b data
        ta, tb = sizes[a - 1], sizes[b - 1]
        if variant == "character":
            c = class_vals[b - 1] * Cyc.from_rational(Fraction(tb, n))
            base = sum_([psi_expr(xvars[a - 1], yvar_sets[a - 1]), const(-c)])
            return prod([base, star(base)])
        terms = []
        rb = cc.representatives[b - 1]
        for k in range(1, n + 1):
            ak = chi.value(group.power(rb, k))
            c = ak * Cyc.from_rational(Fraction(ta, n))
            left = sum_([psi_expr(power(xvars[a - 1], k), yvar_sets[a - 1]), const(-c)])
            right = sum_([psi_expr(power(inv(xvars[a - 1]), k), yvar_sets[a - 1]),
                          const(-c.conjugate())])
            terms.append(prod([left, right]))
        return sum_(terms)

    # same-size class groups; the permutation products over each group are
    # streamed (their size is factorial in the number of equal-size classes)
    size_groups: list[list[int]] = []
    for idx in range(1, s + 1):
        if size_groups and sizes[idx - 2] == sizes[idx - 1]:
            size_groups[-1].append(idx)
        else:
            size_groups.append([idx])
    pair_exprs = []
    for grp in size_groups:
        for a in grp:
            for b in grp:
                pair_exprs.append(e_term(a, b))
    body = stream_perm_body([len(g) for g in size_groups], pair_exprs)
    return IdentityDoc(
        "class" if variant == "character" else "class-adams",
        prod(factors + [body]),
        roles,
        {
            "s": s,
            "sizes": sizes,
            "n": n,
            "variant": variant,
            "size_groups": size_groups,
        },
        "class-forcing product times the sum over size-groups of permuted "
        "value-matching terms",
    )


# -- trace-substituted families --------------------------------------------------


def sigma_monomials(i: int) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Elementary symmetric e_i as a polynomial in power sums p_1..p_i.

    Newton recursion e_k = (1/k) sum_j (-1)^(j-1) e_{k-j} p_j over monomial
    dictionaries keyed by sorted power tuples.
    """
    e: list[dict] = [{(): Fraction(1)}]
    for k in range(1, i + 1):
        acc: dict = {}
        for j in range(1, k + 1):
            sign = Fraction(1 if j % 2 == 1 else -1, k)
            for mono, coef in e[k - j].items():
                key = tuple(sorted(mono + (j,)))
                acc[key] = acc.get(key, Fraction(0)) + sign * coef
        e.append({k_: v for k_, v in acc.items() if v})
    return [(coef, mono) for mono, coef in sorted(e[i].items(), key=lambda kv: kv[0])]


def _psi_power_nodes(x: Expr, yvars: list[Expr], ks: set[int]) -> dict[int, Expr]:
    nodes = {}
    for k in sorted(ks):
        arg = power(x, k) if k >= 0 else power(inv(x), -k)
        nodes[k] = psi_expr(arg, yvars)
    return nodes


def sigma_hat_expr(i: int, x: Expr, yvars: list[Expr], m: int, n: int,
                   psi_nodes: dict[int, Expr] | None = None) -> Expr:
    """The trace polynomial for the i-th symmetric invariant with every trace
    replaced by (n/m) times the conjugation average."""
    monos = sigma_monomials(i)
    ks = {k for _, mono in monos for k in mono}
    if psi_nodes is None:
        psi_nodes = _psi_power_nodes(x, yvars, ks)
    ratio = Fraction(n, m)
    terms = []
    for coef, mono in monos:
        scale = coef * ratio ** len(mono)
        parts = [const(scale)] + [psi_nodes[k] for k in mono]
        terms.append(prod(parts))
    return sum_(terms)


def cayley_hamilton_identity(m: int, n: int) -> IdentityDoc:
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    x = var("x")
    ks = set(range(1, n + 1))
    psi_nodes = _psi_power_nodes(x, yvars, ks)
    terms = [power(x, n)]
    for i in range(1, n + 1):
        sig = sigma_hat_expr(i, x, yvars, m, n, psi_nodes)
        body = sig if i == n else prod([sig, power(x, n - i)])
        terms.append(smul(Fraction(-1) ** i, body))
    return IdentityDoc(
        "cayley-hamilton",
        prod(gf + [sum_(terms)]),
        roles,
        {"m": m, "n": n},
        "guarded characteristic polynomial with traces replaced by scaled "
        "conjugation averages",
    )


def sigma_identity(rep: Rep, i: int) -> IdentityDoc:
    m, n = rep.group.order, rep.dim
    if not 1 <= i <= n:
        raise BuildError(f"sigma index {i} out of range 1..{n}")
    kc = rep.key_conductor
    seen = {}
    for g in range(m):
        v = sigma_value(rep, g, i)
        seen.setdefault(v.key(kc), v)
    deltas = [seen[k] for k in sorted(seen)]
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    sig = sigma_hat_expr(i, var("x"), yvars, m, n)
    factors = []
    for idx, d in enumerate(deltas, start=1):
        factors.append(sum_([sig, const(-d)]))
        sep = f"vd{idx}"
        factors.append(var(sep))
        roles[sep] = _role("separator")
    return IdentityDoc(
        "sigma",
        prod(gf + factors),
        roles,
        {"m": m, "n": n, "index": i, "values": [d.to_json() for d in deltas]},
        "guarded product over all attained values of one symmetric invariant",
    )


def su_membership_identity(m: int, n: int) -> IdentityDoc:
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    sig = sigma_hat_expr(n, var("x"), yvars, m, n)
    return IdentityDoc(
        "su-membership",
        prod(gf + [sum_([sig, const(-1)])]),
        roles,
        {"m": m, "n": n},
        "guarded determinant-equals-one test",
    )


# -- Adams / spectral families ----------------------------------------------------


def adams_block(rep: Rep, i: int) -> Expr:
    """The i-th spectral-block expression in the default variables x, y1..ym."""
    yvars = [var(f"y{j}") for j in range(1, rep.group.order + 1)]
    return adams_block_expr(rep, i, var("x"), yvars)


def adams_block_expr(rep: Rep, i: int, x: Expr, yvars: list[Expr]) -> Expr:
    rows = rep.adams_rows()
    if not 1 <= i <= len(rows):
        raise BuildError(f"block index {i} out of range 1..{len(rows)}")
    row = rows[i - 1]
    m, n = rep.group.order, rep.dim
    ratio = Cyc.from_rational(Fraction(m, n))
    terms = []
    for k in range(1, n + 1):
        a = row[k - 1] * ratio
        left = sum_([psi_expr(power(x, k), yvars), const(-a)])
        right = sum_([psi_expr(power(inv(x), k), yvars), const(-a.conjugate())])
        terms.append(prod([left, right]))
    return sum_(terms)


def spectrum_identity(rep: Rep) -> IdentityDoc:
    m = rep.group.order
    blocks = rep.adams_partition
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    factors = []
    for i in range(1, len(blocks) + 1):
        factors.append(adams_block_expr(rep, i, var("x"), yvars))
        if i < len(blocks):
            sep = f"v{i}"
            factors.append(var(sep))
            roles[sep] = _role("separator")
    return IdentityDoc(
        "spectrum",
        prod(gf + factors),
        roles,
        {"m": m, "n": rep.dim, "blocks": [len(b) for b in blocks]},
        "guarded product of spectral-block factors, one per distinct "
        "power-trace vector",
    )


def spectrum_level_identity(rep: Rep, i: int) -> IdentityDoc:
    m = rep.group.order
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    factors = []
    for j, x in enumerate(xvars, start=1):
        factors.append(adams_block_expr(rep, i, x, yvars))
        sep = f"w{j}"
        factors.append(var(sep))
        roles[sep] = _role("separator")
    return IdentityDoc(
        "spectrum-level",
        prod(gx + gy + factors),
        roles,
        {"m": m, "n": rep.dim, "index": i},
        "guarded product asserting one spectral block is attained by every "
        "guard position",
    )


def gassmann_identity(rep: Rep, i: int) -> IdentityDoc:
    m = rep.group.order
    blocks = rep.adams_partition
    if not 1 <= i <= len(blocks):
        raise BuildError(f"block index {i} out of range 1..{len(blocks)}")
    t = len(blocks[i - 1])
    gx, roles_x, xvars = guard_factors(m, "x", "s")
    gy, roles_y, yvars = guard_factors(m, "y", "u")
    roles = {**roles_x, **roles_y}
    bases = [adams_block_expr(rep, i, x, yvars) for x in xvars]
    node = stream_subsets(bases, t, "v_S")
    return IdentityDoc(
        "gassmann",
        prod(gx + gy + [node]),
        roles,
        {
            "m": m,
            "n": rep.dim,
            "index": i,
            "block_size": t,
            "stream_factors": comb(m, t),
            "stream_separator": "v_S",
        },
        "guarded streamed product over block-size subsets of spectral-block sums",
    )


def central_series_gassmann_identity(rep: Rep, t: int, i: int) -> IdentityDoc:
    if t < 1:
        raise BuildError("need t >= 1")
    group = rep.group
    series = group.upper_central_series()
    zt = series[t] if t < len(series) else series[-1]
    outside = sorted(set(range(group.order)) - set(zt))
    s = len(outside)
    if s == 0:
        return IdentityDoc(
            "central-series-gassmann", const(0), {},
            {"t": t, "index": i, "outside": 0},
            "degenerate form: the series step swallows the whole group",
            vacuous=True,
        )
    kc = rep.key_conductor
    blocks: dict[tuple, list[int]] = {}
    for g in outside:
        key = tuple(v.key(kc) for v in rep.adams_vector(g))
        blocks.setdefault(key, []).append(g)
    block_list = sorted(blocks.values(), key=lambda b: min(b))
    if not 1 <= i <= len(block_list):
        raise BuildError(f"block index {i} out of range 1..{len(block_list)}")
    size = len(block_list[i - 1])
    gx, roles_x, xvars = guard_factors(s, "x", "s")
    gy, roles_y, yvars = guard_factors(group.order, "y", "u")
    roles = {**roles_x, **roles_y}
    # spectral-block sums restricted to the complement of the series term
    rows = [rep.adams_vector(min(b)) for b in block_list]
    row = rows[i - 1]
    m, n = group.order, rep.dim
    ratio = Cyc.from_rational(Fraction(m, n))
    bases = []
    for x in xvars:
        terms = []
        for k in range(1, n + 1):
            a = row[k - 1] * ratio
            left = sum_([psi_expr(power(x, k), yvars), const(-a)])
            right = sum_([psi_expr(power(inv(x), k), yvars), const(-a.conjugate())])
            terms.append(prod([left, right]))
        bases.append(sum_(terms))
    node = stream_subsets(bases, size, "v_S")
    # commutator chain factors: (c_t(x, U_x) - 1) v_x per guard position
    tail = []
    for j, x in enumerate(xvars, start=1):
        word = x
        for step in range(1, t + 1):
            uname = f"c{j}_{step}"
            roles[uname] = _role("psi-argument")
            u = var(uname)
            word = prod([inv(word), inv(u), word, u])
        tail.append(sub(word, const(1)))
        sep = f"vx{j}"
        roles[sep] = _role("separator")
        tail.append(var(sep))
    return IdentityDoc(
        "central-series-gassmann",
        prod(gx + gy + [node] + tail),
        roles,
        {
            "t": t,
            "index": i,
            "m": m,
            "n": n,
            "outside": s,
            "block_size": size,
            "stream_separator": "v_S",
        },
        "streamed spectral-block product over the complement of a central "
        "series term, times iterated-commutator exit factors",
    )


# -- eigenvalue families -----------------------------------------------------------


def minimal_poly_identity(rep: Rep, variant: str = "maximal") -> IdentityDoc:
    from .replab import eig_maximal, eig_union

    kc = rep.key_conductor
    x = var("x")
    roles = {"x": _role("psi-argument")}
    if variant == "union":
        exps = eig_union(rep)
        factors = [sub(x, const(cyc_root_of_unity(kc, e))) for e in exps]
        return IdentityDoc(
            "minimal-poly-union",
            prod(factors),
            roles,
            {"eigenvalues": list(exps), "conductor": kc},
            "one-variable product over every eigenvalue attained by the "
            "representation",
        )
    if variant != "maximal":
        raise BuildError("variant must be 'union' or 'maximal'")
    max_sets = eig_maximal(rep)
    factors = []
    for i, eset in enumerate(max_sets, start=1):
        poly = prod([sub(x, const(cyc_root_of_unity(kc, e))) for e in eset])
        factors.append(poly)
        if i < len(max_sets):
            sep = f"v{i}"
            roles[sep] = _role("separator")
            factors.append(var(sep))
    return IdentityDoc(
        "minimal-poly",
        prod(factors),
        roles,
        {"maximal_sets": [list(s) for s in max_sets], "conductor": kc},
        "separated product of minimal polynomials of the maximal "
        "eigenvalue sets",
    )


# -- central partitions --------------------------------------------------------------


def central_partition_identity(rep: Rep, partition: list[list[int]]) -> IdentityDoc:
    group = rep.group
    m = group.order
    flat = sorted(g for block in partition for g in block)
    if flat != list(range(m)):
        raise BuildError("blocks must partition the group")
    targets = []
    for block in partition:
        acc = None
        for g in block:
            acc = rep.images[g] if acc is None else acc + rep.images[g]
        lam = acc.is_scalar()
        if lam is None:
            raise BuildError("a block sum is not scalar; not a central partition")
        targets.append(lam * Cyc.from_rational(Fraction(1, len(block))))
    gx, roles, xvars = guard_factors(m, "x", "s")
    sizes = [len(b) for b in partition]
    node = stream_partitions([f"x{i}" for i in range(1, m + 1)], sizes, targets, "v_P")
    return IdentityDoc(
        "central-partition",
        prod(gx + [node]),
        roles,
        {
            "m": m,
            "sizes": sizes,
            "targets": [t.to_json() for t in targets],
            "stream_separator": "v_P",
        },
        "guarded streamed product over typed partitions of squared distances "
        "of block averages from their scalar targets",
    )


def find_central_partitions(rep: Rep, max_block: int = 6) -> list[dict]:
    """Subsets X (|X| <= max_block) with scalar sum; each induces (X, rest)."""
    if max_block > 6:
        raise BuildError("subset search is limited to blocks of size <= 6")
    group = rep.group
    cc = group.conjugacy_classes
    images = rep.images
    results = []

    def class_union(subset) -> bool:
        members = set(subset)
        for g in subset:
            if not cc.classes[cc.index_of(g)] <= members:
                return False
        return True

    def walk(start: int, chosen: list[int], acc):
        if chosen:
            lam = acc.is_scalar()
            if lam is not None:
                results.append({
                    "subset": tuple(chosen),
                    "scalar": lam,
                    "nontrivial": not class_union(chosen),
                })
        if len(chosen) == max_block:
            return
        for g in range(start, group.order):
            walk(g + 1, chosen + [g], images[g] if acc is None else acc + images[g])

    walk(0, [], None)
    return results


# -- relation probability ---------------------------------------------------------


def probability_identity(u: Expr, t: int, m: int) -> IdentityDoc:
    """Streamed product asserting u vanishes on at least t assignment tuples."""
    if t < 1:
        raise BuildError("need t >= 1")
    uvars = sorted(u.free_vars(), key=_var_sort_key)
    p = len(uvars)
    if t > m**p:
        raise BuildError(f"t={t} exceeds the universe size {m}**{p}")
    roles: dict = {}
    guard_parts: list = []
    var_sets = []
    for axis in range(1, p + 1):
        gf, g_roles, gvars = guard_factors(m, f"x{axis}_", f"s{axis}_")
        # rename the guard group per axis
        for name, role in g_roles.items():
            if role["role"] == "guard":
                role = _role("guard", f"X{axis}")
            roles[name] = role
        guard_parts.extend(gf)
        var_sets.append(gvars)
    bases = []
    for combo in itertools.product(*[range(m) for _ in range(p)]):
        mapping = {uvars[k]: var_sets[k][combo[k]] for k in range(p)}
        inst = substitute(u, mapping)
        bases.append(prod([inst, star(inst)]))
    node = stream_subsets(bases, t, "v_S")
    return IdentityDoc(
        "probability",
        prod(guard_parts + [node]),
        roles,
        {"m": m, "p": p, "t": t, "stream_factors": comb(m**p, t),
         "stream_separator": "v_S"},
        "guarded streamed product over t-subsets of assignment tuples of the "
        "squared relation values",
    )


def substitute(e: Expr, mapping: dict[str, Expr], _memo=None) -> Expr:
    if _memo is None:
        _memo = {}
    hit = _memo.get(id(e))
    if hit is not None:
        return hit
    if e.kind == "var":
        out = mapping.get(e.value, e)
    elif e.kind == "const":
        out = e
    elif e.kind == "inv":
        out = inv(substitute(e.children[0], mapping, _memo))
    elif e.kind == "star":
        out = star(substitute(e.children[0], mapping, _memo))
    elif e.kind == "sum":
        out = sum_([substitute(c, mapping, _memo) for c in e.children])
    elif e.kind == "prod":
        out = prod([substitute(c, mapping, _memo) for c in e.children])
    else:
        raise BuildError(f"cannot substitute inside {e.kind}")
    _memo[id(e)] = out
    return out


# -- central Laurent polynomial -----------------------------------------------------


def central_laurent(m: int) -> IdentityDoc:
    if m < 2:
        raise BuildError("need m >= 2")
    gf, roles, yvars = guard_factors(m)
    guard_node = prod(gf)
    body = sum_([prod([y, guard_node, inv(y)]) for y in yvars])
    return IdentityDoc(
        "central-laurent",
        body,
        roles,
        {"m": m},
        "conjugation average of the guard product: scalar-valued on every "
        "assignment, and not identically zero on a faithful irreducible "
        "representation of a group of order m",
        is_identity=False,
    )


# -- separating identity for the metacyclic family -----------------------------------


def gamma_separating_identity(entry, l: int) -> IdentityDoc:
    gamma = entry.meta.get("gamma")
    if gamma is None:
        raise BuildError("entry is not a metacyclic catalog entry")
    m, n, r, d, nprime = gamma.m, gamma.n, gamma.r, gamma.d, gamma.nprime
    if nprime % d != 0:
        raise BuildError("requires the cyclic part exponent divisible by the "
                         "diagonal block size")
    mn = m * n
    gf, roles, yvars = guard_factors(mn)
    roles["x"] = _role("psi-argument")
    roles["z"] = _role("psi-argument")
    x, y = var("x"), var("z")
    sig = sigma_hat_expr(d, y, yvars, mn, d)
    factors = list(gf)
    # determinant values cover every residue class except 1
    for tt in range(2, nprime + 1):
        factors.append(sum_([sig, const(-cyc_root_of_unity(nprime, (l * tt) % nprime))]))
    factors.append(sub(prod([y, power(x, n), inv(y)]), power(x, r * n)))
    return IdentityDoc(
        "gamma-separation",
        prod(factors),
        roles,
        {"m": m, "n": n, "r": r, "d": d, "nprime": nprime, "l": l},
        "guarded determinant-value factors times the conjugation relation on "
        "n-th powers",
    )


# -- disjunctive, fixed-point and standard identities ---------------------------------


def disjunctive_identity(words: list[Expr]) -> IdentityDoc:
    if not words:
        raise BuildError("need at least one word")
    roles = {"u0": _role("separator")}
    factors: list[Expr] = [var("u0")]
    for i, w in enumerate(words, start=1):
        factors.append(sub(w, const(1)))
        sep = f"u{i}"
        roles[sep] = _role("separator")
        factors.append(var(sep))
        for name in w.free_vars():
            roles.setdefault(name, _role("psi-argument"))
    return IdentityDoc(
        "disjunctive",
        prod(factors),
        roles,
        {"clauses": len(words)},
        "separated product of word-minus-one factors",
    )


def trace_disjunction_identity(m: int, n: int, words: list[Expr],
                               trace_polys: list[list[tuple[Fraction, list[Expr]]]]
                               ) -> IdentityDoc:
    """Separated product of plain words and trace polynomials, every formal
    trace replaced by (n/m) times the conjugation average over a fresh guard.

    A trace polynomial is a list of monomials (coefficient, [words inside
    traces]); the empty word list is a constant monomial.
    """
    gf, roles, yvars = guard_factors(m)
    factors = list(gf)
    sep_idx = 0
    for w in words:
        factors.append(w)
        sep_idx += 1
        sep = f"t{sep_idx}"
        roles[sep] = _role("separator")
        factors.append(var(sep))
        for name in w.free_vars():
            roles.setdefault(name, _role("psi-argument"))
    ratio = Fraction(n, m)
    for j, poly in enumerate(trace_polys):
        terms = []
        for coef, inner in poly:
            parts: list[Expr] = [const(Fraction(coef))]
            for w in inner:
                parts.append(smul(ratio, psi_expr(w, yvars)))
                for name in w.free_vars():
                    roles.setdefault(name, _role("psi-argument"))
            terms.append(prod(parts))
        factors.append(sum_(terms))
        if j < len(trace_polys) - 1:
            sep_idx += 1
            sep = f"t{sep_idx}"
            roles[sep] = _role("separator")
            factors.append(var(sep))
    return IdentityDoc(
        "trace-disjunction",
        prod(factors),
        roles,
        {"m": m, "n": n, "clauses": len(words), "trace_clauses": len(trace_polys)},
        "guarded disjunction of word clauses and trace-polynomial clauses",
    )


def s4_separating_identity(rep: Rep) -> IdentityDoc:
    """The 24-variable identity separating the two faithful 3-dim characters
    of the order-24 symmetric group: built from the sixth-power clause and the
    conjugation average matched to the rep's own 4-cycle character value."""
    group = rep.group
    m, n = group.order, rep.dim
    if (m, n) != (24, 3):
        raise BuildError("expects a 3-dimensional rep of the order-24 group")
    four_cycle = next(g for g in range(m) if group.element_order(g) == 4)
    c = rep.character.value(four_cycle) * Cyc.from_rational(Fraction(m, n))
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    roles["y25"] = _role("separator")
    x = var("x")
    clause = sub(power(x, 6), const(1))
    psi_factor = sum_([psi_expr(x, yvars), const(-c)])
    return IdentityDoc(
        "s4-separation",
        prod(gf + [clause, var("y25"), psi_factor]),
        roles,
        {"m": m, "n": n, "constant": c.to_json()},
        "sixth-power clause or the 4-cycle character value is attained",
    )


def fixed_point_identity(rep: Rep, i: int) -> IdentityDoc:
    """For a fixed-point-free rep: order clauses against the i-th element
    order, followed by the vanishing cyclic average."""
    group = rep.group
    orders = group.order_statistics()
    if not 1 <= i <= len(orders):
        raise BuildError(f"order index {i} out of range 1..{len(orders)}")
    d_i = orders[i - 1]
    m, n = group.order, rep.dim
    gf, roles, yvars = guard_factors(m)
    roles["x"] = _role("psi-argument")
    x = var("x")
    factors = list(gf)
    for d in orders:
        if d == d_i:
            continue
        factors.append(sub(power(x, d), const(1)))
        sep = f"yd{d}"
        roles[sep] = _role("separator")
        factors.append(var(sep))
    # distinct fixed-space dimensions of order-d_i cyclic subgroups
    dims = set()
    from .replab import fixed_point_dimension

    for g in range(group.order):
        if group.element_order(g) == d_i:
            cyc = group.subgroup_generated([g])
            dims.add(fixed_point_dimension(rep, sorted(cyc)))
    psi_nodes = _psi_power_nodes(x, yvars, set(range(1, d_i)))
    avg = sum_([const(m)] + [psi_nodes[k] for k in range(1, d_i)])
    for idx, dim in enumerate(sorted(dims), start=1):
        target = Fraction(m, n) * d_i * dim
        factors.append(sum_([avg, const(-target)]))
        sep = f"w{idx}"
        roles[sep] = _role("separator")
        factors.append(var(sep))
    return IdentityDoc(
        "fixed-point",
        prod(factors),
        roles,
        {"m": m, "n": n, "order": d_i, "dims": sorted(dims)},
        "order clauses against one element order, then cyclic averages "
        "pinned to fixed-space dimensions",
    )


def standard_identity(k: int) -> IdentityDoc:
    """Alternating sum over all orderings of k variables, built as a shared
    sub-product DAG so evaluation costs O(2^k k) products."""
    if k < 1:
        raise BuildError("need k >= 1")
    names = [f"y{i}" for i in range(1, k + 1)]
    roles = {nm: _role("psi-argument") for nm in names}
    nodes: dict[frozenset, Expr] = {}

    def node(s: frozenset) -> Expr:
        if s in nodes:
            return nodes[s]
        if len(s) == 1:
            out = var(names[next(iter(s))])
        else:
            terms = []
            for i in sorted(s):
                sign = (-1) ** len([j for j in s if j > i])
                terms.append(smul(sign, prod([node(s - {i}), var(names[i])])))
            out = sum_(terms)
        nodes[s] = out
        return out

    expr = node(frozenset(range(k)))
    return IdentityDoc(
        "standard",
        expr,
        roles,
        {"k": k},
        "fully alternating multilinear sum over all orderings of the variables",
    )


def expand_doc(doc: IdentityDoc, limit: int = 10_000) -> IdentityDoc:
    """Unroll streamed products into explicit factors (size-guarded)."""

    def rewrite(e: Expr, memo: dict) -> Expr:
        hit = memo.get(id(e))
        if hit is not None:
            return hit
        if e.kind in ("stream_subsets", "stream_partitions"):
            out = expand_stream(e, limit)
        elif e.kind in ("sum", "prod"):
            children = [rewrite(c, memo) for c in e.children]
            out = sum_(children) if e.kind == "sum" else prod(children)
        elif e.kind == "inv":
            out = inv(rewrite(e.children[0], memo))
        elif e.kind == "star":
            out = star(rewrite(e.children[0], memo))
        else:
            out = e
        memo[id(e)] = out
        return out

    expr = rewrite(doc.expr, {})
    roles = dict(doc.var_roles)
    for name in expr.free_vars() - set(roles):
        roles[name] = _role("subset-tag")
    return IdentityDoc(doc.family + "-expanded", expr, roles, dict(doc.params),
                       doc.citation, is_identity=doc.is_identity, vacuous=doc.vacuous)
