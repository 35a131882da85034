"""Finite groups as multiplication tables, plus the derived structure the
identity machinery consumes: conjugacy classes (with a fixed total order),
element orders, centralizers, the upper central series, the subgroup
lattice and brute-force automorphisms.

Everything is index-based: elements are 0..m-1 with 0 the identity.
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations


class GroupError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, table, labels=None, name=None, validate=True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name or f"group{self.order}"
        self.labels = list(labels) if labels is not None else [str(i) for i in range(self.order)]
        if validate:
            self._validate()
        self.inverse = self._inverses()

    def _validate(self):
        m = self.order
        if any(len(row) != m for row in self.table):
            raise GroupError("table is not square")
        full = set(range(m))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise GroupError(f"row {i} is not a permutation (not a Latin square)")
        for j in range(m):
            if {self.table[i][j] for i in range(m)} != full:
                raise GroupError(f"column {j} is not a permutation (not a Latin square)")
        if any(self.table[0][j] != j for j in range(m)) or any(
            self.table[i][0] != i for i in range(m)
        ):
            raise GroupError("element 0 is not a two-sided identity")
        if m <= 512:
            # Light's associativity test: it suffices to check a(bc)=(ab)c
            # for a,b in a generating set; rows of generators define the
            # candidate translations.
            gens = self.small_generating_set()
            for a in gens:
                ta = self.table[a]
                for b in range(m):
                    tab = self.table[ta[b]]
                    tb = self.table[b]
                    for c in range(m):
                        if tab[c] != ta[tb[c]]:
                            raise GroupError(f"associativity fails at ({a},{b},{c})")

    def _inverses(self):
        inv = [None] * self.order
        for i, row in enumerate(self.table):
            for j, v in enumerate(row):
                if v == 0:
                    inv[i] = j
        if any(v is None for v in inv):
            raise GroupError("missing inverses")
        return tuple(inv)

    # -- basic operations -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, a: int, g: int) -> int:
        """g * a * g^-1."""
        return self.table[self.table[g][a]][self.inverse[g]]

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inverse[a], -e)
        result = 0
        base = a
        while e:
            if e & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            e >>= 1
        return result

    def commutator(self, a: int, b: int) -> int:
        """a^-1 b^-1 a b."""
        t = self.table
        return t[t[t[self.inverse[a]][self.inverse[b]]][a]][b]

    def element_order(self, a: int) -> int:
        k = 1
        x = a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def order_statistics(self) -> tuple[int, ...]:
        return tuple(sorted({self.element_order(g) for g in range(self.order)}))

    def exponent(self) -> int:
        from math import lcm

        e = 1
        for d in self.order_statistics():
            e = lcm(e, d)
        return e

    def small_generating_set(self) -> list[int]:
        gens: list[int] = []
        reached = {0}
        for g in sorted(range(self.order), key=lambda x: (-self.element_order(x), x)):
            if g in reached:
                continue
            gens.append(g)
            reached = self._closure_set(gens)
            if len(reached) == self.order:
                break
        return gens

    def _closure_set(self, gens) -> set[int]:
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    # -- conjugacy structure ----------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> "ConjClassList":
        seen = [False] * self.order
        classes = []
        for g in range(self.order):
            if seen[g]:
                continue
            cls = set()
            for h in range(self.order):
                cls.add(self.conj(g, h))
            for x in cls:
                seen[x] = True
            classes.append(frozenset(cls))
        keyed = []
        for cls in classes:
            rep = min(cls)
            min_order = min(self.element_order(x) for x in cls)
            keyed.append((-len(cls), min_order, rep, cls))
        keyed.sort(key=lambda t: t[:3])
        return ConjClassList(
            self,
            [t[3] for t in keyed],
            [min(t[3]) for t in keyed],
        )

    def class_of(self, g: int) -> int:
        return self.conjugacy_classes.index_of(g)

    def centralizer(self, g: int) -> list[int]:
        return [h for h in range(self.order) if self.table[h][g] == self.table[g][h]]

    def center(self) -> list[int]:
        t = self.table
        return [
            g for g in range(self.order) if all(t[g][h] == t[h][g] for h in range(self.order))
        ]

    # -- subgroups ---------------------------------------------------------

    def subgroup_generated(self, gens) -> frozenset[int]:
        return frozenset(self._closure_set(list(gens)))

    def all_subgroups(self, limit: int = 200) -> list[frozenset[int]]:
        if self.order > limit:
            raise GroupError(f"subgroup lattice limited to order <= {limit}")
        gens_of: dict[frozenset, tuple[int, ...]] = {}

        def record(sub: frozenset, gens: tuple[int, ...]):
            if sub not in gens_of or len(gens) < len(gens_of[sub]):
                gens_of[sub] = gens

        record(frozenset({0}), ())
        for g in range(1, self.order):
            record(self.subgroup_generated([g]), (g,))
        for g, h in combinations(range(1, self.order), 2):
            record(self.subgroup_generated([g, h]), (g, h))
        # close under pairwise joins, generating joins from stored generators
        changed = True
        while changed:
            changed = False
            current = list(gens_of.items())
            for (a, ga), (b, gb) in combinations(current, 2):
                if a <= b or b <= a:
                    continue
                gens = tuple(dict.fromkeys(ga + gb))
                j = self.subgroup_generated(gens)
                if j not in gens_of:
                    record(j, gens)
                    changed = True
        return sorted(gens_of, key=lambda s: (len(s), sorted(s)))

    def is_normal(self, sub) -> bool:
        s = set(sub)
        return all(self.conj(x, g) in s for x in s for g in range(self.order))

    def quotient(self, normal_sub) -> tuple["FiniteGroup", list[int]]:
        """Quotient by a normal subgroup; returns (group, coset index per element)."""
        s = frozenset(normal_sub)
        if not self.is_normal(s):
            raise GroupError("subgroup is not normal")
        coset_of = [None] * self.order
        cosets = []
        for g in range(self.order):
            if coset_of[g] is None:
                coset = frozenset(self.table[g][x] for x in s)
                idx = len(cosets)
                cosets.append(coset)
                for y in coset:
                    coset_of[y] = idx
        # coset containing 0 must be index 0
        if coset_of[0] != 0:
            z = coset_of[0]
            remap = {z: 0, 0: z}
            cosets[0], cosets[z] = cosets[z], cosets[0]
            coset_of = [remap.get(c, c) for c in coset_of]
        reps = [min(c) for c in cosets]
        q = len(cosets)
        table = [[coset_of[self.table[reps[i]][reps[j]]] for j in range(q)] for i in range(q)]
        return FiniteGroup(table, name=f"{self.name}/N"), coset_of

    def upper_central_series(self) -> list[frozenset[int]]:
        series = [frozenset({0})]
        current = frozenset({0})
        while True:
            if len(current) == self.order:
                break
            quotient, coset_of = self.quotient(current)
            zq = set(quotient.center())
            nxt = frozenset(g for g in range(self.order) if coset_of[g] in zq)
            if nxt == current:
                break
            series.append(nxt)
            current = nxt
        return series

    # -- maps ----------------------------------------------------------------

    def power_map(self, t: int) -> tuple[list[int], bool]:
        mapping = [self.power(g, t) for g in range(self.order)]
        return mapping, len(set(mapping)) == self.order

    def automorphisms(self, gens=None, max_order: int = 128, max_gens: int = 3):
        if self.order > max_order:
            raise GroupError(f"automorphism search limited to order <= {max_order}")
        if gens is None:
            gens = self.small_generating_set()
        if len(gens) > max_gens:
            raise GroupError(f"automorphism search limited to <= {max_gens} generators")
        words = self._word_decomposition(gens)
        orders = [self.element_order(g) for g in gens]
        candidates = [
            [h for h in range(self.order) if self.element_order(h) == o] for o in orders
        ]
        result = []

        def image_map(images) -> list[int] | None:
            phi = [None] * self.order
            phi[0] = 0
            for g in range(1, self.order):
                w = words[g]
                acc = 0
                for idx in w:
                    acc = self.table[acc][images[idx]]
                phi[g] = acc
            if len(set(phi)) != self.order:
                return None
            # checking phi(g*x) = phi(g)*phi(x) on generators g suffices:
            # every left factor is a word in the generators
            t = self.table
            for gi, g in enumerate(gens):
                tg, timg = t[g], t[images[gi]]
                for b in range(self.order):
                    if phi[tg[b]] != timg[phi[b]]:
                        return None
            return phi

        def search(i, images):
            if i == len(gens):
                phi = image_map(images)
                if phi is not None:
                    result.append(phi)
                return
            for h in candidates[i]:
                search(i + 1, images + [h])

        search(0, [])
        return result

    def _word_decomposition(self, gens) -> list[list[int]]:
        """For each element, a word (list of generator indices) composing to it."""
        words: list = [None] * self.order
        words[0] = []
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for gi, g in enumerate(gens):
                    y = self.table[x][g]
                    if words[y] is None:
                        words[y] = words[x] + [gi]
                        nxt.append(y)
            frontier = nxt
        if any(w is None for w in words):
            raise GroupError("given generators do not generate the group")
        return words

    def find_isomorphism(self, other: "FiniteGroup", max_order: int = 128):
        """Brute-force isomorphism self -> other, or None."""
        if self.order != other.order:
            return None
        if self.order > max_order:
            raise GroupError(f"isomorphism search limited to order <= {max_order}")
        gens = self.small_generating_set()
        words = self._word_decomposition(gens)
        orders = [self.element_order(g) for g in gens]
        candidates = [
            [h for h in range(other.order) if other.element_order(h) == o] for o in orders
        ]

        def try_images(images):
            phi = [None] * self.order
            phi[0] = 0
            for g in range(1, self.order):
                acc = 0
                for idx in words[g]:
                    acc = other.table[acc][images[idx]]
                phi[g] = acc
            if len(set(phi)) != self.order:
                return None
            for gi, g in enumerate(gens):
                tg, timg = self.table[g], other.table[images[gi]]
                for b in range(self.order):
                    if phi[tg[b]] != timg[phi[b]]:
                        return None
            return phi

        def search(i, images):
            if i == len(gens):
                return try_images(images)
            for h in candidates[i]:
                res = search(i + 1, images + [h])
                if res is not None:
                    return res
            return None

        return search(0, [])

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "table": [list(r) for r in self.table],
            "labels": list(self.labels),
        }

    @staticmethod
    def from_json(obj: dict) -> "FiniteGroup":
        return FiniteGroup(obj["table"], labels=obj.get("labels"))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class ConjClassList:
    """Conjugacy classes sorted by (size desc, min element order asc, min rep asc)."""

    def __init__(self, group: FiniteGroup, classes, representatives):
        self.group = group
        self.classes = classes
        self.representatives = representatives
        self.sizes = [len(c) for c in classes]
        self._index = {}
        for i, cls in enumerate(classes):
            for g in cls:
                self._index[g] = i

    def __len__(self):
        return len(self.classes)

    def index_of(self, g: int) -> int:
        return self._index[g]

    def __iter__(self):
        return iter(self.classes)


def from_cayley_table(table, labels=None, name=None) -> FiniteGroup:
    return FiniteGroup(table, labels=labels, name=name)


def group_from_elements(elements, mul, name=None, labels=None) -> FiniteGroup:
    """Build an index table from abstract elements and a multiplication callable.

    The identity is detected and moved to index 0.
    """
    elems = list(elements)
    ident = None
    for e in elems:
        if all(mul(e, x) == x and mul(x, e) == x for x in elems):
            ident = e
            break
    if ident is None:
        raise GroupError("no identity element")
    elems.remove(ident)
    elems.insert(0, ident)
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    if labels is None:
        labels = [str(e) for e in elems]
    else:
        labels = [labels[e] for e in elems] if isinstance(labels, dict) else labels
    return FiniteGroup(table, labels=labels, name=name), elems
