"""Finite groups as dense Cayley tables, with subgroup and double coset tools.

Elements are integer identifiers ``0 .. order-1`` with 0 the identity.
Permutation groups number their elements breadth first from the generators,
in the order the generators were given, so identifiers are reproducible.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NonBijectiveGenerator,
    NotASubgroup,
    OrderCapExceeded,
    SubgroupParentMismatch,
    UnknownElement,
    WordSyntaxError,
)

ORDER_CAP = 10_000
# exhaustive associativity check up to this order, sampled above
ASSOCIATIVITY_EXHAUSTIVE = 1_000
_COLLECTED_WORD_BUDGET = 20_000


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the identifier of ``a*b``.  Permutation groups also
    remember their generators, so elements can be named by words such as
    ``"xy^3"`` (see :meth:`parse`).
    """

    def __init__(self, table, inverse=None, labels=None, generator_names=(),
                 generator_ids=(), perms=None, name=""):
        table = np.array(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise ValueError("multiplication table must be square and non-empty")
        if n > ORDER_CAP:
            raise OrderCapExceeded(f"group order {n} exceeds cap {ORDER_CAP}")
        if not np.array_equal(table[0], np.arange(n)) or not np.array_equal(table[:, 0], np.arange(n)):
            raise ValueError("element 0 must be a two-sided identity")
        if inverse is None:
            rows, cols = np.nonzero(table == 0)
            if len(rows) != n:
                raise ValueError("every row of the table must contain the identity exactly once")
            inverse = np.empty(n, dtype=np.int32)
            inverse[rows] = cols
        inverse = np.array(inverse, dtype=np.int32)
        table.setflags(write=False)
        inverse.setflags(write=False)
        self.table = table
        self.inverse = inverse
        self.order = n
        self.generator_names = tuple(generator_names)
        self.generator_ids = tuple(int(g) for g in generator_ids)
        self.perms = perms
        self.name = name
        self._labels = tuple(labels) if labels is not None else None
        self._label_index = None

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroup{name} of order {self.order}>"

    def __len__(self):
        return self.order

    @property
    def elements(self):
        return range(self.order)

    def check(self, a) -> int:
        if isinstance(a, (bool, np.bool_)) or not isinstance(a, (int, np.integer)):
            raise UnknownElement(f"{a!r} is not an element identifier")
        if not 0 <= a < self.order:
            raise UnknownElement(f"element {a} not in group of order {self.order}")
        return int(a)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def prod(self, elems: Iterable[int]) -> int:
        out = 0
        for e in elems:
            out = int(self.table[out, e])
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, a])
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = int(self.table[x, a])
            k += 1
        return k

    def conj(self, a: int, g: int) -> int:
        """``g a g^-1``."""
        return int(self.table[self.table[g, a], self.inverse[g]])

    # -- naming -----------------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            self._labels = tuple(str(i) for i in range(self.order))
        return self._labels

    def label(self, a: int) -> str:
        return self.labels[a]

    def parse(self, word) -> int:
        """Resolve an element given as an identifier, a label or a word.

        Words concatenate generator names with optional integer exponents,
        e.g. ``"xy^3"``, ``"y^-1 x"`` or ``"a*b^2"``; ``"1"`` and ``"e"`` denote
        the identity unless they are generator names.
        """
        if isinstance(word, (int, np.integer)) and not isinstance(word, bool):
            return self.check(word)
        if not isinstance(word, str):
            raise UnknownElement(f"cannot interpret {word!r} as a group element")
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        text = word.strip()
        if text in self._label_index:
            return self._label_index[text]
        if not self.generator_names:
            raise UnknownElement(f"unknown element {word!r}")
        if text in ("1", "e", "") and text not in self.generator_names:
            return 0
        return self._eval_word(text)

    def _eval_word(self, text: str) -> int:
        names = sorted(self.generator_names, key=len, reverse=True)
        gen_of = dict(zip(self.generator_names, self.generator_ids))
        pos, out = 0, 0
        while pos < len(text):
            ch = text[pos]
            if ch in " *.·":
                pos += 1
                continue
            for nm in names:
                if text.startswith(nm, pos):
                    break
            else:
                raise WordSyntaxError(f"cannot parse {text!r} at position {pos}")
            pos += len(nm)
            m = re.match(r"\^\s*(-?\d+)", text[pos:])
            exp = 1
            if m:
                exp = int(m.group(1))
                pos += m.end()
            out = self.mul(out, self.power(gen_of[nm], exp))
        return out


def _format_word(names: Sequence[str], exps: Sequence[tuple[int, int]]) -> str:
    if not exps:
        return "1"
    sep = "*" if any(len(n) > 1 for n in names) else ""
    parts = []
    for k, e in exps:
        parts.append(names[k] if e == 1 else f"{names[k]}^{e}")
    return sep.join(parts)


def _runs(word: Sequence[int]) -> list[tuple[int, int]]:
    return [(k, len(list(grp))) for k, grp in itertools.groupby(word)]


def group_from_generators(degree: int, generators, names: Sequence[str] | None = None,
                          labels: bool = True, name: str = "") -> FiniteGroup:
    """Permutation group on ``{0..degree-1}`` generated by ``generators``.

    A permutation is a sequence ``p`` with ``p[i]`` the image of ``i``; the
    product ``a*b`` is the composite "first ``b``, then ``a``".  With
    ``labels`` each element is named by a word in the generator names,
    preferring collected words ``x^i y^j ...`` in generator order and falling
    back to a shortest word.
    """
    if degree < 1:
        raise ValueError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise NonBijectiveGenerator(f"{list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    if names is None:
        names = [chr(ord("a") + i) for i in range(len(gens))] if len(gens) <= 26 else \
            [f"g{i}" for i in range(len(gens))]
    names = list(names)
    if len(names) != len(gens):
        raise ValueError("one name per generator required")

    identity = tuple(range(degree))
    perms = [identity]
    index = {identity: 0}
    parent = [-1]
    via = [-1]
    right = [[0] * 0 for _ in gens]
    head = 0
    while head < len(perms):
        w = perms[head]
        for k, g in enumerate(gens):
            prod = tuple(w[g[i]] for i in range(degree))
            j = index.get(prod)
            if j is None:
                j = len(perms)
                if j >= ORDER_CAP:
                    raise OrderCapExceeded(f"generated group exceeds order cap {ORDER_CAP}")
                index[prod] = j
                perms.append(prod)
                parent.append(head)
                via.append(k)
            right[k].append(j)
        head += 1

    n = len(perms)
    rmul = np.array(right, dtype=np.int32).reshape(len(gens), n)
    table = np.empty((n, n), dtype=np.int32)
    table[:, 0] = np.arange(n)
    for s in range(1, n):
        table[:, s] = rmul[via[s]][table[:, parent[s]]]

    gen_ids = [index[g] for g in gens]
    group = FiniteGroup(table, generator_names=names, generator_ids=gen_ids,
                        perms=np.array(perms, dtype=np.int32), name=name)
    if labels:
        group._labels = tuple(_word_labels(group, parent, via, names))
    return group


def _word_labels(group: FiniteGroup, parent, via, names) -> list[str]:
    n = group.order
    words: list[str | None] = [None] * n
    orders = [group.element_order(g) for g in group.generator_ids]
    if orders and np.prod(orders, dtype=np.float64) <= _COLLECTED_WORD_BUDGET:
        tuples = sorted(itertools.product(*(range(o) for o in orders)), key=lambda t: (sum(t), t))
        for exps in tuples:
            elem = 0
            for gid, e in zip(group.generator_ids, exps):
                elem = group.mul(elem, group.power(gid, e))
            if words[elem] is None:
                words[elem] = _format_word(names, [(k, e) for k, e in enumerate(exps) if e])
    for s in range(n):
        if words[s] is None:
            seq = []
            t = s
            while t > 0:
                seq.append(via[t])
                t = parent[t]
            words[s] = _format_word(names, _runs(seq[::-1]))
    return words


def group_from_table(table, labels=None, name="") -> FiniteGroup:
    """Build a group from an explicit table, checking the group axioms."""
    group = FiniteGroup(table, labels=labels, name=name)
    t = group.table
    if not all(sorted(row) == list(range(group.order)) for row in t.tolist()):
        raise ValueError("table rows must be permutations (Latin square)")
    if not is_associative(group):
        raise ValueError("table is not associative")
    return group


def is_associative(group: FiniteGroup, samples: int = 20_000, seed: int = 0) -> bool:
    t = group.table
    n = group.order
    if n <= ASSOCIATIVITY_EXHAUSTIVE:
        for a in range(n):
            # (a*b)*c == a*(b*c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                return False
        return True
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, samples))
    return bool(np.all(t[t[a, b], c] == t[a, t[b, c]]))


# -- small catalogue ------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    g = list(range(1, n)) + [0]
    return group_from_generators(n, [g] if n > 1 else [], names=["r"] if n > 1 else [],
                                 name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon (order 2n); ``y`` rotates, ``x`` reflects."""
    y = [(i + 1) % n for i in range(n)]
    x = [(-i) % n for i in range(n)]
    return group_from_generators(n, [x, y], names=["x", "y"], name=f"D{2 * n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = []
    if n > 1:
        gens.append([1, 0] + list(range(2, n)))
    if n > 2:
        gens.append(list(range(1, n)) + [0])
    return group_from_generators(n, gens, names=["s", "t"][:len(gens)], name=f"S{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Element ``(i, j)`` has identifier ``i*|b| + j``."""
    na, nb = a.order, b.order
    ta = np.repeat(np.repeat(a.table, nb, axis=0), nb, axis=1)
    tb = np.tile(b.table, (na, na))
    table = ta * nb + tb
    labels = [f"({la},{lb})" for la in a.labels for lb in b.labels]
    name = f"{a.name}x{b.name}" if a.name and b.name else ""
    return FiniteGroup(table, labels=labels, name=name)


# -- subgroups --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    _set: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.members))

    def __contains__(self, a) -> bool:
        return a in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64)

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def labels(self) -> list[str]:
        return [self.parent.label(a) for a in self.members]


def _closure(group: FiniteGroup, seeds: Sequence[int]) -> tuple[int, ...]:
    seeds = sorted(set(seeds) - {0})
    found = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in seeds:
                b = int(group.table[a, s])
                if b not in found:
                    found.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(found))


def subgroup_generated(group: FiniteGroup, seeds: Iterable) -> Subgroup:
    """Smallest subgroup containing ``seeds`` (identifiers or words)."""
    ids = [group.parse(s) for s in seeds]
    return Subgroup(group, _closure(group, ids))


def make_subgroup(group: FiniteGroup, members: Iterable) -> Subgroup:
    """Wrap an explicit member set, checking that it is a subgroup."""
    ids = sorted({group.parse(m) for m in members})
    if _closure(group, ids) != tuple(sorted(set(ids) | {0})) or 0 not in ids:
        raise NotASubgroup(f"{ids} is not a subgroup")
    return Subgroup(group, tuple(ids))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (0,))


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def _same_parent(*subs: Subgroup):
    parent = subs[0].parent
    for s in subs[1:]:
        if s.parent is not parent:
            raise SubgroupParentMismatch("subgroups belong to different groups")
    return parent


def intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    _same_parent(a, b)
    return Subgroup(a.parent, tuple(sorted(a._set & b._set)))


def conjugate(sub: Subgroup, g: int) -> Subgroup:
    """``g S g^-1``."""
    G = sub.parent
    return Subgroup(G, tuple(sorted(G.conj(a, g) for a in sub.members)))


def is_normal(sub: Subgroup, ambient: Subgroup | None = None) -> bool:
    G = sub.parent
    conjugators = ambient.members if ambient is not None else G.generator_ids or G.elements
    return all(conjugate(sub, g) == sub for g in conjugators)


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    G = _same_parent(a, b)
    return Subgroup(G, _closure(G, a.members + b.members))


def is_central(group: FiniteGroup, a) -> bool:
    a = group.parse(a)
    t = group.table
    return bool(np.array_equal(t[a, :], t[:, a]))


def center(group: FiniteGroup) -> Subgroup:
    t = group.table
    return Subgroup(group, tuple(a for a in group.elements if np.array_equal(t[a, :], t[:, a])))


def cyclic_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Distinct cyclic subgroups, ordered by (order, members)."""
    seen = {}
    for a in group.elements:
        sub = _closure(group, [a])
        seen.setdefault(sub, None)
    return [Subgroup(group, m) for m in sorted(seen, key=lambda m: (len(m), m))]


def left_cosets(sub: Subgroup) -> list[tuple[int, ...]]:
    """Cosets ``gS`` as sorted tuples, ordered by their minimal element."""
    G = sub.parent
    t = G.table
    arr = sub.array
    done = np.zeros(G.order, dtype=bool)
    out = []
    for g in G.elements:
        if done[g]:
            continue
        coset = np.unique(t[g, arr])
        done[coset] = True
        out.append(tuple(int(x) for x in coset))
    return out


# -- double cosets ------------------------------------------------------------

@dataclass(frozen=True)
class DoubleCoset:
    representative: int
    members: tuple[int, ...]
    left: Subgroup
    right: Subgroup

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in set(self.members)

    @property
    def size(self) -> int:
        return len(self.members)


def double_cosets(group: FiniteGroup, D: Subgroup, H: Subgroup) -> list[DoubleCoset]:
    """Partition ``group`` into double cosets ``D g H``.

    Each coset is represented by its smallest identifier and the list is
    sorted by representative.
    """
    if D.parent is not group or H.parent is not group:
        raise SubgroupParentMismatch("D and H must be subgroups of the given group")
    t = group.table
    d, h = D.array, H.array
    done = np.zeros(group.order, dtype=bool)
    out = []
    for g in range(group.order):
        if done[g]:
            continue
        gh = t[g, h]
        members = np.unique(t[np.ix_(d, gh)])
        done[members] = True
        out.append(DoubleCoset(g, tuple(int(x) for x in members), D, H))
    return out


def double_cosets_naive(group: FiniteGroup, D: Subgroup, H: Subgroup) -> list[DoubleCoset]:
    """Reference implementation: form every ``D g H`` element by element."""
    if D.parent is not group or H.parent is not group:
        raise SubgroupParentMismatch("D and H must be subgroups of the given group")
    cosets = set()
    for g in range(group.order):
        cosets.add(frozenset(group.mul(group.mul(d, g), h) for d in D.members for h in H.members))
    ordered = sorted(cosets, key=min)
    return [DoubleCoset(min(c), tuple(sorted(c)), D, H) for c in ordered]


def random_subgroup(group: FiniteGroup, rng: random.Random, max_seeds: int = 2) -> Subgroup:
    k = rng.randint(0, max_seeds)
    return Subgroup(group, _closure(group, [rng.randrange(group.order) for _ in range(k)]))
