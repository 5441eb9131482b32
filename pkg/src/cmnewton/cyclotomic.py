"""Galois data for cyclotomic fields.

``Gal(Q(zeta_n)/Q)`` is modelled as ``(Z/n)^*`` with the residue ``r`` acting
as ``zeta_n -> zeta_n^r``.  Decomposition and inertia groups of a rational
prime are read off from the CRT splitting ``(Z/n)^* = (Z/p^a)^* x (Z/m)^*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np
from sympy import isprime, totient
from sympy.ntheory import n_order
from sympy.ntheory.modular import crt

from .errors import ConductorOutOfRange, NotCoprime, NotPrime, UnknownElement
from .groups import FiniteGroup, Subgroup, subgroup_generated

MAX_CONDUCTOR = 100_000
MAX_UNIT_ORDER = 10_000


@dataclass(frozen=True, eq=False)
class UnitGroupModN:
    n: int
    group: FiniteGroup
    residues: tuple[int, ...]

    def residue(self, elem: int) -> int:
        return self.residues[elem]

    def element(self, residue: int) -> int:
        r = int(residue) % self.n
        idx = self._index.get(r)
        if idx is None:
            raise UnknownElement(f"{residue} is not a unit mod {self.n}")
        return idx

    def subgroup(self, residues) -> Subgroup:
        """Subgroup generated by the given residues."""
        return subgroup_generated(self.group, [self.element(r) for r in residues])

    def residues_of(self, sub: Subgroup) -> list[int]:
        return sorted(self.residues[a] for a in sub.members)

    @property
    def conjugation(self) -> int:
        return self.element(self.n - 1)

    @property
    def _index(self):
        return self.__dict__.setdefault("_idx", {r: i for i, r in enumerate(self.residues)})


def unit_group(n: int) -> UnitGroupModN:
    """``(Z/n)^*`` as a :class:`FiniteGroup`; identifiers are residues sorted
    ascending (so identifier 0 is the residue 1)."""
    if not 3 <= n <= MAX_CONDUCTOR or totient(n) > MAX_UNIT_ORDER:
        raise ConductorOutOfRange(f"conductor {n} outside 3..{MAX_CONDUCTOR} or phi(n) > {MAX_UNIT_ORDER}")
    residues = np.array([r for r in range(1, n) if gcd(r, n) == 1], dtype=np.int64)
    lookup = np.full(n, -1, dtype=np.int64)
    lookup[residues] = np.arange(len(residues))
    table = lookup[np.outer(residues, residues) % n]
    labels = [str(r) for r in residues.tolist()]
    group = FiniteGroup(table, labels=labels, name=f"(Z/{n})^*")
    return UnitGroupModN(n, group, tuple(residues.tolist()))


def frobenius_order(p: int, m: int) -> int:
    """Multiplicative order of ``p`` modulo ``m``."""
    if gcd(p, m) != 1:
        raise NotCoprime(f"gcd({p}, {m}) != 1")
    if m == 1:
        return 1
    return int(n_order(p, m))


def split_conductor(n: int, p: int) -> tuple[int, int]:
    """Write ``n = p^a * m`` with ``p`` not dividing ``m``; return ``(p^a, m)``."""
    pa = 1
    while n % p == 0:
        n //= p
        pa *= p
    return pa, n


def decomposition_and_inertia(U: UnitGroupModN, p: int) -> tuple[Subgroup, Subgroup]:
    """Decomposition group ``D`` and inertia group ``I`` of ``p`` in ``Q(zeta_n)``.

    The group is abelian, so these do not depend on the prime above ``p``.
    """
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    n = U.n
    pa, m = split_conductor(n, p)
    # inertia: units that are 1 mod m, i.e. the (Z/p^a)^* factor
    inertia = [r for r in U.residues if r % m == 1 % m]
    I = U.subgroup(inertia)
    if m == 1:
        frob = 1
    else:
        frob = int(crt([pa, m], [1, p % m])[0]) if pa > 1 else p % n
    D = subgroup_generated(U.group, list(I.members) + [U.element(frob)])
    return D, I
