"""Symmetric-group combinatorics for GL_d.

Permutations are tuples in one-line notation with values 1..d, composed as
functions: compose(u, v)(i) = u(v(i)).  Simple reflections s_1..s_{d-1} are
the adjacent transpositions; length is the inversion count.

A weakly decreasing rational vector mu plays the role of a cocharacter.
Its stabilizer is the parabolic subgroup generated by the reflections
fixing equal neighbours; the minimal-length coset representatives modulo
that stabilizer are the permutations increasing on each block of equal
entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _iter_permutations

from .errors import ConfigError, InternalCheckError

Perm = tuple[int, ...]
Cocharacter = tuple[Fraction, ...]


def identity(d: int) -> Perm:
    return tuple(range(1, d + 1))


def compose(u: Perm, v: Perm) -> Perm:
    """(uv)(i) = u(v(i))."""
    if len(u) != len(v):
        raise ConfigError("permutation size mismatch")
    return tuple(u[v[i] - 1] for i in range(len(u)))


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for i, x in enumerate(w):
        inv[x - 1] = i + 1
    return tuple(inv)


def length(w: Perm) -> int:
    """Number of inversions."""
    d = len(w)
    return sum(1 for i in range(d) for j in range(i + 1, d) if w[i] > w[j])


def simple_reflection(i: int, d: int) -> Perm:
    if not 1 <= i <= d - 1:
        raise ConfigError(f"reflection index {i} out of range for d={d}")
    w = list(range(1, d + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def longest_element(d: int) -> Perm:
    return tuple(range(d, 0, -1))


def from_cycle(d: int, cycle: tuple[int, ...]) -> Perm:
    """The cyclic permutation sending cycle[j] to cycle[j+1]."""
    if len(set(cycle)) != len(cycle) or any(not 1 <= x <= d for x in cycle):
        raise ConfigError(f"{cycle} is not a cycle on 1..{d}")
    w = list(range(1, d + 1))
    for j, x in enumerate(cycle):
        w[x - 1] = cycle[(j + 1) % len(cycle)]
    return tuple(w)


@lru_cache(maxsize=None)
def all_perms(d: int) -> tuple[Perm, ...]:
    """All of S_d, sorted by (length, one-line)."""
    return tuple(sorted(_iter_permutations(range(1, d + 1)), key=lambda w: (length(w), w)))


def bruhat_leq(u: Perm, w: Perm) -> bool:
    """Bruhat order via the sorted-prefix (dominance) criterion:
    u <= w iff for every i the sorted i-prefix of u is entrywise <= that of w.
    """
    if len(u) != len(w):
        raise ConfigError("permutation size mismatch")
    d = len(u)
    for i in range(1, d):
        for a, b in zip(sorted(u[:i]), sorted(w[:i])):
            if a > b:
                return False
    return True


# -- cocharacters ------------------------------------------------------------


def is_weakly_decreasing(mu) -> bool:
    return all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1))


def act(w: Perm, mu) -> tuple:
    """Permutation action: entry k of w.mu is mu[w^{-1}(k)]."""
    if len(w) != len(mu):
        raise ConfigError("cocharacter size mismatch")
    inv = inverse(w)
    return tuple(mu[inv[k] - 1] for k in range(len(mu)))


@dataclass(frozen=True)
class ParabolicType:
    """A subset of the simple reflections s_1..s_{d-1} (1-based indices)."""

    d: int
    gens: tuple[int, ...]

    @classmethod
    def from_gens(cls, d: int, gens) -> "ParabolicType":
        gens = tuple(sorted(set(int(i) for i in gens)))
        if gens and (gens[0] < 1 or gens[-1] > d - 1):
            raise ConfigError(f"reflection indices {gens} out of range for d={d}")
        return cls(d, gens)

    @classmethod
    def empty(cls, d: int) -> "ParabolicType":
        return cls(d, ())

    @classmethod
    def full(cls, d: int) -> "ParabolicType":
        return cls(d, tuple(range(1, d)))

    @property
    def is_full(self) -> bool:
        return len(self.gens) == self.d - 1

    def complement(self) -> tuple[int, ...]:
        present = set(self.gens)
        return tuple(i for i in range(1, self.d) if i not in present)

    def composition(self) -> tuple[int, ...]:
        """Block sizes of 1..d cut at the missing reflections."""
        cuts = self.complement()
        parts = []
        prev = 0
        for c in cuts:
            parts.append(c - prev)
            prev = c
        parts.append(self.d - prev)
        return tuple(parts)

    def issubset(self, other: "ParabolicType") -> bool:
        return self.d == other.d and set(self.gens) <= set(other.gens)

    def union(self, indices) -> "ParabolicType":
        return ParabolicType.from_gens(self.d, set(self.gens) | set(indices))

    def sort_key(self):
        return (len(self.gens), self.gens)


def stabilizer_type(mu) -> ParabolicType:
    """Generators of the stabilizer of a weakly decreasing vector."""
    if not is_weakly_decreasing(mu):
        raise ConfigError("cocharacter must be weakly decreasing")
    d = len(mu)
    return ParabolicType.from_gens(d, (i for i in range(1, d) if mu[i - 1] == mu[i]))


def _blocks(mu) -> tuple[tuple[int, int], ...]:
    """Maximal runs [start, stop) of equal entries (0-based positions)."""
    out = []
    start = 0
    for i in range(1, len(mu) + 1):
        if i == len(mu) or mu[i] != mu[start]:
            out.append((start, i))
            start = i
    return tuple(out)


def coset_min(w: Perm, mu) -> Perm:
    """Minimal-length element of w (mod the stabilizer of mu on the right):
    sort the values of w on each block of equal mu entries."""
    if not is_weakly_decreasing(mu):
        raise ConfigError("cocharacter must be weakly decreasing")
    out = list(w)
    for start, stop in _blocks(mu):
        out[start:stop] = sorted(out[start:stop])
    return tuple(out)


def is_kostant(w: Perm, mu) -> bool:
    return coset_min(w, mu) == w


@lru_cache(maxsize=None)
def kostant_reps(mu: Cocharacter) -> tuple[Perm, ...]:
    """Minimal-length representatives of S_d modulo the stabilizer of mu,
    sorted by (length, one-line)."""
    if not is_weakly_decreasing(mu):
        raise ConfigError("cocharacter must be weakly decreasing")
    return tuple(w for w in all_perms(len(mu)) if is_kostant(w, mu))


@lru_cache(maxsize=None)
def _double_coset_classes(i: int, mu: Cocharacter) -> tuple[tuple[Perm, ...], ...]:
    """Partition of S_d into double cosets W_{S\\{s_i}} w W_mu (BFS closure)."""
    d = len(mu)
    if not 1 <= i <= d - 1:
        raise ConfigError(f"index {i} out of range for d={d}")
    left_gens = [simple_reflection(j, d) for j in range(1, d) if j != i]
    right_gens = [simple_reflection(j, d) for j in stabilizer_type(mu).gens]
    seen: dict[Perm, int] = {}
    classes: list[list[Perm]] = []
    for w in all_perms(d):
        if w in seen:
            continue
        cls_id = len(classes)
        orbit = [w]
        seen[w] = cls_id
        frontier = [w]
        while frontier:
            nxt = []
            for u in frontier:
                for s in left_gens:
                    v = compose(s, u)
                    if v not in seen:
                        seen[v] = cls_id
                        orbit.append(v)
                        nxt.append(v)
                for s in right_gens:
                    v = compose(u, s)
                    if v not in seen:
                        seen[v] = cls_id
                        orbit.append(v)
                        nxt.append(v)
            frontier = nxt
        classes.append(orbit)
    return tuple(tuple(sorted(c, key=lambda w: (length(w), w))) for c in classes)


def double_coset_reps(i: int, mu: Cocharacter) -> tuple[Perm, ...]:
    """One minimal-length representative per double coset W_{S\\{s_i}}\\W/W_mu."""
    reps = []
    for orbit in _double_coset_classes(i, mu):
        head = orbit[0]
        if len(orbit) > 1 and length(orbit[1]) == length(head):
            raise InternalCheckError("double coset without a unique minimum")
        reps.append(head)
    return tuple(sorted(reps, key=lambda w: (length(w), w)))
