"""q-analog counting: exact integer q-binomials and q-multinomials.

q_binomial(d, k, q) counts k-dimensional subspaces of GF(q)^d;
q_multinomial(parts, q) counts partial flags with block sizes `parts`.
Everything is plain integer arithmetic, exact for any integer q >= 2.
"""

from __future__ import annotations

from functools import lru_cache


def q_int(m: int, q: int) -> int:
    """[m]_q = 1 + q + ... + q^(m-1)."""
    return sum(q**i for i in range(m))


def q_factorial(m: int, q: int) -> int:
    out = 1
    for i in range(1, m + 1):
        out *= q_int(i, q)
    return out


@lru_cache(maxsize=None)
def q_binomial(d: int, k: int, q: int) -> int:
    if k < 0 or k > d:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (k - i) - 1
    assert num % den == 0
    return num // den


def q_multinomial(parts: tuple[int, ...], q: int) -> int:
    """Number of flags of subspaces with successive quotient dims `parts`."""
    out = 1
    total = 0
    for part in parts:
        total += part
        out *= q_binomial(total, part, q)
    return out
