"""The formula engine: predicted cohomology tables and their consequences.

For a slope function g and a closed family contained in the positive-degree
family, the compactly supported cohomology of the open stratum is a direct
sum over the minimal coset representatives w: the generalized Steinberg
module of the parabolic attached to w, Tate-twisted by -length(w), placed
in degree 2*length(w) + #(missing reflections).  The closed complement has
a companion table with induced modules.  Both tables convert to exact
point-count predictions by taking Frobenius traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import ConfigError, InternalCheckError
from .exactalg.gf import is_prime
from .exactalg.qcount import q_multinomial
from .slopes import ClosedFamily, SlopeFunction, I_w
from .weyl import ParabolicType, Perm, bruhat_leq, from_cycle, kostant_reps, length

INDUCED = "induced"
STEINBERG_QUOTIENT = "steinberg_quotient"


@dataclass(frozen=True)
class RepLabel:
    """i^G_P (induced) or v^G_P (steinberg_quotient) for a standard parabolic."""

    kind: str
    parabolic: ParabolicType


def rep_label(kind: str, parabolic: ParabolicType) -> RepLabel:
    # v for the full set equals the trivial module; normalize to one label
    if parabolic.is_full:
        kind = INDUCED
    if kind not in (INDUCED, STEINBERG_QUOTIENT):
        raise ConfigError(f"unknown representation kind {kind!r}")
    return RepLabel(kind, parabolic)


def _require_prime(q: int):
    if not is_prime(q):
        raise ConfigError(f"base field size must be prime, got {q}")


@lru_cache(maxsize=None)
def dim_induced(parabolic: ParabolicType, q: int) -> int:
    """Number of partial flags of the parabolic's block type over GF(q)."""
    _require_prime(q)
    return q_multinomial(parabolic.composition(), q)


def _supersets(parabolic: ParabolicType):
    missing = parabolic.complement()
    for r in range(len(missing) + 1):
        for extra in combinations(missing, r):
            yield parabolic.union(extra)


@lru_cache(maxsize=None)
def dim_v(parabolic: ParabolicType, q: int) -> int:
    """Dimension of the generalized Steinberg module, by Moebius inversion
    over the supersets of the parabolic's reflection set."""
    base = set(parabolic.gens)
    total = 0
    for sup in _supersets(parabolic):
        sign = -1 if (len(sup.gens) - len(base)) % 2 else 1
        total += sign * dim_induced(sup, q)
    if total <= 0:
        raise InternalCheckError(f"nonpositive Steinberg dimension for {parabolic}")
    return total


def dim_v_span_rank(parabolic: ParabolicType, q: int) -> int:
    """Independent route: the induced dimension minus the exact rank of the
    span of all functions pulled back from proper overgroup quotients."""
    from .complexes import pullback_span_rank

    return dim_induced(parabolic, q) - pullback_span_rank(parabolic, q)


def check_dim_v(parabolic: ParabolicType, q: int) -> int:
    """Run both routes for dim v and insist they agree."""
    moebius = dim_v(parabolic, q)
    oracle = dim_v_span_rank(parabolic, q)
    if moebius != oracle:
        raise InternalCheckError(
            f"dim v mismatch for {parabolic}, q={q}: moebius {moebius} vs rank {oracle}"
        )
    return moebius


def rep_dim(rep: RepLabel, q: int) -> int:
    if rep.kind == INDUCED:
        return dim_induced(rep.parabolic, q)
    return dim_v(rep.parabolic, q)


@dataclass(frozen=True)
class CohEntry:
    w: Perm
    length: int
    i_w: ParabolicType
    delta: tuple[int, ...]
    degree: int
    twist: int
    rep: RepLabel


@dataclass(frozen=True)
class CohTable:
    variant: str  # "open" | "closed"
    g: SlopeFunction
    family: ClosedFamily
    entries: tuple[CohEntry, ...]

    def max_degree(self) -> int:
        return max((e.degree for e in self.entries), default=-1)

    def by_degree(self) -> dict[int, tuple[CohEntry, ...]]:
        out: dict[int, list[CohEntry]] = {}
        for e in self.entries:
            out.setdefault(e.degree, []).append(e)
        return {deg: tuple(es) for deg, es in sorted(out.items())}


def _require_subfamily_of_ss(family: ClosedFamily):
    if not family.within_ss:
        raise ConfigError(
            f"family ({family.describe()}) admits nonpositive degrees; "
            "the cohomology tables need a family of positive degrees"
        )


def _sorted_entries(entries) -> tuple[CohEntry, ...]:
    return tuple(sorted(entries, key=lambda e: (e.degree, e.length, e.w)))


def table_open(g: SlopeFunction, family: ClosedFamily) -> CohTable:
    """Cohomology table of the open stratum: one summand per representative."""
    _require_subfamily_of_ss(family)
    mu = g.mu
    entries = []
    for w in kostant_reps(mu):
        iw = I_w(w, mu, family)
        delta = iw.complement()
        lw = length(w)
        entries.append(
            CohEntry(
                w=w,
                length=lw,
                i_w=iw,
                delta=delta,
                degree=2 * lw + len(delta),
                twist=-lw,
                rep=rep_label(STEINBERG_QUOTIENT, iw),
            )
        )
    return CohTable("open", g, family, _sorted_entries(entries))


def table_closed(g: SlopeFunction, family: ClosedFamily) -> CohTable:
    """Cohomology table of the closed union of unstable strata."""
    _require_subfamily_of_ss(family)
    mu = g.mu
    d = g.d
    entries = []
    for w in kostant_reps(mu):
        iw = I_w(w, mu, family)
        delta = iw.complement()
        missing = len(delta)
        lw = length(w)
        if missing == 0:
            continue
        if missing == 1:
            entries.append(
                CohEntry(w, lw, iw, delta, 2 * lw, -lw, rep_label(INDUCED, iw))
            )
        else:
            entries.append(
                CohEntry(
                    w, lw, iw, delta, 2 * lw, -lw,
                    rep_label(INDUCED, ParabolicType.full(d)),
                )
            )
            entries.append(
                CohEntry(
                    w, lw, iw, delta,
                    2 * lw + missing - 1, -lw,
                    rep_label(STEINBERG_QUOTIENT, iw),
                )
            )
    return CohTable("closed", g, family, _sorted_entries(entries))


def trace_prediction(table: CohTable, q: int, n: int) -> int:
    """Lefschetz evaluation over GF(q^n): a summand in degree D with twist m
    contributes (-1)^D * dim * q^(-m*n)."""
    _require_prime(q)
    total = 0
    for e in table.entries:
        sign = -1 if e.degree % 2 else 1
        total += sign * rep_dim(e.rep, q) * q ** (n * (-e.twist))
    return total


@dataclass(frozen=True)
class VanishingReport:
    ok: bool
    expected_degree: int
    failures: tuple[str, ...]


def vanishing_check(table: CohTable) -> VanishingReport:
    """Check the low-degree vanishing: nothing below degree d-1, and degree
    d-1 exactly one untwisted full-Steinberg summand."""
    if table.variant != "open" or table.family != ClosedFamily.semistable():
        raise ConfigError("the vanishing statement applies to the open table at ss")
    d = table.g.d
    failures = []
    below = [e for e in table.entries if e.degree < d - 1]
    if below:
        failures.append(f"{len(below)} entries below degree {d - 1}")
    at = [e for e in table.entries if e.degree == d - 1]
    expected = rep_label(STEINBERG_QUOTIENT, ParabolicType.empty(d))
    if len(at) != 1 or at[0].rep != expected or at[0].twist != 0:
        failures.append(f"degree {d - 1} is {at}, expected one untwisted {expected}")
    return VanishingReport(ok=not failures, expected_degree=d - 1, failures=tuple(failures))


def euler_characteristic(table: CohTable) -> tuple[tuple[int, RepLabel, int], ...]:
    """Alternating sum of the table as a formal multiset (sign, rep, twist)."""
    terms = [
        ((-1 if e.degree % 2 else 1), e.rep, e.twist) for e in table.entries
    ]
    return tuple(sorted(terms, key=lambda t: (t[2], t[1].parabolic.sort_key(), t[1].kind, t[0])))


def euler_evaluate(terms, q: int) -> int:
    """Dimension evaluation of a formal Euler characteristic at q."""
    return sum(sign * rep_dim(rep, q) for sign, rep, _twist in terms)


def predicted_counts(g: SlopeFunction, family: ClosedFamily, q: int, n: int) -> tuple[int, int, int]:
    """(open, closed, total) point-count predictions over GF(q^n)."""
    open_trace = trace_prediction(table_open(g, family), q, n)
    closed_trace = trace_prediction(table_closed(g, family), q, n)
    total = sum(q ** (n * length(w)) for w in kostant_reps(g.mu))
    return open_trace, closed_trace, total


def omega_set(g: SlopeFunction, family: ClosedFamily, parabolic: ParabolicType) -> tuple[Perm, ...]:
    """Representatives whose attached parabolic set sits inside the given one."""
    mu = g.mu
    return tuple(
        w for w in kostant_reps(mu) if I_w(w, mu, family).issubset(parabolic)
    )


def degree_reversal_pair(mu) -> tuple[int, int]:
    """The rank-5 demonstration that a Bruhat-smaller element can land in a
    strictly larger cohomological degree.

    Needs mu strictly decreasing of size 5 with zero sum and fourth entry
    positive; returns the two induced degrees (8, 7).
    """
    mu = tuple(Fraction(x) for x in mu)
    if len(mu) != 5:
        raise ConfigError("the degree-reversal demonstration needs d = 5")
    if any(mu[i] <= mu[i + 1] for i in range(4)):
        raise ConfigError("mu must be strictly decreasing")
    if sum(mu, Fraction(0)) != 0:
        raise ConfigError("mu must sum to zero")
    if mu[3] <= 0:
        raise ConfigError("the fourth entry of mu must be positive")
    family = ClosedFamily.semistable()
    w_small = from_cycle(5, (2, 3, 4))
    w_big = from_cycle(5, (2, 3, 4, 5))
    if not bruhat_leq(w_small, w_big) or w_small == w_big:
        raise InternalCheckError("expected a strict Bruhat comparison")
    deg_small = 2 * length(w_small) + len(delta_of(w_small, mu, family))
    deg_big = 2 * length(w_big) + len(delta_of(w_big, mu, family))
    if (deg_small, deg_big) != (8, 7):
        raise InternalCheckError(
            f"degree-reversal degrees came out as {(deg_small, deg_big)}"
        )
    return deg_small, deg_big


def delta_of(w: Perm, mu, family: ClosedFamily) -> tuple[int, ...]:
    return I_w(w, mu, family).complement()


# -- serialization -------------------------------------------------------------


def rep_json(rep: RepLabel) -> dict:
    return {"kind": rep.kind, "parabolic": list(rep.parabolic.gens)}


def rep_str(rep: RepLabel, twist: int = 0) -> str:
    letter = "i" if rep.kind == INDUCED else "v"
    p = rep.parabolic
    if p.is_full:
        sub = "G"
    elif not p.gens:
        sub = "B"
    else:
        sub = "P{" + ",".join(f"s{i}" for i in p.gens) + "}"
    out = f"{letter}_{sub}"
    if twist:
        out += f"({twist})"
    return out


def table_json(table: CohTable, q: int, n_values=()) -> dict:
    entries = []
    for e in table.entries:
        entries.append(
            {
                "w": list(e.w),
                "length": e.length,
                "I_w": list(e.i_w.gens),
                "Delta_w": list(e.delta),
                "degree": e.degree,
                "twist": e.twist,
                "rep": rep_json(e.rep),
                "dim_at_q": rep_dim(e.rep, q),
            }
        )
    return {
        "variant": table.variant,
        "d": table.g.d,
        "q": q,
        "g": table.g.as_config(),
        "family": table.family.as_json(),
        "entries": entries,
        "traces": {str(n): trace_prediction(table, q, n) for n in n_values},
    }


def table_markdown(table: CohTable, q: int) -> str:
    """Degree-by-degree table with direct sums in the cells."""
    lines = ["| degree | cohomology | dim at q=%d |" % q, "| --- | --- | --- |"]
    grouped = table.by_degree()
    top = table.max_degree()
    for degree in range(0, top + 1):
        entries = grouped.get(degree, ())
        if entries:
            cell = " ⊕ ".join(rep_str(e.rep, e.twist) for e in entries)
            dim = " + ".join(str(rep_dim(e.rep, q)) for e in entries)
        else:
            cell, dim = "0", "0"
        lines.append(f"| {degree} | {cell} | {dim} |")
    return "\n".join(lines) + "\n"
