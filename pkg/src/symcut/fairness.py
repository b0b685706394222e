"""Ledger-free verifiers for the fairness notions and query bounds.

Every value here is computed with :func:`oracle_direct_measure`, so checking
a division never perturbs its query count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

from .errors import CapabilityError, DomainError
from .protocols.common import Division, ProtocolRun
from .protocols.kuhn import aristo_prop_bound, sym_prop_bound
from .valuation import Subcake, Valuation, format_rational, oracle_direct_measure

MAX_SYMMETRY_PLAYERS = 7


@dataclass
class Verdict:
    prop: str
    passed: bool
    witness: dict | None = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"property": self.prop, "pass": self.passed, "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _check_shape(d: Division, vs: Sequence[Valuation]) -> None:
    if len(d.pieces) != len(vs):
        raise DomainError(f"division has {len(d.pieces)} pieces for {len(vs)} players")


def value_table(d: Division, vs: Sequence[Valuation]) -> list[list[Fraction]]:
    """``table[i][j] = μ_i(X_j)``."""
    _check_shape(d, vs)
    return [[oracle_direct_measure(v, p) for p in d.pieces] for v in vs]


def _cake(d: Division) -> Subcake:
    return Subcake().union(*d.pieces)


def check_proportional(d: Division, vs: Sequence[Valuation]) -> Verdict:
    _check_shape(d, vs)
    n = len(vs)
    cake = _cake(d)
    for i, (v, p) in enumerate(zip(vs, d.pieces)):
        got, share = oracle_direct_measure(v, p), oracle_direct_measure(v, cake) / n
        if got < share:
            return Verdict("proportional", False, {"player": d.names[i], "value": got, "share": share})
    return Verdict("proportional", True)


def check_envy_free(d: Division, vs: Sequence[Valuation]) -> Verdict:
    t = value_table(d, vs)
    for i in range(len(vs)):
        for j in range(len(vs)):
            if i != j and t[i][j] > t[i][i]:
                return Verdict("envy-free", False, {"pair": (d.names[i], d.names[j]), "own": t[i][i], "other": t[i][j]})
    return Verdict("envy-free", True)


def check_equitable(d: Division, vs: Sequence[Valuation]) -> Verdict:
    _check_shape(d, vs)
    vals = [oracle_direct_measure(v, p) for v, p in zip(vs, d.pieces)]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] != vals[j]:
                return Verdict("equitable", False, {"pair": (d.names[i], d.names[j]), "values": (vals[i], vals[j])})
    return Verdict("equitable", True)


def check_aristotelian(d: Division, vs: Sequence[Valuation]) -> Verdict:
    """Players whose measures are equal (as canonical densities) get equal values."""
    _check_shape(d, vs)
    vals = [oracle_direct_measure(v, p) for v, p in zip(vs, d.pieces)]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            if vs[i] == vs[j] and vals[i] != vals[j]:
                return Verdict("aristotelian", False, {"pair": (d.names[i], d.names[j]), "values": (vals[i], vals[j])})
    return Verdict("aristotelian", True)


def permutation_values(
    protocol: Callable[[Sequence[Valuation]], Division], vs: Sequence[Valuation]
) -> list[tuple[tuple[int, ...], list[Fraction]]]:
    """Each player's value under every input order, credited back to the player."""
    n = len(vs)
    rows = []
    for sigma in permutations(range(n)):
        d = protocol([vs[s] for s in sigma])
        vals = [Fraction(0)] * n
        for k, s in enumerate(sigma):
            vals[s] = oracle_direct_measure(vs[s], d.pieces[k])
        rows.append((sigma, vals))
    return rows


def check_symmetric(
    protocol: Callable[[Sequence[Valuation]], Division],
    vs: Sequence[Valuation],
    max_players: int = MAX_SYMMETRY_PLAYERS,
) -> Verdict:
    if len(vs) > max_players:
        raise CapabilityError(f"symmetry sweep needs {factorial(len(vs))} runs; cap is {max_players} players")
    rows = permutation_values(protocol, vs)
    base_sigma, base = rows[0]
    for sigma, vals in rows[1:]:
        for i, (a, b) in enumerate(zip(base, vals)):
            if a != b:
                return Verdict("symmetric", False, {"player": vs[i].name or f"p{i + 1}", "orders": (base_sigma, sigma), "values": (a, b)})
    return Verdict("symmetric", True)


QUERY_BOUNDS = {"aristoprop": aristo_prop_bound, "symprop": sym_prop_bound}


def check_query_bound(run: ProtocolRun | Division, bound_kind: str | None = None) -> Verdict:
    d = run.division if isinstance(run, ProtocolRun) else run
    kind = bound_kind or d.algorithm
    if kind not in QUERY_BOUNDS:
        raise DomainError(f"no query bound known for {kind!r}")
    n = d.n
    used = d.ledger.total if d.stored_counts is None else sum(d.stored_counts)
    bound = QUERY_BOUNDS[kind](n)
    witness = {"queries": used, "bound": bound, "n": n}
    return Verdict("query-bound", used <= bound, witness)


CHECKS = {
    "proportional": check_proportional,
    "envy-free": check_envy_free,
    "equitable": check_equitable,
    "aristotelian": check_aristotelian,
}


@dataclass
class FairnessReport:
    values: list[list[Fraction]]
    verdicts: list[Verdict] = field(default_factory=list)
    ledger: dict | None = None

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "values": _jsonable(self.values),
            "verdicts": [v.to_json() for v in self.verdicts],
            "ledger": self.ledger,
        }


def fairness_report(d: Division, vs: Sequence[Valuation], props: Sequence[str]) -> FairnessReport:
    unknown = [p for p in props if p not in CHECKS and p != "query-bound"]
    if unknown:
        raise DomainError(f"unknown properties: {', '.join(unknown)}")
    report = FairnessReport(value_table(d, vs))
    for p in props:
        report.verdicts.append(check_query_bound(d) if p == "query-bound" else CHECKS[p](d, vs))
    if d.stored_counts is not None:
        report.ledger = {"eval": d.stored_counts[0], "cut": d.stored_counts[1]}
    else:
        report.ledger = d.ledger.to_json()
    return report
