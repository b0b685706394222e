"""Instance files, the seeded generator, and the worked instances from the literature."""
from __future__ import annotations

import json
import random
from fractions import Fraction as F
from pathlib import Path
from typing import Sequence

from .errors import DomainError, SchemaError
from .valuation import Valuation

# -- I/O ----------------------------------------------------------------------


def instance_to_json(vs: Sequence[Valuation]) -> dict:
    return {"players": [v.to_json() for v in vs]}


def instance_from_json(obj) -> list[Valuation]:
    if not isinstance(obj, dict) or not isinstance(obj.get("players"), list):
        raise SchemaError("instance must be an object with a 'players' list")
    vs = [Valuation.from_json(p) for p in obj["players"]]
    if not vs:
        raise SchemaError("instance has no players")
    vs = [v if v.name else v.renamed(f"p{i + 1}") for i, v in enumerate(vs)]
    names = [v.name for v in vs]
    if len(set(names)) != len(names):
        raise SchemaError(f"player names are not unique: {names}")
    return vs


def load_instance(path) -> list[Valuation]:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_json(obj)


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


# -- generator ----------------------------------------------------------------


def random_valuation(rng: random.Random, k: int, denom: int = 24, max_weight: int = 9, name: str = "") -> Valuation:
    """``k`` density steps on a grid of step ``1/denom``, normalised to mass 1."""
    if not 1 <= k <= denom:
        raise DomainError(f"need 1 <= k <= {denom}, got {k}")
    cuts = sorted(rng.sample(range(1, denom), k - 1))
    bounds = [F(0)] + [F(c, denom) for c in cuts] + [F(1)]
    weights = [rng.randint(0, max_weight) for _ in range(k)]
    if not any(weights):
        weights[rng.randrange(k)] = 1
    mass = sum(w * (b - a) for w, a, b in zip(weights, bounds, bounds[1:]))
    return Valuation(tuple((a, b, w / mass) for w, a, b in zip(weights, bounds, bounds[1:])), name=name)


def generate(n: int, k: int, seed: int, duplicates: int = 0, denom: int = 24) -> list[Valuation]:
    """Deterministic random instance; ``duplicates >= 2`` plants that many equal copies."""
    if n < 1:
        raise DomainError("need at least one player")
    if duplicates > n:
        raise DomainError(f"cannot plant {duplicates} copies among {n} players")
    rng = random.Random(seed)
    copies = duplicates if duplicates >= 2 else 1
    distinct: list[Valuation] = []
    for _ in range(n - copies + 1):
        for _attempt in range(1000):
            v = random_valuation(rng, k, denom)
            if v not in distinct:
                break
        else:
            raise DomainError(f"cannot draw {n - copies + 1} distinct valuations with k={k}")
        distinct.append(v)
    vs = distinct + [distinct[0]] * (copies - 1)
    rng.shuffle(vs)
    return [v.renamed(f"p{i + 1}") for i, v in enumerate(vs)]


# -- worked instances ---------------------------------------------------------


def lebesgue(name: str = "") -> Valuation:
    return Valuation.lebesgue(name)


def even_paz_counterexample() -> list[Valuation]:
    """Four players, ``μ1 = μ4`` Lebesgue; everybody halves the cake at 1/2.

    ``μ3`` puts mass 1/4 on ``[1/2, 51/100]``; ``μ2`` is any measure with
    half its mass on ``[0, 1/2]`` that differs from Lebesgue.
    """
    mu2 = Valuation.from_masses([(0, F(1, 4), F(1, 8)), (F(1, 4), F(1, 2), F(3, 8)), (F(1, 2), 1, F(1, 2))], "p2")
    mu3 = Valuation.from_masses([(0, F(1, 2), F(1, 2)), (F(1, 2), F(51, 100), F(1, 4)), (F(51, 100), 1, F(1, 4))], "p3")
    return [lebesgue("p1"), mu2, mu3, lebesgue("p4")]


def last_diminisher_counterexample() -> list[Valuation]:
    """``μ1 = μ2`` Lebesgue; ``μ3([0, 2/5]) = μ3([1/3, 1/2]) = 1/3``."""
    mu3 = Valuation.from_masses(
        [(0, F(1, 3), F(1, 6)), (F(1, 3), F(2, 5), F(1, 6)), (F(2, 5), F(1, 2), F(1, 6)), (F(1, 2), 1, F(1, 2))], "p3"
    )
    return [lebesgue("p1"), lebesgue("p2"), mu3]


def all_lebesgue(n: int) -> list[Valuation]:
    return [lebesgue(f"p{i + 1}") for i in range(n)]


def concentrated_instance(n: int) -> list[Valuation]:
    """``n`` Lebesgue players and ``n + 1`` players uniform on ``[2n/(2n+1), 1]``."""
    c = Valuation.uniform(F(2 * n, 2 * n + 1), 1)
    return all_lebesgue(n) + [c.renamed(f"p{n + i + 1}") for i in range(n + 1)]
