"""Division protocols and a name-based registry for the CLI and sweeps."""
from __future__ import annotations

from typing import Callable, Sequence

from ..errors import CapabilityError
from ..valuation import Valuation
from .baselines import cut_and_choose, even_paz, last_diminisher, selfridge_conway, whole_cake
from .common import Division, Mediator, ProtocolRun, RoundState
from .kuhn import aristo_prop, group_by_evaluation_vector, kuhn, sym_prop
from .wrapper import symmetric_envy_free


def _exactly(n: int, fn):
    def run(vs: Sequence[Valuation]) -> Division:
        if len(vs) != n:
            raise CapabilityError(f"{fn.__name__} needs exactly {n} players, got {len(vs)}")
        return fn(*vs)

    return run


PROTOCOLS: dict[str, Callable[[Sequence[Valuation]], Division]] = {
    "cut-and-choose": _exactly(2, cut_and_choose),
    "last-diminisher": last_diminisher,
    "even-paz": even_paz,
    "selfridge-conway": _exactly(3, selfridge_conway),
    "kuhn": kuhn,
    "aristoprop": aristo_prop,
    "symprop": sym_prop,
    "sym-envy-free": symmetric_envy_free,
}


def run_protocol(name: str, vs: Sequence[Valuation]) -> Division:
    try:
        fn = PROTOCOLS[name]
    except KeyError:
        raise CapabilityError(f"unknown algorithm {name!r}; choose from {', '.join(PROTOCOLS)}") from None
    return fn(vs)


__all__ = [
    "PROTOCOLS", "run_protocol", "Division", "Mediator", "ProtocolRun", "RoundState",
    "cut_and_choose", "last_diminisher", "even_paz", "selfridge_conway", "whole_cake",
    "kuhn", "aristo_prop", "sym_prop", "symmetric_envy_free", "group_by_evaluation_vector",
]
