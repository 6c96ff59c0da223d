"""Seeded instance suites for the peeling colorers.

The option rotations are chosen so that a suite of a few dozen instances
reaches every case of the corresponding colorer; tests assert that.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .errors import InfeasibleOptions
from .gadgets import GadgetInstance
from .peelgen import PeelOptions, gen_peel_instance

K8_ROTATION: tuple[PeelOptions, ...] = (
    PeelOptions(),
    PeelOptions(shapes=("K4.K4",)),
    PeelOptions(shapes=("C7+K3",)),
    PeelOptions(shapes=("K4+K1", "K3+K1")),
    PeelOptions(template="7b"),
    PeelOptions(template="7a"),
    PeelOptions(shapes=("C5.K3", "K4.C5")),
    PeelOptions(shapes=("diamond", "K3.K4")),
    PeelOptions(equal_lists=False),
    PeelOptions(shapes=("K4.K2", "P4")),
)

THREECONN_ROTATION: tuple[PeelOptions, ...] = (
    PeelOptions(kappa=3),
    PeelOptions(kappa=3, shapes=("K1",)),
    PeelOptions(kappa=3, shapes=("K4",)),
    PeelOptions(kappa=3, shapes=("K2", "C5")),
    PeelOptions(kappa=3, shapes=("K3.K3",)),
    PeelOptions(kappa=3, equal_lists=False),
    PeelOptions(kappa=3, shapes=("C5.K2", "P3")),
)


@dataclass(frozen=True)
class SuiteItem:
    index: int
    seed: int
    options: PeelOptions
    instance: GadgetInstance


def peel_suite(mode: str, count: int, seed: int = 0, spacing: int = 3) -> Iterator[SuiteItem]:
    """``count`` instances for ``peel_color_k8`` (``"k8"``) or ``peel_color_3connected``.

    Instance ``i`` uses rotation entry ``i mod len(rotation)`` and generator
    seed ``seed * 100003 + i``.  Infeasible draws are skipped, not retried.
    """
    rotation, k = (K8_ROTATION, 8) if mode == "k8" else (THREECONN_ROTATION, 7)
    for i in range(count):
        opts = rotation[i % len(rotation)]
        s = seed * 100_003 + i
        try:
            inst = gen_peel_instance(s, k, spacing, opts)
        except InfeasibleOptions:
            continue
        yield SuiteItem(i, s, opts, inst)
